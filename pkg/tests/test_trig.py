import numpy as np
import pytest

from gdmux import (NoRationalization, SystemParams, carrier, carrier_matrix, cas,
                   ff_cos, ff_sin, inner_product, rationalize_walsh)

from support import SMALL_SYSTEMS, make

CAS_GI5 = [
    ["1", "1", "1", "1"],
    ["1", "3j", "4", "2j"],
    ["1", "4", "1", "4"],
    ["1", "2j", "4", "3j"],
]


@pytest.fixture(scope="module")
def p514():
    return SystemParams.create(5, 1, 4)


def test_cas_table_golden(p514):
    got = [[str(cas(i, k, p514)) for k in range(4)] for i in range(4)]
    assert got == CAS_GI5


def test_cas_from_first_principles(p514):
    # independent recomputation from integer powers of zeta (m = 1)
    p, N, z = 5, 4, 2
    inv2 = pow(2, p - 2, p)
    for i in range(N):
        for k in range(N):
            t = (i * k) % N
            fwd, rev = pow(z, t, p), pow(z, (N - t) % N, p)
            re = (fwd + rev) * inv2 % p
            im = (rev - fwd) * inv2 % p
            got = cas(i, k, p514)
            assert got.re.to_int() == re and got.im.to_int() == im


def test_cas_is_cos_plus_sin(p514):
    for i in range(4):
        for k in range(4):
            assert ff_cos(i, k, p514) + ff_sin(i, k, p514) == cas(i, k, p514)
            assert ff_cos(i, k, p514).im.is_zero
            assert ff_sin(i, k, p514).re.is_zero


def test_identity_row_and_first_sample(p514):
    row0 = carrier(0, p514)
    assert all(z == p514.ring.one for z in row0.samples)
    for i in range(4):
        assert carrier(i, p514).samples[0] == p514.ring.one


@pytest.mark.parametrize("p,m,N", SMALL_SYSTEMS)
def test_symmetry(p, m, N):
    params = make(p, m, N)
    for i in range(N):
        for k in range(N):
            assert cas(i, k, params) == cas(k, i, params)


@pytest.mark.parametrize("p,m,N", SMALL_SYSTEMS)
def test_row_orthogonality_and_energy(p, m, N):
    params = make(p, m, N)
    matrix = carrier_matrix(params)
    energy = params.ring.element(N % p)
    for i in range(N):
        for k in range(N):
            ip = inner_product(matrix.rows[i].samples, matrix.rows[k].samples)
            assert ip == (energy if i == k else params.ring.zero)


@pytest.mark.parametrize("p,m,N", [(5, 1, 4), (3, 3, 26), (3, 2, 8)])
def test_column_orthogonality(p, m, N):
    params = make(p, m, N)
    matrix = carrier_matrix(params)
    cols = [[matrix.entry(i, k) for i in range(N)] for k in range(N)]
    energy = params.ring.element(N % p)
    for a in range(N):
        for b in range(N):
            ip = inner_product(cols[a], cols[b])
            assert ip == (energy if a == b else params.ring.zero)


def test_walsh_degeneration(p514):
    walsh = rationalize_walsh(carrier_matrix(p514))
    assert walsh == [[1, 1, 1, 1],
                     [1, 1, -1, -1],
                     [1, -1, 1, -1],
                     [1, -1, -1, 1]]
    # row-permuted Sylvester Hadamard matrix
    h4 = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
    got = np.array(walsh)
    assert sorted(map(tuple, got)) == sorted(map(tuple, h4))
    assert np.array_equal(got @ got.T, 4 * np.eye(4))


def test_no_rationalization_p3():
    with pytest.raises(NoRationalization):
        rationalize_walsh(carrier_matrix(SystemParams.create(3, 1, 2)))


def test_inner_product_examples(p514):
    c1 = carrier(1, p514).samples
    c2 = carrier(2, p514).samples
    assert inner_product(c1, c2).is_zero
    zeros = (p514.ring.zero,) * 4
    assert inner_product(zeros, c1).is_zero
    with pytest.raises(ValueError):
        inner_product(c1, c2[:3])


def test_conjugated_form_pairs_reciprocal_rows(p514):
    # regression pin: under sum x_k conj(y_k) rows i and N-i pair up with
    # value N, which is why orthogonality tests use the bilinear form
    c1 = carrier(1, p514).samples
    c3 = carrier(3, p514).samples
    assert inner_product(c1, c3, conjugate=True) == p514.ring.element(4)
    assert inner_product(c1, c1, conjugate=True).is_zero
    assert inner_product(c1, c3).is_zero
