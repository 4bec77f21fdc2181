import pytest
from hypothesis import given, settings, strategies as st

from gdmux import (InvalidParams, NonInvertible, NoSuchRoot, NotAUnit, SystemParams,
                   centered, find_root_of_unity, gaussian_ring, get_field,
                   mult_order, sqrt_of_minus_one)
from gdmux.fields import poly_is_irreducible, smallest_irreducible

from support import SMALL_SYSTEMS


def test_prime_field_mul():
    f = get_field(5, 1)
    assert (f.scalar(4) * f.scalar(3)).to_int() == 2


def test_zero_divisor_in_gi5():
    ring = gaussian_ring(get_field(5, 1))
    z = ring.element(1, 2)
    assert (z * z.conj()).is_zero
    with pytest.raises(NonInvertible):
        z.inverse()
    assert not ring.is_field


def test_gf27_reduction():
    # x * x^2 = x^3 = -2x - 1 = x + 2 under x^3 + 2x + 1
    f = get_field(3, 3, (1, 2, 0, 1))
    x = f.element((0, 1, 0))
    assert (x * x * x).coeffs == (2, 1, 0)


def test_default_poly_is_lexicographically_smallest():
    assert smallest_irreducible(3, 3) == (1, 2, 0, 1)
    assert smallest_irreducible(5, 1) == (0, 1)
    assert smallest_irreducible(7, 2) == (1, 0, 1)   # x^2 + 1, -1 non-residue mod 7
    assert not poly_is_irreducible((1, 0, 0, 1), 3)  # x^3 + 1 = (x + 1)^3


def test_division_and_inverse():
    f = get_field(7, 2)
    for i in range(1, f.order):
        x = f.from_int(i)
        assert x * x.inverse() == f.one
    with pytest.raises(NonInvertible):
        f.zero.inverse()


def test_conj():
    ring = gaussian_ring(get_field(5, 1))
    z = ring.element(3, 4)
    assert str(z.conj()) == "3+1j"
    assert z.conj().conj() == z
    assert ring.element(2).conj() == ring.element(2)
    assert ring.j.conj() == -ring.j


def test_conj_is_multiplicative():
    ring = gaussian_ring(get_field(7, 2))
    f = ring.field
    import random
    rnd = random.Random(0)
    for _ in range(50):
        z = ring.element(f.from_int(rnd.randrange(f.order)), f.from_int(rnd.randrange(f.order)))
        w = ring.element(f.from_int(rnd.randrange(f.order)), f.from_int(rnd.randrange(f.order)))
        assert (z * w).conj() == z.conj() * w.conj()


def test_frobenius_gi3_conjugates():
    ring = gaussian_ring(get_field(3, 1))
    for a in range(3):
        for b in range(3):
            z = ring.element(a, b)
            assert z.frobenius() == z.conj()   # a^3 = a, j^3 = -j over GI(3)


def test_frobenius_fixes_prime_field_components():
    ring = gaussian_ring(get_field(13, 1))
    for a, b in [(0, 0), (1, 5), (12, 7)]:
        z = ring.element(a, b)
        assert z.frobenius() == z   # p = 1 (mod 4): j^p = j and Fermat fixes a, b


def test_frobenius_order_divides_2m():
    params = SystemParams.create(3, 3, 26)
    ring = params.ring
    f = params.field
    import random
    rnd = random.Random(1)
    for _ in range(20):
        z = ring.element(f.from_int(rnd.randrange(27)), f.from_int(rnd.randrange(27)))
        w = z
        for _ in range(6):
            w = w.frobenius()
        assert w == z


def test_frobenius_equals_pth_power():
    for p, m in [(3, 3), (5, 2), (7, 2), (13, 1)]:
        ring = gaussian_ring(get_field(p, m))
        f = ring.field
        import random
        rnd = random.Random(p * m)
        for _ in range(25):
            z = ring.element(f.from_int(rnd.randrange(f.order)),
                             f.from_int(rnd.randrange(f.order)))
            assert z.frobenius() == z ** p


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 3), (5, 2), (7, 2), (13, 1)]), st.data())
def test_frobenius_is_ring_homomorphism(pm, data):
    p, m = pm
    ring = gaussian_ring(get_field(p, m))
    f = ring.field
    pick = st.integers(0, f.order - 1)
    z = ring.element(f.from_int(data.draw(pick)), f.from_int(data.draw(pick)))
    w = ring.element(f.from_int(data.draw(pick)), f.from_int(data.draw(pick)))
    assert (z * w).frobenius() == z.frobenius() * w.frobenius()
    assert (z + w).frobenius() == z.frobenius() + w.frobenius()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(5, 1), (13, 1), (3, 3), (7, 2)]), st.data())
def test_field_axioms_on_random_triples(pm, data):
    p, m = pm
    f = get_field(p, m)
    pick = st.integers(0, f.order - 1)
    a, b, c = (f.from_int(data.draw(pick)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == f.zero
    if not a.is_zero:
        assert a * a.inverse() == f.one


def test_fermat_full_enumeration():
    # x^(q-1) = 1 for every unit, all contexts with q <= 1000
    contexts = [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1),
                (3, 2), (5, 2), (7, 2), (3, 3), (5, 3), (3, 4), (3, 5), (3, 6)]
    for p, m in contexts:
        f = get_field(p, m)
        assert f.order <= 1000
        for i in range(1, f.order):
            assert f.from_int(i) ** (f.order - 1) == f.one


def test_mult_order_examples():
    f5 = get_field(5, 1)
    assert mult_order(f5.scalar(2)) == 4
    assert mult_order(f5.one) == 1
    assert mult_order(f5.scalar(3)) == 4
    with pytest.raises(NotAUnit):
        mult_order(f5.zero)
    ring = gaussian_ring(f5)
    with pytest.raises(NotAUnit):
        mult_order(ring.element(1, 2))   # zero divisor
    assert mult_order(ring.j) == 4


def test_mult_order_divides_group_order():
    f = get_field(3, 3)
    for i in range(1, f.order):
        assert (f.order - 1) % mult_order(f.from_int(i)) == 0


def test_find_root_of_unity():
    assert find_root_of_unity(5, 1, 4).to_int() == 2
    assert find_root_of_unity(3, 1, 2).to_int() == 2
    with pytest.raises(NoSuchRoot):
        find_root_of_unity(5, 1, 3)
    # deterministic across calls
    a = find_root_of_unity(3, 3, 26)
    b = find_root_of_unity(3, 3, 26)
    assert a == b and mult_order(a) == 26


def test_sqrt_of_minus_one():
    assert sqrt_of_minus_one(5, 1).to_int() == 2
    assert sqrt_of_minus_one(3, 1) is None
    assert sqrt_of_minus_one(13, 1).to_int() == 5
    s = sqrt_of_minus_one(3, 2)    # 9 = 1 (mod 4): exists in GF(9)
    assert s is not None and (s * s) == -get_field(3, 2).one


def test_centered():
    assert [centered(v, 5) for v in range(5)] == [0, 1, 2, -2, -1]
    assert centered(6, 5) == 1


def test_canonical_text():
    ring = gaussian_ring(get_field(5, 1))
    assert str(ring.element(3, 4)) == "3+4j"
    assert str(ring.element(0, 3)) == "3j"
    assert str(ring.element(2, 0)) == "2"
    ring27 = gaussian_ring(get_field(3, 3))
    z = ring27.from_coeffs((1, 0, 2), (0, 1, 1))
    assert str(z) == "1,0,2+0,1,1j"


def test_params_validation():
    with pytest.raises(InvalidParams):
        SystemParams.create(5, 1, 5)          # 5 does not divide 4
    with pytest.raises(InvalidParams):
        SystemParams.create(4, 1, 3)          # 4 not prime
    with pytest.raises(InvalidParams):
        SystemParams.create(2, 3, 7)          # characteristic 2 out of scope
    with pytest.raises(InvalidParams):
        SystemParams.create(5, 1, 4, zeta=4)  # order(4) = 2, not 4
    with pytest.raises(InvalidParams):
        SystemParams.create(3, 3, 26, poly=(1, 0, 0, 1))  # reducible
    p = SystemParams.create(5, 1, 4, zeta=3)  # 3 also has order 4
    assert p.zeta == (3,)


@pytest.mark.parametrize("p,m,N", SMALL_SYSTEMS)
def test_params_create_small(p, m, N):
    params = SystemParams.create(p, m, N)
    assert mult_order(params.zeta_elem) == N
    assert (params.q - 1) % N == 0
