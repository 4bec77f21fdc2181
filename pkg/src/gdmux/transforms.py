"""Finite-field Hartley and Fourier transforms, forward and inverse.

Forward maps take N symbols of GF(p) to a spectrum in GI(p^m)^N:

    Fourier:  V_k = sum_i v_i zeta^(ik)
    Hartley:  V_k = sum_i v_i cas_k(i)

Inverses carry the 1/N normalization forced by exact round-tripping; the
Hartley kernel is self-inverse up to that factor (sum_k cas(ik) cas(kj)
= N delta_ij), so mux and demux share one kernel.

Spectra of ground-field signals are redundant. With F the coefficient
Frobenius a -> a^p:

    Fourier:  V_(pk mod N)  = frobenius(V_k)      (= a^p + j^p b^p)
    Hartley:  V_(-pk mod N) = a^p - j b^p          (conj_frobenius)

The Hartley map equals plain frobenius exactly when p = 3 (mod 4); for
p = 1 (mod 4) the extra conjugation is required (e.g. over GI(5) the
spectrum (2, 3+4j, 3, 3+j) has V_3 = conj(V_1), not V_1^5 = V_1). These
identities hold for every valid (p, m, N) and are what coset compression
relies on.

Two implementations are provided and tested against each other: scalar
element arithmetic (ffht_forward and friends) and batch kernels that
realize each transform as one integer matrix over GF(p) acting on
coefficient vectors (forward_batch / inverse_batch), plus a
decimation-based fast path for smooth N (fast_transform).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import NotGroundField
from .fields import ExtField, FieldElement, GaloisInt, SystemParams
from .trig import _cas_by_product


class Kind(str, Enum):
    FOURIER = "fourier"
    HARTLEY = "hartley"

    def __str__(self):
        return self.value


def as_kind(kind) -> Kind:
    return Kind(kind.value if isinstance(kind, Kind) else str(kind).lower())


@dataclass(frozen=True)
class TimeBlock:
    """One frame of user symbols, entries in [0, p)."""

    params: SystemParams
    symbols: tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) != self.params.N:
            raise ValueError(f"expected {self.params.N} symbols, got {len(self.symbols)}")
        if any(not 0 <= s < self.params.p for s in self.symbols):
            raise ValueError(f"symbols must lie in [0, {self.params.p})")


@dataclass(frozen=True)
class SpectrumBlock:
    params: SystemParams
    kind: Kind
    values: tuple[GaloisInt, ...]

    def __post_init__(self):
        if len(self.values) != self.params.N:
            raise ValueError(f"expected {self.params.N} values, got {len(self.values)}")


# ---------------------------------------------------------------------------
# coefficient-array kernels
# ---------------------------------------------------------------------------
# Layout: a spectrum batch is an int64 array (F, N, 2, m); axis 2 is re/im,
# axis 3 the GF(p) coefficients. Flattened per-block length is 2*m*N.

def _mul_matrix(a: FieldElement) -> np.ndarray:
    """(m, m) matrix of multiplication by a on coefficient vectors."""
    field = a.field
    m = field.m
    cols = []
    for t in range(m):
        unit = tuple(1 if s == t else 0 for s in range(m))
        cols.append(field.mul_coeffs(a.coeffs, unit))
    return np.array(cols, dtype=np.int64).T


def _gi_mul_matrix(z: GaloisInt) -> np.ndarray:
    """(2m, 2m) matrix of multiplication by z on stacked (re, im) coefficients."""
    a = _mul_matrix(z.re)
    b = _mul_matrix(z.im)
    p = z.field.p
    return np.block([[a, (-b) % p], [b % p, a]]) % p


@lru_cache(maxsize=None)
def frobenius_matrix(field: ExtField) -> np.ndarray:
    """(m, m) matrix of a -> a^p on coefficient vectors (GF(p)-linear)."""
    m = field.m
    cols = []
    for t in range(m):
        unit = field.element(tuple(1 if s == t else 0 for s in range(m)))
        cols.append((unit ** field.p).coeffs)
    return np.array(cols, dtype=np.int64).T


@lru_cache(maxsize=None)
def fold_tensor(field: ExtField) -> np.ndarray:
    """(m, m, m) tensor T with (x^u * x^v) = sum_s T[u, v, s] x^s after reduction."""
    m = field.m
    T = np.zeros((m, m, m), dtype=np.int64)
    for u in range(m):
        eu = tuple(1 if s == u else 0 for s in range(m))
        for v in range(m):
            ev = tuple(1 if s == v else 0 for s in range(m))
            T[u, v] = field.mul_coeffs(eu, ev)
    return T


def gi_mul_batch(x: np.ndarray, y: np.ndarray, field: ExtField) -> np.ndarray:
    """Elementwise GI product of coefficient arrays shaped (..., 2, m)."""
    T = fold_tensor(field)
    p = field.p

    def fold(a, b):
        return np.einsum("...u,...v,uvs->...s", a, b, T) % p

    xr, xi = x[..., 0, :], x[..., 1, :]
    yr, yi = y[..., 0, :], y[..., 1, :]
    re = (fold(xr, yr) - fold(xi, yi)) % p
    im = (fold(xr, yi) + fold(xi, yr)) % p
    return np.stack([re, im], axis=-2)


def _gi_coeff_array(values: Sequence[GaloisInt], m: int) -> np.ndarray:
    out = np.empty((len(values), 2, m), dtype=np.int64)
    for n, z in enumerate(values):
        out[n, 0] = z.re.coeffs
        out[n, 1] = z.im.coeffs
    return out


@lru_cache(maxsize=None)
def _kernel(params: SystemParams, kind: Kind, inverse: bool) -> tuple[GaloisInt, ...]:
    """Transform kernel by argument t = i*k mod N."""
    if kind is Kind.HARTLEY:
        return _cas_by_product(params)  # self-dual
    field = params.field
    z = params.zeta_elem if not inverse else params.zeta_elem.inverse()
    pows = [field.one]
    for _ in range(params.N - 1):
        pows.append(pows[-1] * z)
    return tuple(GaloisInt(w, field.zero) for w in pows)


@lru_cache(maxsize=None)
def _forward_flat(params: SystemParams, kind: Kind) -> np.ndarray:
    """(2mN, N) integer matrix: spectrum coefficients = M @ symbols (mod p)."""
    N, m = params.N, params.m
    ker = _kernel(params, kind, inverse=False)
    K = np.empty((N, N, 2, m), dtype=np.int64)
    for k in range(N):
        for i in range(N):
            z = ker[(i * k) % N]
            K[k, i, 0] = z.re.coeffs
            K[k, i, 1] = z.im.coeffs
    return K.transpose(0, 2, 3, 1).reshape(N * 2 * m, N)


@lru_cache(maxsize=None)
def _inverse_flat(params: SystemParams, kind: Kind) -> np.ndarray:
    """(2mN, 2mN) integer matrix of the inverse transform (with the 1/N factor)."""
    N, m = params.N, params.m
    field = params.field
    inv_n = field.scalar(N).inverse()
    ker = _kernel(params, kind, inverse=True)
    big = np.zeros((N * 2 * m, N * 2 * m), dtype=np.int64)
    blocks = {}
    for t in range(N):
        blocks[t] = _gi_mul_matrix(ker[t] * inv_n)
    w = 2 * m
    for i in range(N):
        for k in range(N):
            big[i * w:(i + 1) * w, k * w:(k + 1) * w] = blocks[(i * k) % N]
    return big


def forward_batch(params: SystemParams, kind, vs: np.ndarray) -> np.ndarray:
    """Transform a batch of symbol rows (F, N) to spectra (F, N, 2, m)."""
    kind = as_kind(kind)
    vs = np.atleast_2d(np.asarray(vs, dtype=np.int64)) % params.p
    M = _forward_flat(params, kind)
    flat = (vs @ M.T) % params.p
    F = vs.shape[0]
    return flat.reshape(F, params.N, 2, params.m)


def inverse_batch(params: SystemParams, kind, spectra: np.ndarray) -> np.ndarray:
    """Invert spectra (F, N, 2, m) back to symbol rows (F, N).

    Raises NotGroundField when any recovered value has a nonzero imaginary
    part or nonzero high-degree coefficients.
    """
    kind = as_kind(kind)
    N, m, p = params.N, params.m, params.p
    spectra = np.asarray(spectra, dtype=np.int64)
    single = spectra.ndim == 3
    if single:
        spectra = spectra[None]
    F = spectra.shape[0]
    M = _inverse_flat(params, kind)
    out = (spectra.reshape(F, N * 2 * m) @ M.T) % p
    out = out.reshape(F, N, 2, m)
    residue = np.zeros((F, N), dtype=bool)
    residue |= (out[:, :, 1, :] != 0).any(axis=2)
    if m > 1:
        residue |= (out[:, :, 0, 1:] != 0).any(axis=2)
    if residue.any():
        f, i = np.argwhere(residue)[0]
        raise NotGroundField(
            f"recovered value at frame {f}, position {i} is not in GF({p})")
    vs = out[:, :, 0, 0]
    return vs[0] if single else vs


def _spectrum_from_array(params: SystemParams, kind: Kind, arr: np.ndarray) -> SpectrumBlock:
    ring = params.ring
    vals = tuple(ring.from_coeffs(arr[k, 0], arr[k, 1]) for k in range(params.N))
    return SpectrumBlock(params, kind, vals)


def spectrum_to_array(spec: SpectrumBlock) -> np.ndarray:
    return _gi_coeff_array(spec.values, spec.params.m)


# ---------------------------------------------------------------------------
# the four transform operations
# ---------------------------------------------------------------------------

def ffht_forward(block: TimeBlock) -> SpectrumBlock:
    """V_k = sum_i v_i cas_k(i)."""
    arr = forward_batch(block.params, Kind.HARTLEY, np.array([block.symbols]))[0]
    return _spectrum_from_array(block.params, Kind.HARTLEY, arr)


def ffht_inverse(spec: SpectrumBlock) -> TimeBlock:
    """v_i = (1/N) sum_k V_k cas_i(k); exact inverse of ffht_forward."""
    vs = inverse_batch(spec.params, Kind.HARTLEY, spectrum_to_array(spec)[None])[0]
    return TimeBlock(spec.params, tuple(int(v) for v in vs))


def ffft_forward(block: TimeBlock) -> SpectrumBlock:
    """V_k = sum_i v_i zeta^(ik)."""
    arr = forward_batch(block.params, Kind.FOURIER, np.array([block.symbols]))[0]
    return _spectrum_from_array(block.params, Kind.FOURIER, arr)


def ffft_inverse(spec: SpectrumBlock) -> TimeBlock:
    """v_i = (1/N) sum_k V_k zeta^(-ik)."""
    vs = inverse_batch(spec.params, Kind.FOURIER, spectrum_to_array(spec)[None])[0]
    return TimeBlock(spec.params, tuple(int(v) for v in vs))


def transform_forward(block: TimeBlock, kind) -> SpectrumBlock:
    return ffht_forward(block) if as_kind(kind) is Kind.HARTLEY else ffft_forward(block)


def transform_inverse(spec: SpectrumBlock) -> TimeBlock:
    return ffht_inverse(spec) if spec.kind is Kind.HARTLEY else ffft_inverse(spec)


# ---------------------------------------------------------------------------
# conjugacy structure
# ---------------------------------------------------------------------------

def sigma_index(params: SystemParams, kind, k: int) -> int:
    """Index map whose orbits are the cyclotomic cosets: pk or -pk mod N."""
    step = params.p if as_kind(kind) is Kind.FOURIER else -params.p
    return (step * k) % params.N


def sigma_value(z: GaloisInt, kind) -> GaloisInt:
    """Value map paired with sigma_index on spectra of ground-field blocks."""
    return z.frobenius() if as_kind(kind) is Kind.FOURIER else z.conj_frobenius()


@lru_cache(maxsize=None)
def sigma_matrix(params: SystemParams, kind: Kind) -> np.ndarray:
    """(2m, 2m) matrix form of sigma_value on stacked (re, im) coefficients."""
    Fm = frobenius_matrix(params.field)
    m, p = params.m, params.p
    zero = np.zeros((m, m), dtype=np.int64)
    if as_kind(kind) is Kind.FOURIER and p % 4 == 1:
        lower = Fm
    else:
        lower = (-Fm) % p
    return np.block([[Fm, zero], [zero, lower]]) % p


# ---------------------------------------------------------------------------
# fast path for smooth N
# ---------------------------------------------------------------------------

def _smallest_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _ntt_direct(vals: list[FieldElement], pows: list[FieldElement]) -> list[FieldElement]:
    N = len(vals)
    out = []
    for k in range(N):
        acc = vals[0]
        for i in range(1, N):
            acc = acc + vals[i] * pows[(i * k) % N]
        out.append(acc)
    return out


def _ntt_fast(vals: list[FieldElement], zeta: FieldElement) -> list[FieldElement]:
    """Recursive decimation over the factorization of N; O(N^2) at prime lengths."""
    N = len(vals)
    if N == 1:
        return list(vals)
    pows = [zeta.field.one]
    for _ in range(N - 1):
        pows.append(pows[-1] * zeta)
    r = _smallest_factor(N)
    if r == N:
        return _ntt_direct(vals, pows)
    s = N // r
    subs = [_ntt_fast(vals[l::r], zeta ** r) for l in range(r)]
    out = []
    for k in range(N):
        acc = subs[0][k % s]
        for l in range(1, r):
            acc = acc + pows[(l * k) % N] * subs[l][k % s]
        out.append(acc)
    return out


def fast_transform(block: TimeBlock, kind=Kind.HARTLEY) -> SpectrumBlock:
    """Same output as the direct transforms, via Cooley-Tukey decimation.

    The Hartley spectrum is recombined from the Fourier one:
    H_k = (F_k + F_(-k))/2 + j (F_(-k) - F_k)/2.
    """
    kind = as_kind(kind)
    params = block.params
    field = params.field
    N = params.N
    vals = [field.scalar(v) for v in block.symbols]
    F = _ntt_fast(vals, params.zeta_elem)
    if kind is Kind.FOURIER:
        values = tuple(GaloisInt(f, field.zero) for f in F)
    else:
        inv2 = field.scalar(2).inverse()
        values = []
        for k in range(N):
            rev = F[(N - k) % N]
            values.append(GaloisInt((F[k] + rev) * inv2, (rev - F[k]) * inv2))
        values = tuple(values)
    return SpectrumBlock(params, kind, values)
