"""Exact and sign-additive Fourier transforms.

Four transforms share one interface:

* ``dft_exact``  - direct O(N^2) reference DFT (the oracle everything else
  is checked against).
* ``fft_exact``  - radix-2 decimation-in-time FFT, power-of-two sizes.
* ``ndft``       - nonlinear DFT: the DFT matrix applied with the complex
  sign-additive product instead of multiplication for every matrix element,
  the unity entries included.  Costs exactly N^2 complex applications.
* ``nfft``       - nonlinear FFT: the radix-2 decimation-in-time flow graph
  with every twiddle multiplication (W^0 and W^(N/2) included) replaced by
  the sign-additive product.  Branch-combining additions stay ordinary
  complex additions.  The recursion bottoms out at 2-point blocks computed
  as the full 2-point nonlinear DFT, which makes ``nfft == ndft`` exactly
  at N = 2.

Cost model for the nonlinear FFT: the bottom stage applies the complete
2x2 matrix (4 applications per pair, 2N total), every later stage applies
one twiddle per output line (N per stage), so the total is

    2N + N*(log2(N) - 1)  ==  N*(log2(N) + 1)

complex applications: Theta(N log N) with constant 1 + 1/log2(N).

Twiddle factors are precomputed from the closed form with quadrant-exact
values at multiples of a quarter turn.  This matters: the sign-additive
product is discontinuous at zero, so a twiddle like exp(-j*pi) carrying a
1e-16 imaginary residue would contribute an O(1) spurious term instead of
the exact zero the matrix calls for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .operator import (
    ContractError,
    DomainError,
    OpCounter,
    OpCountReport,
    _mf_complex_raw,
)

__all__ = [
    "ComplexSignal",
    "TransformKind",
    "Spectrum",
    "TwiddleTable",
    "twiddle_table",
    "unit_tone",
    "dft_exact",
    "fft_exact",
    "ndft",
    "nfft",
    "peak_index",
    "ndft_complex_ops",
    "nfft_complex_ops",
    "nfft_butterflies",
    "fft_complex_muls",
    "dft_complex_muls",
]


@dataclass(frozen=True)
class ComplexSignal:
    """A finite sequence of complex samples with its sample rate."""

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 1 or s.size < 1:
            raise ContractError("ComplexSignal: need a 1-d sequence of length >= 1")
        if not np.all(np.isfinite(s.real)) or not np.all(np.isfinite(s.imag)):
            raise DomainError("ComplexSignal: samples must be finite")
        if not (self.sample_rate_hz > 0):
            raise ContractError("ComplexSignal: sample_rate_hz must be positive")
        object.__setattr__(self, "samples", s)

    def __len__(self) -> int:
        return self.samples.size


class TransformKind(str, Enum):
    DFT_EXACT = "dft"
    FFT_EXACT = "fft"
    NDFT = "ndft"
    NFFT = "nfft"


@dataclass(frozen=True)
class Spectrum:
    """Transform output: one complex bin per input sample."""

    bins: np.ndarray
    transform_kind: TransformKind
    op_counts: OpCountReport = field(default_factory=OpCountReport)

    def magnitude(self) -> np.ndarray:
        return np.abs(self.bins)


class TwiddleTable:
    """Precomputed roots of unity ``exp(-2j*pi*m/N)`` for m = 0..N-1.

    Entries at quarter-turn multiples are exact (1, -1j, -1, 1j); the rest
    come from cos/sin of the reduced angle.
    """

    _QUADRANT = (
        complex(1.0, 0.0),
        complex(0.0, -1.0),
        complex(-1.0, 0.0),
        complex(0.0, 1.0),
    )

    def __init__(self, n: int):
        if n < 1:
            raise ContractError("TwiddleTable: size must be >= 1")
        m = np.arange(n)
        ang = (-2.0 * np.pi) * m / n
        entries = np.cos(ang) + 1j * np.sin(ang)
        quad, rem = np.divmod(4 * m, n)
        exact = rem == 0
        entries[exact] = np.asarray(self._QUADRANT)[quad[exact] % 4]
        self.n = n
        self.entries = entries
        self.entries.setflags(write=False)


_TABLE_CACHE: dict[int, TwiddleTable] = {}


def twiddle_table(n: int) -> TwiddleTable:
    tbl = _TABLE_CACHE.get(n)
    if tbl is None:
        tbl = TwiddleTable(n)
        if len(_TABLE_CACHE) > 32:
            _TABLE_CACHE.clear()
        _TABLE_CACHE[n] = tbl
    return tbl


def unit_tone(k0: int, n: int) -> np.ndarray:
    """``exp(+2j*pi*k0*m/n)`` sampled on the same exact grid as the twiddles."""
    tbl = twiddle_table(n)
    return np.conj(tbl.entries[(k0 * np.arange(n)) % n])


def _as_samples(x) -> np.ndarray:
    if isinstance(x, ComplexSignal):
        return x.samples
    s = np.asarray(x, dtype=complex)
    if s.ndim != 1 or s.size < 1:
        raise ContractError("transform input must be a 1-d sequence of length >= 1")
    if not np.all(np.isfinite(s.real)) or not np.all(np.isfinite(s.imag)):
        raise DomainError("transform input must be finite")
    return s


def _require_pow2(n: int, what: str) -> int:
    if n < 2 or (n & (n - 1)) != 0:
        raise ContractError(f"{what}: size must be a power of two >= 2, got {n}")
    return int(np.log2(n))


def _bit_reverse_perm(n: int) -> np.ndarray:
    bits = _require_pow2(n, "bit reversal")
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for i in range(bits):
        rev |= ((idx >> i) & 1) << (bits - 1 - i)
    return rev


def dft_exact(x, counter: OpCounter | None = None) -> Spectrum:
    """Direct evaluation of ``X[k] = sum_n x[n] * W^(kn)``."""
    v = _as_samples(x)
    n = v.size
    tbl = twiddle_table(n)
    local = OpCounter()
    bins = np.empty(n, dtype=complex)
    ks = np.arange(n)
    block = max(1, (1 << 21) // max(n, 1))
    for r0 in range(0, n, block):
        rows = ks[r0 : r0 + block]
        bins[r0 : r0 + rows.size] = tbl.entries[np.outer(rows, ks) % n] @ v
    local.count_complex_mul(n * n)
    if counter is not None:
        counter.merge(local)
    return Spectrum(bins, TransformKind.DFT_EXACT, local.report())


def fft_exact(x, counter: OpCounter | None = None) -> Spectrum:
    """Radix-2 decimation-in-time FFT; matches ``dft_exact`` to ~1e-12."""
    v = _as_samples(x)
    n = v.size
    _require_pow2(n, "fft_exact")
    tbl = twiddle_table(n)
    local = OpCounter()
    y = v[_bit_reverse_perm(n)]
    m = 2
    while m <= n:
        h = m // 2
        blocks = y.reshape(-1, m)
        a = blocks[:, :h]
        b = blocks[:, h:]
        w = tbl.entries[np.arange(h) * (n // m)]
        t = w[None, :] * b
        local.count_complex_mul(b.size)
        y = np.concatenate([a + t, a - t], axis=1).reshape(-1)
        m *= 2
    if counter is not None:
        counter.merge(local)
    return Spectrum(y, TransformKind.FFT_EXACT, local.report())


def ndft(x, counter: OpCounter | None = None) -> Spectrum:
    """Nonlinear DFT: the full DFT matrix applied with the sign-additive product.

    Every matrix element, the unity entries of row/column 0 included, goes
    through one complex application: exactly N^2 of them.  Row sums
    accumulate column-by-column in index order so the result is bit-for-bit
    identical to an explicit scalar double loop.
    """
    v = _as_samples(x)
    n = v.size
    tbl = twiddle_table(n)
    local = OpCounter()
    acc_r = np.zeros(n)
    acc_i = np.zeros(n)
    ks = np.arange(n)
    # Row-blocked to bound the (rows x n) temporaries on large sizes.
    block = max(1, (1 << 21) // max(n, 1))
    for r0 in range(0, n, block):
        rows = ks[r0 : r0 + block]
        m = tbl.entries[np.outer(rows, ks) % n]
        rr, ri = _mf_complex_raw(m.real, m.imag, v.real[None, :], v.imag[None, :])
        for col in range(n):
            acc_r[r0 : r0 + rows.size] += rr[:, col]
            acc_i[r0 : r0 + rows.size] += ri[:, col]
    local.count_complex(n * n)
    bins = acc_r + 1j * acc_i
    if counter is not None:
        counter.merge(local)
    return Spectrum(bins, TransformKind.NDFT, local.report())


def nfft(x, counter: OpCounter | None = None) -> Spectrum:
    """Nonlinear FFT: decimation-in-time flow graph, all twiddles sign-additive.

    Bottom stage: each input pair goes through the full 2-point nonlinear
    DFT (the two unity entries and the -1 entry all applied, the shared
    unity product evaluated once).  Later stages: each output line applies
    its own twiddle to the odd branch, the second half using the exact
    negation of the first-half twiddle (W^(k+N/2) == -W^k holds exactly).
    """
    v = _as_samples(x)
    n = v.size
    _require_pow2(n, "nfft")
    tbl = twiddle_table(n)
    local = OpCounter()
    y = v[_bit_reverse_perm(n)]

    a = y[0::2]
    b = y[1::2]
    ur, ui = _mf_complex_raw(1.0, 0.0, a.real, a.imag)
    tr, ti = _mf_complex_raw(1.0, 0.0, b.real, b.imag)
    # 4 matrix entries per pair; the unity column is applied once and reused
    # by both rows (bit-identical either way), the -1 entry is the exact
    # negation of the unity product.
    local.count_complex(4 * (n // 2))
    y = np.empty(n, dtype=complex)
    y[0::2] = (ur + tr) + 1j * (ui + ti)
    y[1::2] = (ur - tr) + 1j * (ui - ti)

    m = 4
    while m <= n:
        h = m // 2
        blocks = y.reshape(-1, m)
        a = blocks[:, :h]
        b = blocks[:, h:]
        w = tbl.entries[np.arange(h) * (n // m)]
        t1r, t1i = _mf_complex_raw(w.real[None, :], w.imag[None, :], b.real, b.imag)
        t2r, t2i = _mf_complex_raw(-w.real[None, :], -w.imag[None, :], b.real, b.imag)
        local.count_complex(2 * b.size)
        top = a + (t1r + 1j * t1i)
        bot = a + (t2r + 1j * t2i)
        y = np.concatenate([top, bot], axis=1).reshape(-1)
        m *= 2
    if counter is not None:
        counter.merge(local)
    return Spectrum(y, TransformKind.NFFT, local.report())


def peak_index(s) -> int:
    """Index of the largest-magnitude bin; ties go to the smallest index."""
    bins = s.bins if isinstance(s, Spectrum) else np.asarray(s)
    if bins.size < 1:
        raise ContractError("peak_index: spectrum must be non-empty")
    return int(np.argmax(np.abs(bins)))


def ndft_complex_ops(n: int) -> int:
    return n * n


def nfft_complex_ops(n: int) -> int:
    """N*(log2(N)+1): 4 per bottom-stage pair, 2 per butterfly above."""
    return n * (_require_pow2(n, "nfft_complex_ops") + 1)


def nfft_butterflies(n: int) -> int:
    return (n // 2) * _require_pow2(n, "nfft_butterflies")


def fft_complex_muls(n: int) -> int:
    return (n // 2) * _require_pow2(n, "fft_complex_muls")


def dft_complex_muls(n: int) -> int:
    return n * n
