"""Range-Doppler ambiguity surfaces, exact and sign-additive.

A surface is an L x N grid: row ``l`` is the length-N Fourier transform of
the lag product between the surveillance signal and the reference signal
delayed by ``l`` samples.  Four variants differ in which of the two stages
(lag product, transform) uses the sign-additive product:

=========  ==================  =====================
variant    lag product         Doppler transform
=========  ==================  =====================
eq11       exact multiply      exact FFT
eq12a      sign-additive       nonlinear FFT
eq12b      sign-additive       exact FFT
eq12c      exact multiply      nonlinear FFT
=========  ==================  =====================

The reference is conjugated before the lag product in every variant
(matched-filter convention); ``conjugate_ref=False`` gives the unconjugated
form, which mirrors the Doppler axis.  Reference samples before the capture
start are taken as zero: echoes are causal, there is no wraparound.

The nonlinear-FFT variants accept an input gain applied to the lag product
before the transform.  The sign-additive product is only jointly
homogeneous, so this gain is a real parameter of the processing, not a
cosmetic scale.

Rows are mutually independent: given the precomputed twiddle tables,
computing rows in any order yields bit-identical surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .operator import ContractError, OpCounter, OpCountReport, _mf_complex_raw
from .transforms import ComplexSignal, fft_exact, nfft

__all__ = [
    "SPEED_OF_LIGHT",
    "AmbiguityVariant",
    "AmbiguitySurface",
    "lag_product_exact",
    "lag_product_mf",
    "ambiguity_eq11",
    "ambiguity_eq12a",
    "ambiguity_eq12b",
    "ambiguity_eq12c",
    "compute_ambiguity",
]

SPEED_OF_LIGHT = 299_792_458.0


class AmbiguityVariant(str, Enum):
    EQ11 = "eq11"
    EQ12A = "eq12a"
    EQ12B = "eq12b"
    EQ12C = "eq12c"


@dataclass(frozen=True)
class AmbiguitySurface:
    """L x N complex surface over (range bin l, Doppler bin p)."""

    values: np.ndarray
    range_bin_m: float
    doppler_bin_hz: float
    variant: AmbiguityVariant
    sample_rate_hz: float
    lag_op_counts: OpCountReport = field(default_factory=OpCountReport)
    transform_op_counts: OpCountReport = field(default_factory=OpCountReport)

    @property
    def op_counts(self) -> OpCountReport:
        return self.lag_op_counts + self.transform_op_counts

    @property
    def l_bins(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]

    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    def magnitude_db(self, floor_db: float = -300.0) -> np.ndarray:
        mag = self.magnitude()
        peak = mag.max()
        if peak <= 0.0:
            return np.full(mag.shape, floor_db)
        with np.errstate(divide="ignore"):
            db = 20.0 * np.log10(mag / peak)
        return np.maximum(db, floor_db)

    def range_cut(self, floor_db: float = -300.0):
        """Per range bin: (bistatic range km, max magnitude over Doppler, dB)."""
        db = self.magnitude_db(floor_db).max(axis=1)
        ls = np.arange(self.l_bins)
        return ls, ls * self.range_bin_m / 1000.0, db

    def doppler_cut(self, floor_db: float = -300.0):
        """Per Doppler bin on the centered axis (-fs/2, fs/2]: max over range."""
        db = self.magnitude_db(floor_db).max(axis=0)
        n = self.n
        p = np.arange(n)
        freq = np.where(p <= n // 2, p, p - n) * self.doppler_bin_hz
        order = np.argsort(freq, kind="stable")
        return freq[order], db[order]


def _lag_slices(s_surv, s_ref, l: int, n: int | None):
    surv = s_surv.samples if isinstance(s_surv, ComplexSignal) else np.asarray(s_surv, dtype=complex)
    ref = s_ref.samples if isinstance(s_ref, ComplexSignal) else np.asarray(s_ref, dtype=complex)
    if n is None:
        n = surv.size
    if l < 0:
        raise ContractError(f"lag must be non-negative, got {l}")
    if l >= ref.size:
        raise ContractError(f"lag {l} is not below the reference length {ref.size}")
    if surv.size < n:
        raise ContractError(f"surveillance signal shorter than n={n}")
    if ref.size < n - l:
        raise ContractError(f"reference signal too short for n={n}, lag={l}")
    shifted = np.zeros(n, dtype=complex)
    shifted[l:] = ref[: n - l]
    return surv[:n], shifted


def lag_product_exact(s_surv, s_ref, l: int, n: int | None = None,
                      conjugate_ref: bool = True,
                      counter: OpCounter | None = None) -> np.ndarray:
    """``y[i] = s_surv[i] * conj(s_ref[i-l])`` with zero reference for i < l."""
    surv, shifted = _lag_slices(s_surv, s_ref, l, n)
    if conjugate_ref:
        shifted = np.conj(shifted)
    if counter is not None:
        counter.count_complex_mul(surv.size)
    return surv * shifted


def lag_product_mf(s_surv, s_ref, l: int, n: int | None = None,
                   conjugate_ref: bool = True,
                   counter: OpCounter | None = None) -> np.ndarray:
    """Sign-additive lag product: one complex application per sample."""
    surv, shifted = _lag_slices(s_surv, s_ref, l, n)
    ref_im = -shifted.imag if conjugate_ref else shifted.imag
    rr, ri = _mf_complex_raw(surv.real, surv.imag, shifted.real, ref_im)
    if counter is not None:
        counter.count_complex(surv.size)
    return rr + 1j * ri


def _surface(s_surv, s_ref, l_bins: int, n: int, variant: AmbiguityVariant,
             lag_fn, transform_fn, transform_gain: float,
             conjugate_ref: bool) -> AmbiguitySurface:
    if l_bins < 1:
        raise ContractError("l_bins must be >= 1")
    fs = None
    for sig in (s_surv, s_ref):
        if isinstance(sig, ComplexSignal):
            if fs is not None and sig.sample_rate_hz != fs:
                raise ContractError("surveillance and reference sample rates differ")
            fs = sig.sample_rate_hz
    if fs is None:
        raise ContractError("at least one input must be a ComplexSignal carrying a sample rate")
    lag_counter = OpCounter()
    tr_counter = OpCounter()
    rows = np.empty((l_bins, n), dtype=complex)
    for l in range(l_bins):
        y = lag_fn(s_surv, s_ref, l, n, conjugate_ref, lag_counter)
        if transform_gain != 1.0:
            y = transform_gain * y
        rows[l] = transform_fn(y, tr_counter).bins
    return AmbiguitySurface(
        values=rows,
        range_bin_m=SPEED_OF_LIGHT / fs,
        doppler_bin_hz=fs / n,
        variant=variant,
        sample_rate_hz=fs,
        lag_op_counts=lag_counter.report(),
        transform_op_counts=tr_counter.report(),
    )


def ambiguity_eq11(s_surv, s_ref, l_bins: int, n: int,
                   conjugate_ref: bool = True) -> AmbiguitySurface:
    """Classic cross-ambiguity: exact lag product, exact FFT."""
    return _surface(s_surv, s_ref, l_bins, n, AmbiguityVariant.EQ11,
                    lag_product_exact, fft_exact, 1.0, conjugate_ref)


def ambiguity_eq12a(s_surv, s_ref, l_bins: int, n: int,
                    transform_input_gain: float = 1.0,
                    conjugate_ref: bool = True) -> AmbiguitySurface:
    """Fully sign-additive: sign-additive lag product into the nonlinear FFT."""
    return _surface(s_surv, s_ref, l_bins, n, AmbiguityVariant.EQ12A,
                    lag_product_mf, nfft, transform_input_gain, conjugate_ref)


def ambiguity_eq12b(s_surv, s_ref, l_bins: int, n: int,
                    conjugate_ref: bool = True) -> AmbiguitySurface:
    """Sign-additive lag product, exact Fourier transform."""
    return _surface(s_surv, s_ref, l_bins, n, AmbiguityVariant.EQ12B,
                    lag_product_mf, fft_exact, 1.0, conjugate_ref)


def ambiguity_eq12c(s_surv, s_ref, l_bins: int, n: int,
                    transform_input_gain: float = 1.0,
                    conjugate_ref: bool = True) -> AmbiguitySurface:
    """Exact lag product, nonlinear FFT.

    No campaign results ship for this variant; it exists for completeness
    and is exercised by the test suite.
    """
    return _surface(s_surv, s_ref, l_bins, n, AmbiguityVariant.EQ12C,
                    lag_product_exact, nfft, transform_input_gain, conjugate_ref)


def compute_ambiguity(variant, s_surv, s_ref, l_bins: int, n: int,
                      transform_input_gain: float = 1.0,
                      conjugate_ref: bool = True) -> AmbiguitySurface:
    """Dispatch on variant name or enum.

    The input gain reaches only the nonlinear-FFT variants; for the exact
    transform it would rescale the whole surface and change nothing.
    """
    variant = AmbiguityVariant(variant)
    if variant is AmbiguityVariant.EQ11:
        return ambiguity_eq11(s_surv, s_ref, l_bins, n, conjugate_ref)
    if variant is AmbiguityVariant.EQ12A:
        return ambiguity_eq12a(s_surv, s_ref, l_bins, n, transform_input_gain, conjugate_ref)
    if variant is AmbiguityVariant.EQ12B:
        return ambiguity_eq12b(s_surv, s_ref, l_bins, n, conjugate_ref)
    return ambiguity_eq12c(s_surv, s_ref, l_bins, n, transform_input_gain, conjugate_ref)
