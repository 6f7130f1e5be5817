"""Acceptance gate: one test per criterion, one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the status lines.

Criteria 6 and 7 encode detection outcomes that are not reachable at the
shipped default parameter point; they are implemented exactly as stated and
left failing rather than weakened.  Their failure messages carry the
quantitative analysis, and the supplementary (non-criterion) test at the
bottom demonstrates that the underlying robustness phenomenon does occur in
this implementation at a lower input level.
"""

import os
import time
from statistics import median

import numpy as np
import pytest

from oracles import ndft_double_loop

from signadd import (
    NoiseKind,
    NoiseModel,
    dft_exact,
    fft_exact,
    lag_product_mf,
    mf_real,
    mf_sign,
    ndft,
    nfft,
    peak_index,
    run_scenario,
    two_targets_one_clutter,
    true_bins,
    unit_tone,
    vector_product,
)
from signadd.cli import main as cli_main
from signadd.radar import save_scenario
from signadd.transforms import (
    dft_complex_muls,
    fft_complex_muls,
    ndft_complex_ops,
    nfft_complex_ops,
)

POWERS = [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]
FUZZ = 100_000


def _status(num: int, name: str, ok: bool, extra: str = "") -> None:
    mark = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {num} ({name}): {mark}"
    if extra:
        line += f"  [{extra}]"
    print(line)


def test_criterion_1_operator_algebra():
    t0 = time.monotonic()
    g = np.random.default_rng(101)
    a = g.uniform(-1e3, 1e3, FUZZ)
    b = g.uniform(-1e3, 1e3, FUZZ)
    c = g.uniform(-8, 8, FUZZ)

    commutative = np.array_equal(mf_real(a, b), mf_real(b, a))
    sign_agree = np.array_equal(np.sign(mf_real(a, b)).astype(int), mf_sign(a, b))
    nz_a = np.where(a == 0, 1.0, a)
    nz_b = np.where(b == 0, 1.0, b)
    magnitude = np.array_equal(np.abs(mf_real(nz_a, nz_b)),
                               np.abs(nz_a) + np.abs(nz_b))
    lhs = mf_real(c * a, c * b)
    rhs = np.abs(c) * mf_real(a, b)
    joint = np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-30)) < 1e-12
    l1_ok = True
    for _ in range(FUZZ // 500):
        x = g.uniform(-50, 50, 500)
        if abs(vector_product(x, x) - 2.0 * np.sum(np.abs(x))) > 1e-9:
            l1_ok = False
            break
    elapsed = time.monotonic() - t0
    ok = commutative and sign_agree and magnitude and joint and l1_ok and elapsed < 5.0
    _status(1, "operator algebra", ok, f"{elapsed:.2f}s")
    assert commutative and sign_agree and magnitude and joint and l1_ok
    assert elapsed < 5.0


def test_criterion_2_transform_oracles():
    t0 = time.monotonic()
    g = np.random.default_rng(202)
    worst = 0.0
    for n in POWERS:
        for _ in range(100):
            x = g.standard_normal(n) + 1j * g.standard_normal(n)
            a = fft_exact(x).bins
            b = dft_exact(x).bins
            worst = max(worst, np.max(np.abs(a - b)) / np.max(np.abs(b)))
    oracle_ok = worst < 1e-9

    bitwise_ok = True
    for n in (3, 5, 8, 16, 64):
        x = g.standard_normal(n) + 1j * g.standard_normal(n)
        if ndft(x).bins.tobytes() != ndft_double_loop(x).tobytes():
            bitwise_ok = False
    elapsed = time.monotonic() - t0
    ok = oracle_ok and bitwise_ok and elapsed < 30.0
    _status(2, "transform oracles", ok, f"worst rel {worst:.2e}, {elapsed:.1f}s")
    assert oracle_ok, f"fft/dft disagreement {worst:.3e} exceeds 1e-9"
    assert bitwise_ok, "matrix-form and double-loop nonlinear DFT differ bitwise"
    assert elapsed < 30.0


def test_criterion_3_peak_reproduction():
    n = 64
    bad_ndft = [k0 for k0 in range(n) if peak_index(ndft(unit_tone(k0, n))) != k0]
    bad_nfft = [k0 for k0 in range(n) if peak_index(nfft(unit_tone(k0, n))) != k0]
    ok = bad_ndft == [] and bad_nfft == []
    _status(3, "tone peak at every bin", ok,
            f"violations ndft={bad_ndft} nfft={bad_nfft}")
    assert peak_index(ndft(unit_tone(7, n))) == 7
    assert peak_index(nfft(unit_tone(7, n))) == 7
    assert bad_ndft == [], f"nonlinear DFT peak violations at {bad_ndft}"
    assert bad_nfft == [], f"nonlinear FFT peak violations at {bad_nfft}"


def test_criterion_4_costs_exact():
    ok = True
    for n in POWERS:
        x = unit_tone(1, n)
        nd = ndft(x).op_counts
        nf = nfft(x).op_counts
        ok &= nd.complex_mul_ops == 0 and nf.complex_mul_ops == 0
        ok &= nd.complex_mf_ops == ndft_complex_ops(n) == n * n
        expected = n * (int(np.log2(n)) + 1)
        ok &= nf.complex_mf_ops == nfft_complex_ops(n) == expected
        ok &= (nf.sign_ops, nf.abs_ops, nf.add_ops) == (
            4 * expected, 8 * expected, 6 * expected)
        ok &= fft_exact(x).op_counts.complex_mul_ops == fft_complex_muls(n)
        ok &= dft_exact(x).op_counts.complex_mul_ops == dft_complex_muls(n)
    # Theta(N log N): the constant versus N*log2(N) tends to 1 from above
    ratio = nfft_complex_ops(1024) / (1024 * 10)
    ok &= 1.0 < ratio <= 1.5
    _status(4, "multiplication-free cost accounting", ok,
            f"nfft(N)=N*(log2 N + 1), ratio@1024={ratio:.2f}")
    assert ok


def test_criterion_5_matched_filter_geometry():
    t0 = time.monotonic()
    scn = two_targets_one_clutter(seed=1)
    expected = set(true_bins(scn))
    assert expected == {(16, 4), (28, 3), (53, 0)}

    r11 = run_scenario(scn, "eq11", seed=1)
    top3_11 = {(p.l, p.p) for p in r11.peaks[:3]}
    exact_ok = top3_11 == expected

    r12b = run_scenario(scn, "eq12b", seed=1)
    top3_12b = {(p.l, p.p) for p in r12b.peaks[:3]}
    mixed_ok = expected <= top3_12b

    elapsed = time.monotonic() - t0
    ok = exact_ok and mixed_ok and elapsed < 60.0
    _status(5, "matched-filter geometry", ok,
            f"eq11 top3={sorted(top3_11)}, {elapsed:.1f}s")
    assert exact_ok, f"exact-surface top-3 {sorted(top3_11)} != {sorted(expected)}"
    assert mixed_ok, f"eq12b top-3 {sorted(top3_12b)} misses a true bin"
    assert elapsed < 60.0


CONTAMINATED = NoiseModel(kind=NoiseKind.EPS_CONTAMINATED,
                          eps=0.9, sigma1=0.25, sigma2=10.0)

UNREACHABLE_NOTE = """
This criterion is not reachable at the pinned operating point (unit echo
amplitudes, mixture (eps=0.9, sigma1=0.25, sigma2=10), gains 64/16, N=4096):

* exact correlation (eq11): the matched peak keeps sqrt(N)*a/sqrt(P_noise)
  ~= 64/4.5 ~= 14x (+23 dB) of margin over the outlier-driven floor, so the
  top-3 surface peaks are the true bins on every seed and the overall
  outcome is 'detected', never 'no detection'.  Masking the exact
  correlator at N=4096 requires sigma2 >~ 150 or echo amplitudes <~ 0.1.
* fully sign-additive (eq12a): the nonlinear FFT's response to a
  zero-Doppler (real-axis) return is structurally ~2x weaker than to a
  rotating return of equal amplitude (at Doppler bin 0 every twiddle is
  1+0j, so the quadrature half of the complex operator idles), and the
  transform scatters ~-9 dB aliases of the two stronger moving-target
  peaks across Doppler; those aliases outrank the stationary obstacle in
  the top-3 list on every seed, so the outcome is 'partial', never
  'detected'.

The robustness phenomenon itself does exist in this implementation: with
inputs held below the unit twiddle magnitude (gains as attenuators) and a
stronger outlier component, the sign-additive pipeline keeps both moving
targets while exact correlation detects nothing.  See
test_supplementary_robustness_trend_at_limiter_point.
"""


def test_criterion_6_contaminated_robustness_trend():
    scn = two_targets_one_clutter(noise=CONTAMINATED)
    seeds = range(10)
    det_12a = sum(run_scenario(scn, "eq12a", seed=s).overall == "detected"
                  for s in seeds)
    nodet_11 = sum(run_scenario(scn, "eq11", seed=s).overall == "no detection"
                   for s in seeds)
    ok = det_12a >= 8 and nodet_11 >= 8
    _status(6, "contaminated robustness trend", ok,
            f"eq12a detected {det_12a}/10 (need >=8), "
            f"eq11 no-detection {nodet_11}/10 (need >=8)")
    assert ok, (
        f"eq12a detected {det_12a}/10 (need >= 8); "
        f"eq11 'no detection' {nodet_11}/10 (need >= 8).\n" + UNREACHABLE_NOTE)


def test_criterion_7_awgn_trend():
    seeds = range(10)
    all_ok = True
    floor_ok = True
    details = []
    for snr in (3.0, 6.0):
        noise = NoiseModel(kind=NoiseKind.AWGN, snr_db=snr)
        scn = two_targets_one_clutter(noise=noise)
        r11 = [run_scenario(scn, "eq11", seed=s) for s in seeds]
        r12a = [run_scenario(scn, "eq12a", seed=s) for s in seeds]
        det11 = sum(r.overall == "detected" for r in r11)
        det12 = sum(r.overall == "detected" for r in r12a)
        f11 = median(r.sidelobe_floor_db for r in r11)
        f12 = median(r.sidelobe_floor_db for r in r12a)
        details.append(f"{snr:g}dB: det eq11 {det11}/10 eq12a {det12}/10, "
                       f"floors {f11:.2f} vs {f12:.2f} dB")
        all_ok &= det11 > 5 and det12 > 5
        floor_ok &= f11 <= f12 - 1.0
    ok = all_ok and floor_ok
    _status(7, "white-noise trend", ok, "; ".join(details))
    assert floor_ok, (
        "exact-correlation side-lobe floor is not at least 1 dB below the "
        f"sign-additive one: {details}")
    assert all_ok, (
        "majority detection of all three objects fails for the sign-additive "
        f"variant: {details}.\n" + UNREACHABLE_NOTE)


def test_criterion_8_eq12b_dual_path():
    g = np.random.default_rng(808)
    n = 256
    worst = 0.0
    for _ in range(20):
        surv = g.standard_normal(n) + 1j * g.standard_normal(n)
        ref = np.exp(2j * np.pi * g.random(n))
        lag = int(g.integers(0, 32))
        y = lag_product_mf(surv, ref, lag, n)
        via_fft = fft_exact(y).bins
        direct = np.array([
            np.sum(y * np.exp(-2j * np.pi * np.arange(n) * p / n))
            for p in range(n)
        ])
        worst = max(worst, np.max(np.abs(via_fft - direct)) / np.max(np.abs(direct)))
    ok = worst < 1e-9
    _status(8, "nonlinear-lag dual path", ok, f"worst rel {worst:.2e}")
    assert ok, f"dual-path disagreement {worst:.3e} exceeds 1e-9"


def test_criterion_9_cli_determinism(tmp_path):
    scn_path = str(tmp_path / "scene.json")
    save_scenario(two_targets_one_clutter(noise=CONTAMINATED), scn_path)

    def run_all(tag):
        base = tmp_path / tag
        base.mkdir()
        for cmd in (
            ["transform", "--kind", "nfft", "--tone", "7", "--n", "64",
             "--out", str(base / "t"), "--svg"],
            ["ambiguity", "--scenario", scn_path, "--variant", "eq12a",
             "--seed", "2", "--out", str(base / "a"), "--svg"],
            ["table", "--set", "default", "--seeds", "0",
             "--out", str(base / "tb")],
            ["opcount", "--n-list", "2,16,64", "--out", str(base / "o")],
        ):
            assert cli_main(cmd) == 0
        return {
            name: open(base / name, "rb").read()
            for name in sorted(os.listdir(base))
            if name.endswith((".csv", ".svg"))
        }

    first = run_all("r1")
    second = run_all("r2")
    ok = first == second and len(first) >= 7
    _status(9, "CLI rerun determinism", ok, f"{len(first)} outputs compared")
    assert first.keys() == second.keys()
    for name in first:
        assert first[name] == second[name], f"{name} differs between reruns"


def test_supplementary_robustness_trend_at_limiter_point():
    """Not an acceptance criterion: demonstrates the heavy-tail robustness
    flip at an operating point where the sign-additive pipeline runs as a
    limiter (inputs below the unit twiddle magnitude, stronger outliers).
    Both moving targets survive in the sign-additive surface while exact
    correlation detects nothing."""
    from dataclasses import replace

    noise = NoiseModel(kind=NoiseKind.EPS_CONTAMINATED,
                       eps=0.9, sigma1=0.25, sigma2=100.0)
    base = two_targets_one_clutter(noise=noise)
    scn = replace(base, surv_gain=1.0 / 64.0, transform_input_gain=1.0 / 16.0)
    seeds = range(5)
    target_hits = 0
    eq11_none = 0
    for s in seeds:
        r12a = run_scenario(scn, "eq12a", seed=s)
        target_hits += (r12a.statuses[0] == "detected"
                        and r12a.statuses[1] == "detected")
        eq11_none += run_scenario(scn, "eq11", seed=s).overall == "no detection"
    print(f"SUPPLEMENTARY limiter-regime trend: sign-additive keeps both "
          f"targets {target_hits}/5, exact correlation masked {eq11_none}/5")
    assert target_hits >= 4
    assert eq11_none >= 4
