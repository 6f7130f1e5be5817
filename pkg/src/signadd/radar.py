"""Scene synthesis for passive bistatic radar experiments.

The illuminator is a stereo FM broadcast modelled at complex baseband: a
multiplex message built from two per-sample i.i.d. uniform(-1, 1) channels,
a 19 kHz pilot, its second and third harmonics carrying the usual stereo
components, phase-modulated onto a unit phasor.  The reference signal is
the transmitted signal itself and is never perturbed by noise.

The surveillance signal is the sum of delayed, Doppler-shifted echoes, one
per obstacle.  Delays are integer samples derived from the bistatic path
(transmitter -> obstacle -> receiver); stationary obstacles (clutter) carry
zero Doppler.  Noise is added to the echo mixture, then the whole thing is
scaled by the surveillance gain, modelling receiver amplification of
signal-plus-noise.

Everything is a pure function of the scenario, seeds included.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .ambiguity import SPEED_OF_LIGHT
from .operator import ContractError
from .transforms import ComplexSignal

__all__ = [
    "StereoFmConfig",
    "Obstacle",
    "NoiseKind",
    "NoiseModel",
    "Scenario",
    "gen_stereo_fm",
    "bistatic_delay_bins",
    "doppler_bin",
    "true_bins",
    "synth_surveillance",
    "add_awgn",
    "add_contaminated",
    "apply_noise",
    "build_signals",
    "reseed_scenario",
    "scenario_to_dict",
    "scenario_from_dict",
    "load_scenario",
    "save_scenario",
    "scenario_hash",
    "two_targets_one_clutter",
    "four_targets_two_clutters",
    "one_target_three_clutters",
    "standard_environments",
]

PILOT_HZ = 19_000.0


@dataclass(frozen=True)
class StereoFmConfig:
    """Stereo FM waveform parameters.

    The sample rate must exceed twice the highest message component
    (3 * 19 kHz) so the complex baseband holds the multiplex.
    """

    f_s: float = 200_000.0
    duration_samples: int = 4160
    k_f: float = 0.25
    f_p: float = PILOT_HZ
    seed: int = 0

    def __post_init__(self):
        if not (self.f_s > 2.0 * (3.0 * self.f_p)):
            raise ContractError(
                f"StereoFmConfig: f_s={self.f_s} must exceed twice the highest "
                f"message component {3.0 * self.f_p} Hz"
            )
        if self.duration_samples < 1:
            raise ContractError("StereoFmConfig: duration_samples must be >= 1")


@dataclass(frozen=True)
class Obstacle:
    """A point scatterer: position in km, Doppler shift, complex amplitude."""

    x_km: float
    y_km: float
    doppler_hz: float = 0.0
    amplitude: complex = 1.0 + 0.0j

    @property
    def is_clutter(self) -> bool:
        return self.doppler_hz == 0.0


class NoiseKind(str, Enum):
    NONE = "none"
    AWGN = "awgn"
    EPS_CONTAMINATED = "eps_contaminated"


@dataclass(frozen=True)
class NoiseModel:
    kind: NoiseKind = NoiseKind.NONE
    snr_db: float = 0.0
    eps: float = 0.9
    sigma1: float = 0.25
    sigma2: float = 10.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind(self.kind))
        if not (0.0 <= self.eps <= 1.0):
            raise ContractError(f"NoiseModel: eps={self.eps} must be within [0, 1]")
        if self.sigma1 <= 0 or self.sigma2 <= 0:
            raise ContractError("NoiseModel: sigma1 and sigma2 must be positive")

    def label(self) -> str:
        if self.kind is NoiseKind.NONE:
            return "none"
        if self.kind is NoiseKind.AWGN:
            return f"awgn {self.snr_db:g} dB"
        return f"eps-cont {self.eps:g}/{self.sigma1:g}/{self.sigma2:g}"


@dataclass(frozen=True)
class Scenario:
    """Full experiment description: geometry, waveform, noise, gains, sizes."""

    tx_km: tuple[float, float]
    rx_km: tuple[float, float]
    obstacles: tuple[Obstacle, ...]
    noise: NoiseModel = field(default_factory=NoiseModel)
    fm: StereoFmConfig = field(default_factory=StereoFmConfig)
    n: int = 4096
    l_bins: int = 64
    surv_gain: float = 64.0
    transform_input_gain: float = 16.0

    def __post_init__(self):
        object.__setattr__(self, "tx_km", tuple(float(v) for v in self.tx_km))
        object.__setattr__(self, "rx_km", tuple(float(v) for v in self.rx_km))
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        if len(self.obstacles) < 1:
            raise ContractError("Scenario: need at least one obstacle")
        if self.surv_gain <= 0 or self.transform_input_gain <= 0:
            raise ContractError("Scenario: gains must be positive")
        if self.n < 2 or (self.n & (self.n - 1)) != 0:
            raise ContractError(f"Scenario: n={self.n} must be a power of two")
        if self.l_bins < 1:
            raise ContractError("Scenario: l_bins must be >= 1")
        max_delay = max(self.delay_bins())
        if self.fm.duration_samples < self.n + max_delay:
            raise ContractError(
                f"Scenario: duration_samples={self.fm.duration_samples} must cover "
                f"n + max delay = {self.n + max_delay}"
            )

    def delay_bins(self) -> list[int]:
        return [
            bistatic_delay_bins(self.tx_km, self.rx_km, ob, self.fm.f_s)
            for ob in self.obstacles
        ]

    @property
    def n_targets(self) -> int:
        return sum(not ob.is_clutter for ob in self.obstacles)

    @property
    def n_clutters(self) -> int:
        return sum(ob.is_clutter for ob in self.obstacles)


def gen_stereo_fm(cfg: StereoFmConfig) -> ComplexSignal:
    """Generate the unit-modulus FM baseband signal, deterministic per seed."""
    rng = np.random.default_rng(cfg.seed)
    x = rng.uniform(-1.0, 1.0, size=(2, cfg.duration_samples))
    x1, x2 = x[0], x[1]
    t = np.arange(cfg.duration_samples) / cfg.f_s
    m = (
        0.9 * (x1 + x2)
        + 0.5 * (x1 - x2) * np.cos(2.0 * np.pi * 2.0 * cfg.f_p * t)
        + 0.25 * np.cos(2.0 * np.pi * 3.0 * cfg.f_p * t)
        + 0.1 * np.cos(2.0 * np.pi * cfg.f_p * t)
    )
    phase = 2.0 * np.pi * cfg.k_f * m
    return ComplexSignal(np.cos(phase) + 1j * np.sin(phase), cfg.f_s)


def bistatic_delay_bins(tx_km, rx_km, obstacle: Obstacle, f_s: float) -> int:
    """Integer delay of the transmitter->obstacle->receiver path in samples."""
    d1 = math.hypot(obstacle.x_km - tx_km[0], obstacle.y_km - tx_km[1])
    d2 = math.hypot(obstacle.x_km - rx_km[0], obstacle.y_km - rx_km[1])
    return round((d1 + d2) * 1000.0 / SPEED_OF_LIGHT * f_s)


def doppler_bin(doppler_hz: float, n: int, f_s: float) -> int:
    """Doppler frequency rounded to the nearest transform bin, modulo n."""
    return round(doppler_hz * n / f_s) % n


def true_bins(scn: Scenario) -> list[tuple[int, int]]:
    """Per obstacle: (range bin, Doppler bin) where its echo concentrates."""
    return [
        (l, doppler_bin(ob.doppler_hz, scn.n, scn.fm.f_s))
        for l, ob in zip(scn.delay_bins(), scn.obstacles)
    ]


def synth_surveillance(scn: Scenario, s_ref: ComplexSignal) -> ComplexSignal:
    """Sum of delayed Doppler-shifted echoes, plus noise, times the gain.

    The reference before its first sample is zero (transmission starts at
    the capture origin), so an echo delayed by ``l`` is silent for i < l.
    Doppler phase runs on the global sample index.
    """
    ref = s_ref.samples
    d = ref.size
    delays = scn.delay_bins()
    need = scn.n + max(delays)
    if d < need:
        raise ContractError(
            f"synth_surveillance: reference length {d} is below n + max delay = {need}"
        )
    i = np.arange(d)
    out = np.zeros(d, dtype=complex)
    for ob, l in zip(scn.obstacles, delays):
        shifted = np.zeros(d, dtype=complex)
        shifted[l:] = ref[: d - l]
        if ob.doppler_hz == 0.0:
            out += ob.amplitude * shifted
        else:
            out += ob.amplitude * shifted * np.exp(
                2j * np.pi * ob.doppler_hz * i / scn.fm.f_s
            )
    out = apply_noise(out, scn.noise)
    return ComplexSignal(out * scn.surv_gain, scn.fm.f_s)


def add_awgn(x, snr_db: float, seed: int) -> np.ndarray:
    """Add circular complex Gaussian noise at the given empirical SNR."""
    x = x.samples if isinstance(x, ComplexSignal) else np.asarray(x, dtype=complex)
    if x.size < 1:
        raise ContractError("add_awgn: empty input")
    p_sig = float(np.mean(np.abs(x) ** 2))
    if p_sig <= 0.0:
        raise ContractError("add_awgn: zero-power input with finite SNR target")
    p_noise = p_sig / 10.0 ** (snr_db / 10.0)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((2, x.size)) * math.sqrt(p_noise / 2.0)
    return x + z[0] + 1j * z[1]


def add_contaminated(x, eps: float, sigma1: float, sigma2: float, seed: int) -> np.ndarray:
    """Two-component Gaussian mixture noise, drawn independently per
    component: with probability ``eps`` the narrow N(0, sigma1^2), else the
    wide N(0, sigma2^2)."""
    x = x.samples if isinstance(x, ComplexSignal) else np.asarray(x, dtype=complex)
    rng = np.random.default_rng(seed)
    sigma = np.where(rng.random((2, x.size)) < eps, sigma1, sigma2)
    z = rng.standard_normal((2, x.size)) * sigma
    return x + z[0] + 1j * z[1]


def apply_noise(x: np.ndarray, noise: NoiseModel) -> np.ndarray:
    if noise.kind is NoiseKind.NONE:
        return x
    if noise.kind is NoiseKind.AWGN:
        return add_awgn(x, noise.snr_db, noise.seed)
    return add_contaminated(x, noise.eps, noise.sigma1, noise.sigma2, noise.seed)


def build_signals(scn: Scenario) -> tuple[ComplexSignal, ComplexSignal]:
    """(reference, surveillance) pair for a scenario; the reference is the
    clean transmitted signal."""
    s_ref = gen_stereo_fm(scn.fm)
    return s_ref, synth_surveillance(scn, s_ref)


def reseed_scenario(scn: Scenario, seed: int) -> Scenario:
    """Derive a trial scenario: waveform and noise seeds both follow the
    trial seed (noise offset keeps the two streams distinct)."""
    return replace(
        scn,
        fm=replace(scn.fm, seed=seed),
        noise=replace(scn.noise, seed=seed + 9973),
    )


# --- JSON scenario schema ---------------------------------------------------

_NOISE_KEYS = {"kind", "snr_db", "eps", "sigma1", "sigma2", "seed"}
_FM_KEYS = {"fs_hz", "duration_samples", "kf", "seed"}
_OBSTACLE_KEYS = {"x_km", "y_km", "doppler_hz", "amplitude_re", "amplitude_im"}
_TOP_KEYS = {"fm", "tx_km", "rx_km", "obstacles", "noise", "n", "l_bins",
             "surv_gain", "transform_input_gain"}


class SchemaError(ValueError):
    """A scenario document violates the schema; the message names the key."""


def _check_keys(doc: dict, allowed: set, where: str) -> None:
    for key in doc:
        if key not in allowed:
            raise SchemaError(f"unknown key '{where}{key}'")


def _num(doc: dict, key: str, where: str, default=None):
    if key not in doc:
        if default is None:
            raise SchemaError(f"missing required key '{where}{key}'")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"key '{where}{key}' must be a number")
    return v


def scenario_from_dict(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise SchemaError("scenario document must be a JSON object")
    _check_keys(doc, _TOP_KEYS, "")
    n = int(_num(doc, "n", "", 4096))
    l_bins = int(_num(doc, "l_bins", "", 64))

    fm_doc = doc.get("fm", {})
    if not isinstance(fm_doc, dict):
        raise SchemaError("key 'fm' must be an object")
    _check_keys(fm_doc, _FM_KEYS, "fm.")
    fm = StereoFmConfig(
        f_s=float(_num(fm_doc, "fs_hz", "fm.", 200_000.0)),
        duration_samples=int(_num(fm_doc, "duration_samples", "fm.", n + l_bins)),
        k_f=float(_num(fm_doc, "kf", "fm.", 0.25)),
        seed=int(_num(fm_doc, "seed", "fm.", 0)),
    )

    for key in ("tx_km", "rx_km"):
        if key not in doc:
            raise SchemaError(f"missing required key '{key}'")
        v = doc[key]
        if not (isinstance(v, list) and len(v) == 2
                and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)):
            raise SchemaError(f"key '{key}' must be a [x, y] pair of numbers")

    if "obstacles" not in doc:
        raise SchemaError("missing required key 'obstacles'")
    if not (isinstance(doc["obstacles"], list) and doc["obstacles"]):
        raise SchemaError("key 'obstacles' must be a non-empty list")
    obstacles = []
    for i, ob in enumerate(doc["obstacles"]):
        where = f"obstacles[{i}]."
        if not isinstance(ob, dict):
            raise SchemaError(f"key 'obstacles[{i}]' must be an object")
        _check_keys(ob, _OBSTACLE_KEYS, where)
        obstacles.append(Obstacle(
            x_km=float(_num(ob, "x_km", where)),
            y_km=float(_num(ob, "y_km", where)),
            doppler_hz=float(_num(ob, "doppler_hz", where)),
            amplitude=complex(float(_num(ob, "amplitude_re", where, 1.0)),
                              float(_num(ob, "amplitude_im", where, 0.0))),
        ))

    noise_doc = doc.get("noise", {"kind": "none"})
    if not isinstance(noise_doc, dict):
        raise SchemaError("key 'noise' must be an object")
    _check_keys(noise_doc, _NOISE_KEYS, "noise.")
    kind_raw = noise_doc.get("kind", "none")
    try:
        kind = NoiseKind(kind_raw)
    except ValueError:
        raise SchemaError(f"key 'noise.kind' must be one of "
                          f"{[k.value for k in NoiseKind]}, got {kind_raw!r}")
    if kind is NoiseKind.AWGN and "snr_db" not in noise_doc:
        raise SchemaError("missing required key 'noise.snr_db' for awgn noise")
    if kind is NoiseKind.EPS_CONTAMINATED:
        for key in ("eps", "sigma1", "sigma2"):
            if key not in noise_doc:
                raise SchemaError(f"missing required key 'noise.{key}' "
                                  f"for eps_contaminated noise")
    noise = NoiseModel(
        kind=kind,
        snr_db=float(_num(noise_doc, "snr_db", "noise.", 0.0)),
        eps=float(_num(noise_doc, "eps", "noise.", 0.9)),
        sigma1=float(_num(noise_doc, "sigma1", "noise.", 0.25)),
        sigma2=float(_num(noise_doc, "sigma2", "noise.", 10.0)),
        seed=int(_num(noise_doc, "seed", "noise.", 0)),
    )

    try:
        return Scenario(
            tx_km=tuple(doc["tx_km"]),
            rx_km=tuple(doc["rx_km"]),
            obstacles=tuple(obstacles),
            noise=noise,
            fm=fm,
            n=n,
            l_bins=l_bins,
            surv_gain=float(_num(doc, "surv_gain", "", 64.0)),
            transform_input_gain=float(_num(doc, "transform_input_gain", "", 16.0)),
        )
    except ContractError as exc:
        raise SchemaError(str(exc)) from exc


def scenario_to_dict(scn: Scenario) -> dict:
    return {
        "fm": {
            "fs_hz": scn.fm.f_s,
            "duration_samples": scn.fm.duration_samples,
            "kf": scn.fm.k_f,
            "seed": scn.fm.seed,
        },
        "tx_km": list(scn.tx_km),
        "rx_km": list(scn.rx_km),
        "obstacles": [
            {
                "x_km": ob.x_km,
                "y_km": ob.y_km,
                "doppler_hz": ob.doppler_hz,
                "amplitude_re": ob.amplitude.real,
                "amplitude_im": ob.amplitude.imag,
            }
            for ob in scn.obstacles
        ],
        "noise": {
            "kind": scn.noise.kind.value,
            "snr_db": scn.noise.snr_db,
            "eps": scn.noise.eps,
            "sigma1": scn.noise.sigma1,
            "sigma2": scn.noise.sigma2,
            "seed": scn.noise.seed,
        },
        "n": scn.n,
        "l_bins": scn.l_bins,
        "surv_gain": scn.surv_gain,
        "transform_input_gain": scn.transform_input_gain,
    }


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return scenario_from_dict(doc)


def save_scenario(scn: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(scn), fh, indent=2, sort_keys=True)
        fh.write("\n")


def scenario_hash(scn: Scenario) -> str:
    canon = json.dumps(scenario_to_dict(scn), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


# --- shipped environments ---------------------------------------------------
#
# The two-target/one-clutter scene is the documented benchmark geometry.
# The larger scenes are shipped defaults chosen so every (range, Doppler)
# bin pair is separated from the others by more than the default guard.

def two_targets_one_clutter(noise: NoiseModel | None = None, seed: int = 0, n: int = 4096,
                    l_bins: int = 64) -> Scenario:
    """Two targets and one clutter: the benchmark scene."""
    return Scenario(
        tx_km=(0.0, 10.0),
        rx_km=(0.0, 0.0),
        obstacles=(
            Obstacle(10.0, 0.0, doppler_hz=200.0),
            Obstacle(20.0, 0.0, doppler_hz=157.0),
            Obstacle(28.0, 33.0, doppler_hz=0.0),
        ),
        noise=noise or NoiseModel(),
        fm=StereoFmConfig(duration_samples=n + l_bins, seed=seed),
        n=n,
        l_bins=l_bins,
    )


def four_targets_two_clutters(noise: NoiseModel | None = None, seed: int = 0,
                              n: int = 4096, l_bins: int = 64) -> Scenario:
    return Scenario(
        tx_km=(0.0, 10.0),
        rx_km=(0.0, 0.0),
        obstacles=(
            Obstacle(10.0, 0.0, doppler_hz=200.0),
            Obstacle(20.0, 0.0, doppler_hz=157.0),
            Obstacle(5.0, 5.0, doppler_hz=350.0),
            Obstacle(12.0, -14.0, doppler_hz=-260.0),
            Obstacle(28.0, 33.0, doppler_hz=0.0),
            Obstacle(-18.0, 20.0, doppler_hz=0.0),
        ),
        noise=noise or NoiseModel(),
        fm=StereoFmConfig(duration_samples=n + l_bins, seed=seed),
        n=n,
        l_bins=l_bins,
    )


def one_target_three_clutters(noise: NoiseModel | None = None, seed: int = 0,
                              n: int = 4096, l_bins: int = 64) -> Scenario:
    return Scenario(
        tx_km=(0.0, 10.0),
        rx_km=(0.0, 0.0),
        obstacles=(
            Obstacle(10.0, 0.0, doppler_hz=200.0),
            Obstacle(28.0, 33.0, doppler_hz=0.0),
            Obstacle(-18.0, 20.0, doppler_hz=0.0),
            Obstacle(14.0, 8.0, doppler_hz=0.0),
        ),
        noise=noise or NoiseModel(),
        fm=StereoFmConfig(duration_samples=n + l_bins, seed=seed),
        n=n,
        l_bins=l_bins,
    )


def standard_environments() -> dict:
    """Name -> scenario factory for the shipped benchmark environments."""
    return {
        "2t1c": two_targets_one_clutter,
        "4t2c": four_targets_two_clutters,
        "1t3c": one_target_three_clutters,
    }
