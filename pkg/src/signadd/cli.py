"""Command-line front end.

Four subcommands, all deterministic given their flags and seeds:

* ``transform`` - spectrum of a built-in complex tone or a CSV signal under
  any of the four transforms.
* ``ambiguity`` - full surface plus range/Doppler cuts for a scenario file.
* ``table``     - detection/side-lobe summary over environments x noise
  cases x variants, aggregated over trial seeds.
* ``opcount``   - measured vs analytic operation counts per transform size.

Every numeric output is CSV ('.' decimal, '\\n' line ends, full round-trip
float formatting).  Each output references a JSON manifest written next to
it (the manifest carries the timestamp so the CSVs themselves stay
byte-identical across reruns).  Files are written to a temp name and
renamed, so failures never leave partial outputs.

Scenario files are single JSON objects::

    {"fm": {"fs_hz", "duration_samples", "kf", "seed"},
     "tx_km": [x, y], "rx_km": [x, y],
     "obstacles": [{"x_km", "y_km", "doppler_hz",
                    "amplitude_re", "amplitude_im"}, ...],
     "noise": {"kind": "none|awgn|eps_contaminated",
               "snr_db"?, "eps"?, "sigma1"?, "sigma2"?, "seed"},
     "n", "l_bins", "surv_gain", "transform_input_gain"}

All keys are required unless they have a default; unknown or ill-typed
keys fail with a message naming the key (see README for defaults).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .ambiguity import AmbiguityVariant
from .detection import DEFAULT_SEEDS, default_table_rows, run_table
from .operator import ContractError, DomainError, OpCountReport
from .radar import SchemaError, load_scenario, reseed_scenario, scenario_hash
from .render import line_svg
from .transforms import (
    dft_exact,
    dft_complex_muls,
    fft_exact,
    fft_complex_muls,
    ndft,
    ndft_complex_ops,
    nfft,
    nfft_butterflies,
    nfft_complex_ops,
    unit_tone,
)

__all__ = ["main"]

_TRANSFORMS = {
    "dft": dft_exact,
    "fft": fft_exact,
    "ndft": ndft,
    "nfft": nfft,
}


def _atomic_write(path: str, data: bytes) -> None:
    tmp = path + ".tmp"
    try:
        with open(tmp, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def _write_csv(path: str, header: list[str], rows, manifest_name: str) -> None:
    buf = io.StringIO()
    buf.write(f"# manifest={manifest_name}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    _atomic_write(path, buf.getvalue().encode())


def _write_manifest(prefix: str, command: str, args_desc: dict,
                    counts: OpCountReport | None = None) -> str:
    path = prefix + ".manifest.json"
    doc = {
        "tool": f"signadd {__version__}",
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "args": args_desc,
        "args_sha256": hashlib.sha256(
            json.dumps(args_desc, sort_keys=True).encode()).hexdigest(),
    }
    if counts is not None:
        doc["op_counts"] = {
            "sign_ops": counts.sign_ops,
            "abs_ops": counts.abs_ops,
            "add_ops": counts.add_ops,
            "complex_mf_ops": counts.complex_mf_ops,
            "complex_mul_ops": counts.complex_mul_ops,
        }
    _atomic_write(path, (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode())
    return os.path.basename(path)


def _read_signal_csv(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows or [c.strip() for c in rows[0][:2]] != ["re", "im"]:
        raise SchemaError(f"signal file {path} must have a 're,im' header row")
    try:
        vals = [complex(float(r[0]), float(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"signal file {path}: bad sample row ({exc})") from exc
    if not vals:
        raise SchemaError(f"signal file {path} has no samples")
    return np.asarray(vals, dtype=complex)


def _cmd_transform(args) -> int:
    if (args.tone is None) == (args.input is None):
        raise ContractError("transform: give exactly one of --tone or --input")
    if args.tone is not None:
        if args.n is None:
            raise ContractError("transform: --tone requires --n")
        x = unit_tone(args.tone, args.n)
    else:
        x = _read_signal_csv(args.input)
        if args.n is not None and args.n != x.size:
            raise ContractError(
                f"transform: --n {args.n} does not match input length {x.size}")
    spectrum = _TRANSFORMS[args.kind](x)
    manifest = _write_manifest(
        args.out, "transform",
        {"kind": args.kind, "n": int(x.size), "tone": args.tone,
         "input": args.input},
        spectrum.op_counts)
    mag = spectrum.magnitude()
    _write_csv(
        args.out + ".spectrum.csv",
        ["k", "re", "im", "magnitude"],
        [(k, float(b.real), float(b.imag), float(m))
         for k, (b, m) in enumerate(zip(spectrum.bins, mag))],
        manifest)
    if args.svg:
        svg = line_svg(np.arange(x.size), mag,
                       f"{args.kind} magnitude, N={x.size}", "bin k",
                       "|X[k]|", manifest)
        _atomic_write(args.out + ".spectrum.svg", svg.encode())
    return 0


def _cmd_ambiguity(args) -> int:
    from .detection import surface_for_scenario

    scn = load_scenario(args.scenario)
    if args.seed is not None:
        scn = reseed_scenario(scn, args.seed)
    conjugate = args.conjugate_ref == "on"
    surface = surface_for_scenario(scn, args.variant, conjugate_ref=conjugate)
    manifest = _write_manifest(
        args.out, "ambiguity",
        {"scenario_sha256": scenario_hash(scn), "variant": args.variant,
         "seed": args.seed, "conjugate_ref": args.conjugate_ref},
        surface.op_counts)

    db = surface.magnitude_db()
    _write_csv(
        args.out + ".surface.csv",
        ["l", "p", "magnitude_db"],
        ((l, p, float(db[l, p]))
         for l in range(surface.l_bins) for p in range(surface.n)),
        manifest)

    ls, range_km, row_db = surface.range_cut()
    _write_csv(
        args.out + ".range_cut.csv",
        ["l", "bistatic_range_km", "magnitude_db"],
        [(int(l), float(r), float(v)) for l, r, v in zip(ls, range_km, row_db)],
        manifest)

    freqs, col_db = surface.doppler_cut()
    _write_csv(
        args.out + ".doppler_cut.csv",
        ["doppler_hz", "magnitude_db"],
        [(float(f), float(v)) for f, v in zip(freqs, col_db)],
        manifest)

    if args.svg:
        _atomic_write(args.out + ".range_cut.svg",
                      line_svg(range_km, row_db,
                               f"range cut ({args.variant})",
                               "bistatic range [km]", "level [dB]",
                               manifest).encode())
        _atomic_write(args.out + ".doppler_cut.svg",
                      line_svg(freqs, col_db,
                               f"Doppler cut ({args.variant})",
                               "Doppler [Hz]", "level [dB]",
                               manifest).encode())
    return 0


def _load_table_set(path: str) -> list:
    from dataclasses import replace

    from .radar import NoiseModel, scenario_from_dict

    if path == "default":
        return default_table_rows()
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    for key in ("environments", "noises", "variants"):
        if key not in doc:
            raise SchemaError(f"missing required key '{key}' in table set")
    rows = []
    for variant in doc["variants"]:
        AmbiguityVariant(variant)
        for env in doc["environments"]:
            if "name" not in env or "scenario" not in env:
                raise SchemaError("each environment needs 'name' and 'scenario'")
            base = scenario_from_dict(env["scenario"])
            for noise_doc in doc["noises"]:
                noise_kwargs = dict(noise_doc)
                kind = noise_kwargs.pop("kind", "none")
                noise = NoiseModel(kind=kind, **noise_kwargs)
                rows.append((env["name"], replace(base, noise=noise), variant))
    return rows


def _cmd_table(args) -> int:
    seeds = args.seeds if args.seeds is not None else list(DEFAULT_SEEDS)
    if args.trials is not None:
        if args.trials < 1:
            raise ContractError("table: --trials must be >= 1")
        if args.trials > len(seeds):
            raise ContractError(
                f"table: --trials {args.trials} exceeds the {len(seeds)} seeds given")
        seeds = seeds[: args.trials]
    rows = _load_table_set(args.set)
    results = run_table(rows, seeds=seeds,
                        conjugate_ref=args.conjugate_ref == "on")
    manifest = _write_manifest(
        args.out, "table",
        {"set": args.set, "seeds": list(seeds), "rows": len(results)})
    _write_csv(
        args.out + ".table.csv",
        ["environment", "variant", "noise", "performance",
         "sidelobe_floor_db", "trials", "seeds"],
        [(r.environment, r.variant, r.noise, r.performance,
          float(r.sidelobe_floor_db), r.trials,
          " ".join(str(s) for s in r.seeds)) for r in results],
        manifest)
    return 0


def _cmd_opcount(args) -> int:
    rows = []
    for n in args.n_list:
        tone = unit_tone(min(1, n - 1), n)
        for kind, fn, analytic_mf, analytic_mul in (
            ("ndft", ndft, ndft_complex_ops(n), 0),
            ("nfft", nfft, nfft_complex_ops(n), 0),
            ("fft", fft_exact, 0, fft_complex_muls(n)),
            ("dft", dft_exact, 0, dft_complex_muls(n)),
        ):
            c = fn(tone).op_counts
            rows.append((
                n, kind,
                c.complex_mf_ops, analytic_mf,
                c.sign_ops, 4 * analytic_mf,
                c.abs_ops, 8 * analytic_mf,
                c.add_ops, 6 * analytic_mf,
                c.complex_mul_ops, analytic_mul,
                "yes" if (c.complex_mf_ops == analytic_mf
                          and c.sign_ops == 4 * analytic_mf
                          and c.abs_ops == 8 * analytic_mf
                          and c.add_ops == 6 * analytic_mf
                          and c.complex_mul_ops == analytic_mul) else "no",
            ))
    manifest = _write_manifest(args.out, "opcount", {"n_list": args.n_list})
    _write_csv(
        args.out + ".opcount.csv",
        ["n", "transform",
         "complex_mf_measured", "complex_mf_analytic",
         "sign_measured", "sign_analytic",
         "abs_measured", "abs_analytic",
         "add_measured", "add_analytic",
         "complex_mul_measured", "complex_mul_analytic",
         "matches"],
        rows, manifest)
    print(f"butterfly counts: " + ", ".join(
        f"N={n}: {nfft_butterflies(n)}" for n in args.n_list))
    return 0


def _seed_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from exc


def _n_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signadd",
        description="Multiplication-free transforms and passive-radar "
                    "ambiguity processing.")
    parser.add_argument("--version", action="version",
                        version=f"signadd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="spectrum of a tone or CSV signal")
    p.add_argument("--kind", required=True, choices=sorted(_TRANSFORMS))
    p.add_argument("--tone", type=int, help="built-in tone exp(2j*pi*K0*n/N)")
    p.add_argument("--n", type=int, help="transform size for --tone")
    p.add_argument("--input", help="CSV signal file with re,im columns")
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("ambiguity", help="range-Doppler surface for a scenario")
    p.add_argument("--scenario", required=True, help="scenario JSON path")
    p.add_argument("--variant", required=True,
                   choices=[v.value for v in AmbiguityVariant])
    p.add_argument("--seed", type=int, help="reseed waveform+noise for a trial")
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--conjugate-ref", choices=["on", "off"], default="on")
    p.set_defaults(func=_cmd_ambiguity)

    p = sub.add_parser("table", help="detection summary over a scenario set")
    p.add_argument("--set", default="default",
                   help="table-set JSON path, or 'default'")
    p.add_argument("--trials", type=int, help="use the first N seeds")
    p.add_argument("--seeds", type=_seed_list, help="comma-separated seed list")
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--conjugate-ref", choices=["on", "off"], default="on")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("opcount", help="measured vs analytic operation counts")
    p.add_argument("--n-list", type=_n_list, default=[2, 4, 8, 16, 32, 64],
                   help="comma-separated transform sizes (powers of two)")
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=_cmd_opcount)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContractError, DomainError, SchemaError, OSError) as exc:
        print(f"signadd {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
