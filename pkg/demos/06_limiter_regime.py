"""Where the sign-additive pipeline earns its keep: heavy-tailed noise.

The complex sign-additive product adds the operand magnitudes, so when the
input sits well below the unit magnitude of the transform's twiddle
factors, every sample contributes ~1 regardless of how large an outlier it
rides on: the pipeline degenerates into a hard-limiting (sign-only)
correlator, the classic robust detector.  Exact correlation has no such
protection; its quadratic accumulation hands the surface to the outliers.

This script sweeps the outlier strength at that operating point (gains
used as attenuators) and shows the exact surface collapsing while the
sign-additive one keeps reporting the moving targets.
"""

from dataclasses import replace

from signadd import NoiseKind, NoiseModel, run_scenario, two_targets_one_clutter

print(f"{'sigma2':>7s}   {'exact (eq11)':24s} {'sign-additive (eq12a)':24s}")
for sigma2 in (10.0, 50.0, 100.0, 200.0):
    noise = NoiseModel(kind=NoiseKind.EPS_CONTAMINATED, eps=0.9,
                       sigma1=0.25, sigma2=sigma2)
    scn = replace(two_targets_one_clutter(noise=noise),
                  surv_gain=1.0 / 64.0, transform_input_gain=1.0 / 16.0)
    r11 = run_scenario(scn, "eq11", seed=0)
    r12 = run_scenario(scn, "eq12a", seed=0)

    def fmt(r):
        marks = "".join("x" if s == "masked" else "o" for s in r.statuses)
        return f"{r.overall:13s} [{marks}]"

    print(f"{sigma2:7.0f}   {fmt(r11):24s} {fmt(r12):24s}")

print("\nlegend: o detected / x masked, obstacle order = target1 target2 clutter")
print("at sigma2 >= 100 the exact correlator is blind while the sign-additive")
print("surface still carries both moving targets.")
