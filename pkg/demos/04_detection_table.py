"""A reduced detection benchmark table.

Runs the three shipped environments under two noise cases for both the
exact and the fully sign-additive surface, two trial seeds each (the full
24-row matrix with ten seeds is `signadd table --set default`).
"""

from dataclasses import replace

from signadd import NoiseKind, NoiseModel, run_table
from signadd.radar import standard_environments

noises = [
    NoiseModel(kind=NoiseKind.AWGN, snr_db=3.0),
    NoiseModel(kind=NoiseKind.EPS_CONTAMINATED, eps=0.9, sigma1=0.25, sigma2=10.0),
]
rows = []
for variant in ("eq12a", "eq11"):
    for name, factory in standard_environments().items():
        for noise in noises:
            rows.append((name, replace(factory(), noise=noise), variant))

results = run_table(rows, seeds=[0, 1])

print(f"{'environment':12s} {'variant':7s} {'noise':26s} "
      f"{'performance':14s} {'floor dB':>9s}")
for r in results:
    print(f"{r.environment:12s} {r.variant:7s} {r.noise:26s} "
          f"{r.performance:14s} {r.sidelobe_floor_db:9.2f}")

print("\nnotes: 'partial' rows under the sign-additive variant are its")
print("structurally weaker zero-Doppler response; the exact variant's")
print("lower (better) floor under white noise matches the expected ordering.")
