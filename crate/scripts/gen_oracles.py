"""Freeze arbitrary-precision reference values used by the test suites.

Writes CSV fixtures into crates/core/tests/data/. Requires mpmath.
"""
import os
import random
import mpmath as mp

mp.mp.dps = 40
here = os.path.dirname(os.path.abspath(__file__))
data = os.path.join(here, "..", "crates", "core", "tests", "data")
os.makedirs(data, exist_ok=True)


def fmt(v):
    return mp.nstr(v, 25, min_fixed=1, max_fixed=0)


rng = random.Random(20240611)

# Z(t) at random ordinates in [10, 1e5], plus a band around the small/large switch
ts = [rng.uniform(10.0, 1.0e5) for _ in range(100)]
with open(os.path.join(data, "z_random.csv"), "w") as f:
    f.write("t,z\n")
    for t in ts:
        f.write(f"{t!r},{fmt(mp.siegelz(mp.mpf(t)))}\n")

ts = [rng.uniform(0.0, 400.0) for _ in range(60)] + [1.0e6 + rng.uniform(0.0, 1000.0) for _ in range(5)]
with open(os.path.join(data, "z_extra.csv"), "w") as f:
    f.write("t,z\n")
    for t in ts:
        f.write(f"{t!r},{fmt(mp.siegelz(mp.mpf(t)))}\n")

ts = [0.5, 3.0, 9.99, 10.0, 10.01, 50.0, 500.0, 5000.0, 123456.789, 1.0e6]
with open(os.path.join(data, "theta.csv"), "w") as f:
    f.write("t,theta\n")
    for t in ts:
        f.write(f"{t!r},{fmt(mp.siegeltheta(mp.mpf(t)))}\n")

with open(os.path.join(data, "zeros.csv"), "w") as f:
    f.write("index,gamma\n")
    for n in range(1, 31):
        f.write(f"{n},{fmt(mp.im(mp.zetazero(n)))}\n")

with open(os.path.join(data, "constants.csv"), "w") as f:
    f.write("name,value\n")
    f.write(f"zeta_half,{fmt(mp.zeta(mp.mpf(1) / 2))}\n")
    f.write(f"gram0,{fmt(mp.grampoint(0))}\n")
    unit = mp.quad(lambda t: mp.siegelz(t) ** 2, mp.linspace(1000, 1001, 9))
    f.write(f"z2_1000_1001,{fmt(unit)}\n")
