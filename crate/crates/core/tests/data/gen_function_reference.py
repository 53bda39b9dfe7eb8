"""Reference values for phi, f, g, h1, h2, h3 at 50 significant digits.

Inputs are random doubles written with repr, so they parse back exactly;
mpmath evaluates the formulas on those exact inputs.

    python3 gen_function_reference.py > function_reference.csv
"""
import random

from mpmath import mp, mpf, log

mp.dps = 50
rng = random.Random(20240917)
POINTS = 1000


def phi(y):
    return (1 + y) * log(1 + y) - y


def loguniform(lo, hi):
    return 10 ** rng.uniform(mp.log10(lo), mp.log10(hi))


rows = []
for _ in range(POINTS):
    y = float(loguniform(1e-3, 50.0))
    rows.append(("phi", y, 0.0, 0.0, phi(mpf(y))))
for _ in range(POINTS):
    y = rng.uniform(3.95, 20.0)
    x = rng.uniform(0.01, y / 3)
    z = rng.uniform(1.999, 20.0)
    X, Y, Z = mpf(x), mpf(y), mpf(z)
    rows.append(("f", x, y, z, X * Y / 2 * phi(Z / X) - (log(Y / X) + 1)))
for _ in range(POINTS):
    x = rng.uniform(0.05, 20.0)
    z = rng.uniform(0.5, 20.0)
    X, Z = mpf(x), mpf(z)
    rows.append(("g", x, z, 0.0, X * X / 2 * phi(Z / X)))
for _ in range(POINTS):
    x = rng.uniform(0.05, 20.0)
    z = rng.uniform(0.5, 20.0)
    X, Z = mpf(x), mpf(z)
    rows.append(("h1", x, z, 0.0, X * (log(1 + Z / X) - Z / X)))
for _ in range(POINTS):
    y = rng.uniform(0.5, 20.0)
    z = rng.uniform(0.5, 20.0)
    Y, Z = mpf(y), mpf(z)
    rows.append(("h2", y, z, 0.0, Y * Y * (log(1 + 3 * Z / Y) - 3 * Z / Y)))
for _ in range(POINTS):
    t = float(loguniform(1e-3, 20.0))
    rows.append(("h3", t, 0.0, 0.0, log(1 + mpf(t)) - t))

print("function,a,b,c,value")
for name, a, b, c, v in rows:
    print(f"{name},{a!r},{b!r},{c!r},{mp.nstr(v, 30)}")
