"""Tour of the closed-form expected stock-out curve.

Walks the exact expression over a small parameter grid and prints the
sanity properties you would reach for first: the zero-stock line, the
universal bounds, and the late-horizon asymptote.
"""

import math

from backlog_lab.closed_forms import expected_backlog
from backlog_lab.distributions import ModelParams


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("With no stock, every arrival is short")
params = ModelParams(lam=2.0, production=0)
for t in (0.5, 1.0, 2.0, 4.0):
    print(f"  t={t:4.1f}  E[shortfall] = {expected_backlog(params, t):.6f}"
          f"   (lam*t = {2.0 * t:.6f})")

banner("Stock pushes the curve down but never below max(0, lam*t - P)")
lam = 1.5
for production in (0, 1, 2, 4, 8):
    params = ModelParams(lam, production)
    row = []
    for t in (1.0, 2.0, 5.0):
        v = expected_backlog(params, t)
        lower = max(0.0, lam * t - production)
        assert lower - 1e-12 <= v <= lam * t + 1e-12
        row.append(f"{v:9.5f}")
    print(f"  P={production}: " + "  ".join(row))

banner("Late in the horizon the stock is spent and the slope returns to lam")
params = ModelParams(lam=2.0, production=3)
for t in (5.0, 10.0, 20.0, 40.0):
    v = expected_backlog(params, t)
    print(f"  t={t:5.1f}  value - (lam*t - P) = {v - (2.0 * t - 3):.3e}")

banner("Against the tail-sum definition at one point")
# E[(N - P)^+] computed the slow way, for one modest case.
lam, production, t = 1.0, 3, 2.0
x = lam * t
tail = sum((n - production) * math.exp(-x) * x**n / math.factorial(n)
           for n in range(production + 1, 60))
closed = expected_backlog(ModelParams(lam, production), t)
print(f"  brute tail sum  {tail:.15f}")
print(f"  closed form     {closed:.15f}")
print(f"  difference      {abs(tail - closed):.2e}")
