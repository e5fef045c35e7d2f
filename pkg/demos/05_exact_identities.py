# Exact rational checks of the double-sum rearrangements used when the
# cumulative curve is derived by swapping summation order, plus the
# index-shift rule and the one case where it silently breaks.

import random
from fractions import Fraction

from backlog_lab.identities import (
    check_identity_a1,
    check_identity_a2,
    check_identity_a3,
    check_index_shift,
    power_summand,
    random_table,
    table_summand,
)

print("Triangle rearrangement on f(j) = j, n = 5")
f = table_summand([Fraction(j) for j in range(6)])
report = check_identity_a1(5, f)
print(f"  lhs {report.lhs} = rhs {report.rhs}  equal: {report.equal}")

print()
print("All three families on a random rational table, every n up to 12")
table = random_table(random.Random(42), 12)
for check in (check_identity_a1, check_identity_a2, check_identity_a3):
    ok = all(check(n, table).equal for n in range(1, 13))
    name = check(1, table).family
    print(f"  {name}: {'exact at every n' if ok else 'FAILED'}")

print()
print("Geometric summand f(j) = (2/3)^j stays exact too (n = 10)")
geo = power_summand(Fraction(2, 3))
r = check_identity_a1(10, geo)
print(f"  lhs = {r.lhs}")
print(f"  rhs = {r.rhs}")

print()
print("Index shift: sum_{j=a}^{b} f(j) = sum_{j=a+k}^{b+k} f(j-k)")
r = check_index_shift(2, 6, 3, power_summand(Fraction(1, 2)))
print(f"  shift by +3: lhs {r.lhs} = rhs {r.rhs}, equal {r.equal}")

# Shifting down past zero clips the lower limit, and the identity is
# simply false there. The checker reports that rather than hiding it.
r = check_index_shift(0, 2, -1, table_summand([Fraction(1)] * 8))
print(f"  shift by -1 from j=0: lhs {r.lhs} vs rhs {r.rhs}, equal {r.equal}")
print(f"    detail: {r.detail}")
