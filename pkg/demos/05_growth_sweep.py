#!/usr/bin/env python3
"""How rate and subpacketization grow as the system scales up.

Fixing alpha = k - m - t pins the uncached fraction above a constant
while k - t grows.  The sweep checks, in exact integer arithmetic, that
the user count stays inside its log band, that R*(m+2) equals K*(1-M/N),
and that subpacketization stays subexponential: log_q F grows like
(log_q K)^2, not like K.

Run: python demos/05_growth_sweep.py
"""

import math

from pgcache import asymptotic_sweep

for alpha in (1, 2):
    report = asymptotic_sweep(q=2, alpha=alpha, kt_values=range(3, 21))
    print(report.to_table().to_text())
    print("all exact checks pass:", report.all_ok)
    last = report.rows[-1]
    print(f"largest system: K={last.users:,} users, "
          f"log2(F)={math.log2(last.subpacketization):.1f}, "
          f"(log2 K)^2={math.log2(last.users) ** 2:.1f}, "
          f"ratio={last.growth_ratio:.3f}")
    print()

print("ratio log2(F) / (log2 K)^2 stays bounded while K grows by ~2^17,")
print("so F is subexponential in K even as the rate tracks K / log2(K).")
