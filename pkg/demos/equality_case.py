"""The equality case y = -e in law, checked exactly in all three frameworks.

For a projection e with trace p, the candidate y distributed as -e makes
e + y symmetric about 0 and attains phi(y^2) = p. Exact rational arithmetic,
so every printed residual is literally zero.
"""

from fractions import Fraction as F

import symvar as sv

for p in (F(1, 10), F(3, 10), F(7, 10)):
    e = sv.bernoulli(p)
    y = sv.negate(e)
    print(f"p = {p}:  phi(y^2) = {sv.moments_of(y, 2).values[1]}")
    for kind in sv.IndependenceKind:
        ms = sv.convolve_moments(sv.moments_of(e, 13), sv.moments_of(y, 13), kind)
        print(f"  {kind.value:9s} odd-moment residual of e+y up to order 13: "
              f"{sv.odd_moment_residual(ms)}")
