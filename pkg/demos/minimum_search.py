"""Find the minimum symmetrizer variance three ways.

Classical: an exact LP over a gridded law. Free and Boolean: a penalized
multi-start Nelder-Mead search over discrete measures, which should land on
the value p with the measure concentrating at the equality case.
"""

import symvar as sv

p = 0.3
lp = sv.classical_min_variance(p, sv.GridSpec(-2.0, 1.0, 0.25))
print(f"classical LP: min Var(Y) = {lp.objective:.9f} (pq = {p * (1 - p)})")
print(f"  optimal measure: {lp.measure.atoms}")

cfg = sv.SearchConfig(restarts=8, seed=42)
for kind in ("free", "boolean"):
    r = sv.nc_min_variance(p, kind, cfg)
    print(f"{kind}: min phi(y^2) = {r.objective:.9f} "
          f"(residual {r.residual:.2e}, status {r.status})")
    print(f"  measure: {r.measure.atoms}")
