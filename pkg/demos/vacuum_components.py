"""Why diagrams with components off the strands are left out by default.

Allowing them adds classes to the cohomology of D that the configuration
space does not have, and bar cohomology stops being concentrated in
defect 0.  Without them both agree with the configuration space.
"""

from diagcomplex.arnold import poincare_dims
from diagcomplex.braid import D_cohomology_dim, bar_cohomology_dim
from diagcomplex.diagram import Parity

m, n = 2, 3
p = Parity.of(n)
for vacuum in (False, True):
    by_degree = {}
    for r in range(0, 4):
        for s in range(-r - 1, r):
            dim = D_cohomology_dim(m, r, s, p, allow_vacuum=vacuum)
            if dim:
                deg = (n - 2) * r + s + 1
                by_degree[deg] = by_degree.get(deg, 0) + dim
    bar = {(r, s): bar_cohomology_dim(m, r, s, p, allow_vacuum=vacuum)
           for r in (1, 2) for s in range(-2 * r, r)}
    print(f"allow_vacuum={vacuum}")
    print(f"  cohomology of D by degree: {dict(sorted(by_degree.items()))}")
    print(f"  nonzero bar cohomology (r, s): {({k: v for k, v in bar.items() if v})}")
print("expected degrees:", {d: c for d, c in enumerate(poincare_dims(m, n)) if c})
