"""A maximally noncommuting pair: the bicone over a disk.

For (sigma_x, sigma_z) with the normalized 2x2 trace, the scale in R^3
is two cones joined along an equator circle of extreme points.  The
continuum of extreme points is exactly what betrays noncommutativity.
"""

import numpy as np

import specscale as ss
from specscale import fixtures
from specscale.oracle import oracle_support, sample_unit_ball

optuple = fixtures.pauli_pair()

# support values: exact from eigenvalue sums, here along the x1 axis
print("support along +x1:", oracle_support(optuple, [0.0, 1.0, 0.0]))
print("support along -x1:", -ss.support_value(optuple, ss.SpectralPair(0.0, np.array([-1.0, 0.0]))))

# the equator: isotrace slice at level 1/2 is a disk of radius 1/2
sl = ss.isotrace_slice(optuple, 0.5, resolution=360)
radii = np.linalg.norm(sl.points, axis=1)
print("\nslice at level 1/2: radius min/max =", radii.min(), radii.max())

# levels 0 and 1 collapse to the cone apexes
print("slice at level 0:", ss.isotrace_slice(optuple, 0.0).points)
print("slice at level 1:", ss.isotrace_slice(optuple, 1.0).points)

# sampling never exhausts the equator: the extreme point count keeps
# growing with the direction density, and the generators do not commute
verdict = ss.abelian_verdict(optuple, directions=64)
print("\ncloud counts at two densities:", verdict.cloud_counts)
print("abelian (geometric):", verdict.geometric)
print("abelian (algebraic):", verdict.algebraic, "- max commutator", verdict.max_commutator)

# every sampled ball image stays inside the analytic support function
points = sample_unit_ball(optuple, 2000, seed=0)
rng = np.random.default_rng(1)
worst = -np.inf
for _ in range(100):
    u = rng.standard_normal(3)
    u /= np.linalg.norm(u)
    worst = max(worst, np.max(points @ u) - oracle_support(optuple, u))
print("\nmax sampled overshoot of the support function:", worst)
