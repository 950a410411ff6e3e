"""Walk through the vertex lattice and the determinant family.

Every sum this package ever needs is a vertex V(a, b): the sum over
rows of the product of two directions.  Three measures {1, x, y} give
six vertices, and signed products of vertices give the variances and
covariances that drive every fit.
"""

import numpy as np

from latreg import (Dataset, DeterminantKind, Direction, UNITY, build_lattice,
                    det2, join, measure_catalog, scaled_sigma)

x = Direction("x")
y = Direction("y")

# A tiny dataset that is easy to check by hand.
data = Dataset({"x": [1.0, 2.0, 3.0], "y": [2.0, 3.0, 5.0]})
lat = build_lattice(data, [UNITY, x, y])

# Level 0 holds the sample size, level 1 the plain sums, level 2 the
# second-order sums.
print("V(1,1) =", lat.vertex(UNITY, UNITY))   # n = 3
print("V(1,x) =", lat.vertex(UNITY, x))       # sum x  = 6
print("V(1,y) =", lat.vertex(UNITY, y))       # sum y  = 10
print("V(x,x) =", lat.vertex(x, x))           # sum x2 = 14
print("V(x,y) =", lat.vertex(x, y))           # sum xy = 23
print("V(y,y) =", lat.vertex(y, y))           # sum y2 = 38

# A join is just a product of vertex values.
print("\njoin[(1,1),(x,x)] =", join(lat, [(UNITY, UNITY), (x, x)]))  # 3*14

# Subtracting the crossed join gives a determinant.  det2(1,1,x,x) is
# n*sum(x^2) - sum(x)^2, the n^2-scaled population variance of x.
print("\ndelta_11xx =", det2(lat, UNITY, UNITY, x, x))   # 6
print("delta_11xy =", det2(lat, UNITY, UNITY, x, y))     # 9
print("delta_xxyy =", det2(lat, x, x, y, y))             # 3 (base variance)

# Dividing by n^2 recovers the familiar population moments.
print("\nsigma_x^2 =", scaled_sigma(lat, DeterminantKind.variance(x)))
print("numpy var =", np.var(data.column("x")))
print("sigma_xy  =", scaled_sigma(lat, DeterminantKind.covariance(x, y)))
print("numpy cov =", np.cov(data.column("x"), data.column("y"), bias=True)[0, 1])

# measure_catalog collects the whole family under subscript-style names.
print("\nfull catalog:")
for name, value in measure_catalog(data, ["x", "y"]).items():
    print(f"  {name:12s} {value}")
