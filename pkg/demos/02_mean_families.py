"""The mean operator and its three families.

Picking a starting vertex (the weights) and a direction (the target)
yields a whole family of means: vertex (1,1) gives the ordinary mean,
vertex (1,x) toward x weights x by itself, and vertex (1,w) toward x
weights x by any other measure w.  For data concentrated away from
zero, all of them land close together.
"""

import numpy as np

from latreg import (Dataset, Direction, MeanRequest, UNITY, mean_operator,
                    self_weighting_mean, simulate_convergence, standard_mean,
                    weighted_mean)

data = Dataset({"x": [1.0, 2.0, 3.0], "y": [2.0, 3.0, 5.0]})

print("standard mean of x      :", standard_mean(data, "x"))        # 2
print("self-weighting mean of x:", self_weighting_mean(data, "x"))  # 14/6
print("x weighted by y         :", weighted_mean(data, "x", "y"))   # 23/10

# The general operator accepts any vertex, including level-two ones.
req = MeanRequest(vertex=(Direction("x"), Direction("y")), target=Direction("x"))
print("x from vertex (x,y)     :", mean_operator(data, req))        # 59/23

# How far can random weights pull the estimate?  Draw x ~ Normal(100, 1)
# and independent uniform weights, many times over.
stats = simulate_convergence(seed=1, n=1000, mu=100.0, sigma=1.0, trials=100)
print("\nrandom-weight deviation, max over 100 trials :",
      round(stats["random_weight_dev_max"], 5))
print("self-weighting deviation, max over 100 trials:",
      round(stats["self_weight_dev_max"], 5))

# The deviation scale for uniform weights is sigma * sqrt(sum w^2) / sum w,
# about sigma * sqrt(4 / (3 n)) here, i.e. ~0.037 at n=1000.
print("predicted scale:", round(1.0 * np.sqrt(4.0 / (3.0 * 1000.0)), 5))
