"""
Weighted graph sparsity models
==============================

Build the construction graph for a small parameter set, check the
requirements, and count the supports it admits.
"""

import math

from csslb import (WgmModel, WgmParams, build_construction_graph, enumerate_supports,
                   log_cardinality_lower_bound, min_weight_forest, validate_requirements, weight_degree)

p = WgmParams(d=6, s=4, g=2, B=2, rho=2)
print(validate_requirements(p).to_dict())

# two triangles, one per group, every edge of weight 1
G = build_construction_graph(p)
print(G.sorted_edges(), "weight degree", weight_degree(G))

# each admissible support needs two trees that together cover it within budget B
forest, w = min_weight_forest(G, (1, 2, 4, 5), g=2)
print("forest", forest.edges, "weight", w)
print("(1,2,3,4) admissible?", min_weight_forest(G, (1, 2, 3, 4), g=2) is not None)

model = WgmModel.from_params(p)
supports = enumerate_supports(model)
print(len(supports), "supports:", supports)

# the counting bound is tight on this instance
floor = math.exp(log_cardinality_lower_bound(model) - p.s * math.log(2))
print("support-count floor", round(floor, 9))

# a larger instance: 3003 candidate sets, 243 admissible
big = WgmModel.from_params(WgmParams(d=15, s=10, g=5, B=5, rho=2))
print(len(enumerate_supports(big)), "supports; log bound",
      log_cardinality_lower_bound(big), "=", math.log(248832))

# parameters that break R1 are reported rather than raised
print(validate_requirements(WgmParams(d=8, s=4, g=2, B=4, rho=2)).reasons)
