"""
Checking the closed forms by sampling
=====================================

Two independent estimates of each path probability:

* sampling building heights at the model's own slots, which must match
  the closed form up to Monte Carlo noise;
* a grid city with random offset and bearing, where paths are checked
  geometrically against every footprint the link crosses.
"""

from a2g_paths import LinkGeometry, preset
from a2g_paths.bs import bs_probability
from a2g_paths.gs import gs_probability
from a2g_paths.los import los_probability
from a2g_paths.montecarlo import mc_geometric, mc_model_faithful, z_score

closed = {"los": los_probability, "gs": gs_probability, "bs": bs_probability}
cases = [
    ("los", "urban", LinkGeometry(32.0, 2.0, 200.0, 28e9)),
    ("gs", "urban", LinkGeometry(202.0, 2.0, 300.0, 1.4e9)),
    ("bs", "dense-urban", LinkGeometry(202.0, 2.0, 262.0, 1.4e9)),
]

for path, name, link in cases:
    city = preset(name)
    p = closed[path](link, city)
    model = mc_model_faithful(path, link, city, 100_000, seed=1, workers=4)
    geo = mc_geometric(path, link, city, 500, seed=1, workers=4)
    print(f"{path} {name:<11} d={link.d_tr:5.0f}  closed {p:.4f}"
          f"  sampled {model.p_hat:.4f} (z={z_score(p, model):.2f})"
          f"  grid city {geo.p_hat:.3f} +/- {geo.stderr:.3f}")

# same seed, any number of threads, same answer
runs = {mc_model_faithful("bs", cases[2][2], preset("dense-urban"), 30_000, seed=7, workers=w) for w in (1, 2, 8)}
print("distinct results across thread counts:", len(runs))
