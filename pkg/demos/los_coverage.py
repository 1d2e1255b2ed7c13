"""
How far can a drone see into the city?
======================================

LoS probability against horizontal distance for three drone heights over
the urban preset at 28 GHz, then the distance at which the probability
drops below 0.9.
"""

import numpy as np

from a2g_paths import LinkGeometry, preset
from a2g_paths.analysis import mcd, sweep

city = preset("urban")
distances = np.arange(50.0, 801.0, 50.0)

for h_tr in (30, 120, 500):
    # RX sits on a 2 m mast, TX is h_tr above it
    link = LinkGeometry(h_tx=h_tr + 2.0, h_rx=2.0, d_tr=1.0, frequency=28e9)
    table = sweep("distance", distances, link, city)
    curve = " ".join(f"{r.p_los:.2f}" for r in table.rows)
    print(f"h_tr={h_tr:>3} m  P_LoS: {curve}")
    res = mcd("los", 0.9, link, city)
    print(f"           P_LoS >= 0.9 up to {res.distance:.1f} m")

# the curve is flat at 1 until the first building slot appears
print("first building slot at", round(1.0 / city.linear_density, 1), "m")
