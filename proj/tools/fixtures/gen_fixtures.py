#!/usr/bin/env python3
"""Regenerates the topology fixtures under fixtures/.

tunnel_topology.csv: 40 nodes on two rows 8 m apart in a road tunnel, sink at
the entrance. The first 20 nodes are packed 3 m apart near the entrance, the
rest 7.2 m apart; with a 15 m unit-disk range the shortest-hop tree is 15 hops
deep.

intel_topology.csv / intel_link_quality.csv: 54 motes plus a gateway in a
40 x 31 m lab. Link delivery probability falls off logistically with distance,
with a fixed-seed perturbation; links below 0.1 are dropped.

Deterministic: rerunning produces identical files.
"""
import math
import random
import sys
from pathlib import Path

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "fixtures"


def tunnel():
    lines = ["# Road tunnel layout: two rows, sink at the entrance (x=0).",
             "# sink=0", "# comm_range_m=15", "# interference_range_m=30", "node_id,x,y", "0,0,4"]
    x = 0.0
    for k in range(1, 41):
        x += 3.0 if k <= 20 else 7.2
        lines.append(f"{k},{round(x, 2):g},{0 if k % 2 else 8}")
    (OUT / "tunnel_topology.csv").write_text("\n".join(lines) + "\n")


SINK_X = 26.0


def intel():
    rng = random.Random(2004)
    pts = {0: (SINK_X, 15.5)}
    # Motes along the walls and on two interior desk rows, like the lab plan.
    ring = []
    for i in range(14):
        ring.append((1.5 + i * 37.0 / 13, 1.5))
        ring.append((1.5 + i * 37.0 / 13, 29.5))
    for i in range(6):
        ring.append((1.5, 4.5 + i * 22.0 / 5))
        ring.append((38.5, 4.5 + i * 22.0 / 5))
    for i in range(7):
        ring.append((6.0 + i * 28.0 / 6, 10.5))
    for i in range(7):
        ring.append((6.0 + i * 28.0 / 6, 20.5))
    for k, (x, y) in enumerate(ring[:54], start=1):
        pts[k] = (round(x + rng.uniform(-0.8, 0.8), 2), round(y + rng.uniform(-0.8, 0.8), 2))

    topo = ["# Office lab layout (40 x 31 m), gateway near the centre.",
            "# sink=0", "# comm_range_m=15", "# interference_range_m=30", "node_id,x,y"]
    topo += [f"{k},{x:g},{y:g}" for k, (x, y) in sorted(pts.items())]
    (OUT / "intel_topology.csv").write_text("\n".join(topo) + "\n")

    lq = ["# Link delivery probabilities (symmetric).", "u,v,quality"]
    ids = sorted(pts)
    for i, u in enumerate(ids):
        for v in ids[i + 1:]:
            d = math.dist(pts[u], pts[v])
            q = 1.0 / (1.0 + math.exp((d - 11.0) / 1.6))
            q = min(1.0, q * rng.uniform(0.85, 1.0))
            if q >= 0.1:
                lq.append(f"{u},{v},{q:.3f}")
    (OUT / "intel_link_quality.csv").write_text("\n".join(lq) + "\n")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    tunnel()
    intel()
