#!/usr/bin/env python3
"""Regenerate the synthetic 25-bubble channel configuration.

The published 25-bubble parameter sets live in an external repository, so
this fixture uses a deterministic well-separated layout instead: a 5x5 grid
of centers with a three-value radius pattern, all clearances above the
domain's minimum gap.
"""

import json
import os

GRID = 5
SPACING = 0.3
BASE_RADIUS = 0.08
RADIUS_STEP = 0.015


def circles():
    out = []
    for i in range(GRID):
        for j in range(GRID):
            x = -0.6 + SPACING * i
            y = -0.6 + SPACING * j
            r = BASE_RADIUS + RADIUS_STEP * ((i + j) % 3)
            out.append({"center": [x, y], "radius": r})
    return out


def main():
    config = {
        "name": "channel_twentyfive_bubbles",
        "note": (
            "Synthetic well-separated 25-circle layout (5x5 grid, radius "
            "pattern 0.08/0.095/0.11); the published 25-bubble parameters "
            "live in an external repository and are not reproduced here."
        ),
        "geometry": "channel",
        "circles": circles(),
        "U": 2.0,
        "alpha": [0.15, 0.15],
        "n": 512,
        "outputs": {
            "directory": "out/channel_twentyfive_bubbles",
            "formats": ["csv", "json", "svg"],
        },
        "solver": {"tol": 1e-14, "max_iterations": 100},
    }
    here = os.path.dirname(os.path.abspath(__file__))
    path = os.path.join(here, "..", "configs", "channel_twentyfive_bubbles.json")
    with open(path, "w") as fh:
        json.dump(config, fh, indent=2)
        fh.write("\n")
    print(f"wrote {os.path.normpath(path)}")


if __name__ == "__main__":
    main()
