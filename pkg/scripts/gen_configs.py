#!/usr/bin/env python3
"""Write the fixture configurations under configs/.

Circle parameters follow the published two-to-four-bubble examples for the
three geometries; base points are pinned here because results are invariant
to them (only conditioning changes).
"""

import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))
CONFIGS = os.path.join(HERE, "..", "configs")

PI = math.pi
SOLVER = {"tol": 1e-14, "max_iterations": 100}


def cfg(name, geometry, circles, U, alpha, n, scale=None, streamlines=None,
        formats=("csv", "json", "svg"), note=None):
    data = {"name": name}
    if note:
        data["note"] = note
    data.update({
        "geometry": geometry,
        "circles": [{"center": [c[0], c[1]], "radius": r} for c, r in circles],
        "U": U,
        "alpha": [alpha[0], alpha[1]],
        "n": n,
    })
    if scale is not None:
        data["scale"] = {"bubble": scale[0], "area": scale[1]}
    if streamlines is not None:
        data["streamlines"] = streamlines
    data["outputs"] = {"directory": f"out/{name}", "formats": list(formats)}
    data["solver"] = SOLVER
    return name, data


STREAM = {"grid": 300, "count": 24, "margin": 0.02}

FIXTURES = [
    cfg(
        "free_space_two_bubbles",
        "free_space",
        [((0.0, 0.0), 0.4)],
        2.0,
        (0.0, math.sqrt(0.4)),
        512,
        scale=(0, PI),
        streamlines=STREAM,
        note="Two equal-area bubbles; the base point on the imaginary axis "
             "at sqrt(r1) makes the areas match exactly.",
    ),
    cfg(
        "half_plane_one_bubble",
        "half_plane",
        [((0.0, 0.0), 0.5)],
        2.0,
        (-0.75, 0.0),
        512,
        scale=(0, PI),
        note="Concentric annulus preimage: a single bubble above the wall.",
    ),
    cfg(
        "half_plane_two_bubbles",
        "half_plane",
        [((0.0, 0.5009), 0.0558), ((0.0, 0.3277), 0.1003)],
        2.0,
        (-0.5, 0.0),
        512,
        scale=(0, PI),
        streamlines=STREAM,
        note="Pair far from the wall, approximately equal areas.",
    ),
    cfg(
        "half_plane_two_bubbles_near_wall",
        "half_plane",
        [((0.0, -0.5831), 0.1012), ((0.0, -0.8421), 0.1359)],
        2.0,
        (-0.5, 0.0),
        512,
        scale=(0, PI),
        note="Pair close to the wall; boundary proximity distorts the shapes.",
    ),
    cfg(
        "half_plane_two_bubbles_uneven",
        "half_plane",
        [((0.0, -0.86), 0.1188288), ((0.0, -0.62), 0.090724)],
        2.0,
        (-0.5, 0.0),
        512,
        scale=(0, PI),
        note="Stacked pair of unequal circles near the wall.",
    ),
    cfg(
        "half_plane_two_bubbles_mirror",
        "half_plane",
        [((-0.16, -0.81), 0.15), ((0.16, -0.81), 0.15)],
        2.0,
        (-0.5, 0.0),
        512,
        scale=(0, PI),
        note="Left-right mirror pair near the wall; the bubbles share a shape.",
    ),
    cfg(
        "half_plane_two_bubbles_wide",
        "half_plane",
        [((-0.182, 0.2), 0.082), ((0.182, -0.2), 0.082)],
        2.0,
        (-0.5, 0.0),
        512,
        scale=(0, PI),
        note="Antipodal pair (centers at plus/minus (0.182 - 0.2i)).",
    ),
    cfg(
        "channel_two_bubbles",
        "channel",
        [((0.0, 0.03), 0.2), ((0.6, 0.15), 0.25)],
        2.0,
        (-0.5, 0.0),
        512,
        streamlines=STREAM,
    ),
    cfg(
        "channel_three_bubbles",
        "channel",
        [((0.0, 0.0), 0.18), ((0.6, 0.23), 0.22), ((0.2, 0.63), 0.195)],
        2.0,
        (-0.5, 0.0),
        512,
        streamlines=STREAM,
    ),
    cfg(
        "channel_four_bubbles",
        "channel",
        [((0.0, 0.0), 0.19), ((0.6, 0.23), 0.235), ((0.2, 0.63), 0.2),
         ((0.4, -0.25), 0.175)],
        2.0,
        (-0.5, 0.0),
        512,
        streamlines=STREAM,
    ),
    cfg(
        "channel_two_bubbles_symmetric",
        "channel",
        [((0.0, 0.5), 0.35), ((0.0, -0.5), 0.35)],
        2.0,
        (0.0, 0.0),
        512,
        streamlines=STREAM,
        note="Up-down symmetric pair for the conjugation-symmetry checks.",
    ),
]


def main():
    os.makedirs(CONFIGS, exist_ok=True)
    for name, data in FIXTURES:
        path = os.path.join(CONFIGS, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")
        print(f"wrote {os.path.normpath(path)}")
    bench = {
        "name": "bench_free_space_two_bubbles",
        "base": {
            "geometry": "free_space",
            "circles": [{"center": [0.0, 0.0], "radius": 0.4}],
            "U": 2.0,
            "alpha": [0.0, math.sqrt(0.4)],
            "n": 256,
            "outputs": {"directory": "out/bench_free_space_two_bubbles",
                        "formats": ["json"]},
            "solver": SOLVER,
        },
        "n_values": [256, 512, 1024, 2048],
        "repetitions": 3,
    }
    path = os.path.join(CONFIGS, "bench_free_space_two_bubbles.json")
    with open(path, "w") as fh:
        json.dump(bench, fh, indent=2)
        fh.write("\n")
    print(f"wrote {os.path.normpath(path)}")


if __name__ == "__main__":
    main()
