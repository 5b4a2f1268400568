"""Shipped example data, expanded to concrete datum dictionaries before any
computation runs."""

from __future__ import annotations


PRESETS: dict[str, dict] = {
    # rank-1 torus with the inversion action, untwisted: the Iwahori-type
    # coefficient datum of the split rank-1 group
    "sl2-iwahori": {
        "rank": 1,
        "generators": [{"matrix": [[-1]], "translation": ["0"]}],
        "cocycle": {"type": "trivial"},
        "variant": "smooth-compact",
    },
    # same coefficient datum attached to the order-2 ramified character
    "sl2-ramified-quadratic": {
        "rank": 1,
        "generators": [{"matrix": [[-1]], "translation": ["0"]}],
        "cocycle": {"type": "trivial"},
        "variant": "smooth-compact",
    },
    # a character in general position: trivial acting group, plain circle
    "sl2-generic-chi": {
        "rank": 1,
        "generators": [],
        "cocycle": {"type": "trivial"},
        "variant": "smooth-compact",
    },
    # (Z/2)^2 acting by coordinate-wise inversion on the 2-torus with the
    # nontrivial bilinear cocycle: the twisted ground-truth datum
    "quaternion-2torus": {
        "rank": 2,
        "generators": [
            {"matrix": [[-1, 0], [0, 1]], "translation": ["0", "0"]},
            {"matrix": [[1, 0], [0, -1]], "translation": ["0", "0"]},
        ],
        "cocycle": {"type": "bilinear", "matrix": [[0, 0], [1, 0]], "mod": 2},
        "variant": "smooth-compact",
    },
    # rank-1 graded Hecke data (coroot of pairing 2), k configurable via --k
    "hecke-rank1": {
        "rank": 1,
        "generators": [{"matrix": [[-1]], "translation": ["0"]}],
        "cocycle": {"type": "trivial"},
        "variant": "algebraic",
        "hecke": {
            "simple_roots": [["1"]],
            "coroots": [["2"]],
            "k": ["1"],
        },
    },
}


def preset_names() -> list[str]:
    return sorted(PRESETS)


def preset_data(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return PRESETS[name]
