"""Built-in example spaces shipped as data files."""

from __future__ import annotations

import json
from importlib import resources

from . import space as space_mod

NAMES = ("linf2", "linf3", "l1_2", "l1_3", "hexagon", "euclidean2d", "theta_n")


def corpus_path(name):
    if name not in NAMES:
        raise KeyError(f"unknown corpus space {name!r}; known: {', '.join(NAMES)}")
    return resources.files("uembed.data").joinpath(f"{name}.json")


def load_corpus_dict(name):
    with corpus_path(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


def load_space(name):
    return space_mod.space_from_json_dict(load_corpus_dict(name))


def describe():
    out = []
    for name in NAMES:
        data = load_corpus_dict(name)
        out.append(
            {
                "name": name,
                "representation": data.get("representation", "polyhedral"),
                "dim": data.get("dim"),
                "note": data.get("note", ""),
            }
        )
    return out
