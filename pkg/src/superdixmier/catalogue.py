"""Built-in example algebras with named functionals."""

import json
from functools import lru_cache
from importlib import resources

from .parsing import algebra_from_data, functional_from_data


def _dir():
    return resources.files("superdixmier").joinpath("data", "catalogue")


def names():
    return sorted(p.name[:-5] for p in _dir().iterdir() if p.name.endswith(".json"))


def raw(name):
    path = _dir().joinpath(name + ".json")
    if not path.is_file():
        raise KeyError("no catalogue entry %r" % name)
    return json.loads(path.read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def load(name):
    """Return (algebra, {functional name: Functional}) for a catalogue entry."""
    data = raw(name)
    alg = algebra_from_data(data)
    lams = {f["name"]: functional_from_data(alg, f) for f in data.get("functionals", [])}
    return alg, lams


def pairs():
    """Every (entry name, functional name) in the catalogue."""
    out = []
    for n in names():
        _, lams = load(n)
        out.extend((n, l) for l in lams)
    return out
