"""Built-in seeds and quivers, plus loading of seed/quiver files by name or path."""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .quiver import Quiver, parse_quiver, quiver_from_seed, quiver_to_seed, render_quiver
from .seed import ParseError, Seed, parse_seed, render_seed
from .semifield import parse_monomial

Obj = Union[Seed, Quiver]

READINGS = ("single", "double")

# Mutable vertices 1..6 in the usual grid labelling of the mutable part;
# 6 -> 3 is the arrow whose multiplicity the drawing leaves ambiguous.
_CG3_MUTABLE = [
    (2, 1), (2, 3), (3, 5), (5, 6), (5, 2), (3, 4), (4, 6), (1, 6), (2, 4), (4, 5),
]
# Frozen vertices z1, z2, z3 sit at grid positions (1,3), (3,3), (1,2).
_CG3_FROZEN = [(1, "z3"), ("z3", 2), (3, "z3"), (4, "z1"), ("z1", 3), (6, "z2"), ("z2", 1)]


def _cg3(reading: str, frozen: bool) -> Quiver:
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    mult63 = 1 if reading == "single" else 2
    arrows = [(a - 1, b - 1, 1) for a, b in _CG3_MUTABLE] + [(5, 2, mult63)]
    if not frozen:
        return Quiver(6, 0, arrows)

    def vid(v: int | str) -> int:
        return 6 + int(v[1:]) - 1 if isinstance(v, str) else v - 1

    arrows += [(vid(a), vid(b), 1) for a, b in _CG3_FROZEN]
    return Quiver(6, 3, arrows)


def fig1_seed() -> Seed:
    y = (parse_monomial("z1*z2^-1", 2), parse_monomial("z2^-1", 2))
    return Seed.initial(((0, -2), (2, 0)), y, 2)


def fig2_quiver() -> Quiver:
    # mutable 1..4 clockwise from the top right; frozen z1, z2, z3 are the
    # boxes at the lower right, lower left and upper left
    mutable = [(1, 2), (3, 2), (1, 4), (3, 4), (1, 3)]
    frozen = [(1, 1), (2, 1), (3, 2), (4, 2), (4, 3), (1, 3)]
    arrows = [(a - 1, b - 1, 1) for a, b in mutable]
    arrows += [(a - 1, 4 + z - 1, 1) for a, z in frozen]
    return Quiver(4, 3, arrows)


def builtin(name: str, reading: str = "single") -> Obj:
    """Look up a built-in example; ``reading`` applies to ``cg3_mutable``."""
    if name == "fig1":
        return fig1_seed()
    if name == "fig2":
        return fig2_quiver()
    if name == "cg3_single":
        return _cg3("single", frozen=True)
    if name == "cg3_double":
        return _cg3("double", frozen=True)
    if name == "cg3_mutable":
        return _cg3(reading, frozen=False)
    if name == "a2":
        return Quiver(2, 0, [(0, 1, 1)])
    if name == "a3":
        return Quiver(3, 0, [(1, 0, 1), (2, 1, 1)])
    if name == "markov":
        return Quiver(3, 0, [(0, 1, 2), (1, 2, 2), (2, 0, 2)])
    raise KeyError(name)


BUILTINS = ("fig1", "fig2", "cg3_single", "cg3_double", "cg3_mutable", "a2", "a3", "markov")


def render(obj: Obj) -> str:
    return render_seed(obj) if isinstance(obj, Seed) else render_quiver(obj)


def parse(text: str, kind: str | None = None) -> Obj:
    """Parse a seed (``kind='seed'``) or quiver (``kind='quiver'``) file.

    With no ``kind`` the seed format is tried first: a quiver file never
    parses as a seed because its arrow lines are not monomials.
    """
    if kind == "seed":
        return parse_seed(text)
    if kind == "quiver":
        return parse_quiver(text)
    try:
        return parse_seed(text)
    except ParseError:
        return parse_quiver(text)


def load(source: str, reading: str = "single") -> Obj:
    if source in BUILTINS:
        return builtin(source, reading)
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"{source!r} is neither a built-in ({', '.join(BUILTINS)}) nor a file")
    kind = {".seed": "seed", ".quiver": "quiver"}.get(path.suffix)
    return parse(path.read_text(encoding="utf-8"), kind)


def as_quiver(obj: Obj) -> Quiver:
    return obj if isinstance(obj, Quiver) else quiver_from_seed(obj)


def as_seed(obj: Obj) -> Seed:
    return obj if isinstance(obj, Seed) else quiver_to_seed(obj)
