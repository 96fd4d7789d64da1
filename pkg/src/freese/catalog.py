"""Named lattices, built deterministically from hard-coded Hasse diagrams.

Glued families (rods, snakes and general glue strings) are chains of
diamonds M3.  Letter ``i`` of a glue string describes how copy ``i+1``
sits on copy ``i``:

* ``R``: the filter {gamma_i, top_i} is identified with the ideal
  {bottom_{i+1}, alpha_{i+1}}  (rods use only this move);
* ``L``: the filter {alpha_i, top_i} is identified with the ideal
  {bottom_{i+1}, gamma_{i+1}}.

Starred (loose) variants keep the two edges apart and join them by
covers instead, as in M3,3*.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError
from .lattice import FiniteLattice

FIXED = ("N5", "M3", "M1", "K", "L14", "M33", "M33*", "D1", "D2")


@dataclass(frozen=True)
class ShapeId:
    tag: str                  # one of FIXED, or "R", "S", "G"
    n: int | None = None
    glue: str | None = None
    starred: bool = False

    def __post_init__(self):
        if self.tag in FIXED:
            return
        if self.tag not in ("R", "S", "G"):
            raise DomainError(f"unknown shape tag {self.tag!r}")
        if self.tag == "G":
            if self.glue is None or set(self.glue) - {"L", "R"}:
                raise DomainError("glue string must consist of L and R")
            object.__setattr__(self, "n", len(self.glue) + 1)
        elif self.n is None or self.n < 1:
            raise DomainError("family index must be at least 1")

    def glue_string(self) -> str:
        if self.tag == "R":
            return "R" * (self.n - 1)
        if self.tag == "S":
            return snake_glue(self.n)
        if self.tag == "G":
            return self.glue
        raise DomainError(f"{self} is not a glued shape")

    def __str__(self):
        if self.tag in FIXED:
            return self.tag
        star = "*" if self.starred else ""
        if self.tag == "G":
            return f"G:{self.glue}{star}"
        return f"{self.tag}{self.n}{star}"


_SHAPE_RE = re.compile(r"^(?:(R|S)(\d+)(\*?)|G:([LR]*)(\*?))$")


def parse_shape(text: str) -> ShapeId:
    s = text.strip()
    if s in FIXED:
        return ShapeId(s)
    m = _SHAPE_RE.match(s)
    if not m:
        raise ParseError(f"unknown shape {text!r}")
    if m.group(1):
        n = int(m.group(2))
        if n < 1:
            raise ParseError("family index must be at least 1")
        return ShapeId(m.group(1), n=n, starred=bool(m.group(3)))
    return ShapeId("G", glue=m.group(4), starred=bool(m.group(5)))


def snake_glue(n: int) -> str:
    """S_{k+1} glues on the right when k is odd and on the left when k is even."""
    return "".join("R" if k % 2 == 1 else "L" for k in range(1, n))


# -- fixed shapes --------------------------------------------------------------

_N5 = (["0", "gamma", "alpha", "beta", "delta"],
       [("0", "gamma"), ("gamma", "alpha"), ("alpha", "delta"), ("0", "beta"), ("beta", "delta")])

_M3 = (["0", "alpha", "beta", "gamma", "1"],
       [("0", "alpha"), ("0", "beta"), ("0", "gamma"),
        ("alpha", "1"), ("beta", "1"), ("gamma", "1")])

# lifted names over A(beta); "gamma_0^gamma_1" is the meet of gamma_0 and gamma_1
_M1 = (["0", "eta_0", "eta_1", "gamma_0^gamma_1", "gamma_0", "gamma_1",
        "alpha_0^alpha_1", "beta_0", "alpha_0", "alpha_1", "delta"],
       [("0", "eta_0"), ("0", "eta_1"), ("0", "gamma_0^gamma_1"),
        ("eta_0", "gamma_0"), ("eta_1", "gamma_1"),
        ("eta_0", "beta_0"), ("eta_1", "beta_0"),
        ("gamma_0^gamma_1", "gamma_0"), ("gamma_0^gamma_1", "gamma_1"),
        ("gamma_0^gamma_1", "alpha_0^alpha_1"),
        ("gamma_0", "alpha_0"), ("gamma_1", "alpha_1"),
        ("alpha_0^alpha_1", "alpha_0"), ("alpha_0^alpha_1", "alpha_1"),
        ("alpha_0", "delta"), ("alpha_1", "delta"), ("beta_0", "delta")])

_K = (["0", "eta_0", "eta_1", "gamma_0^gamma_1", "gamma_0^alpha_1", "alpha_0^gamma_1",
       "theta", "gamma_0", "gamma_1", "alpha_0^alpha_1", "beta_0", "alpha_0", "alpha_1",
       "delta"],
      [("0", "eta_0"), ("0", "eta_1"), ("0", "gamma_0^gamma_1"),
       ("eta_0", "gamma_0"), ("eta_1", "gamma_1"),
       ("eta_0", "beta_0"), ("eta_1", "beta_0"),
       ("gamma_0^gamma_1", "gamma_0^alpha_1"), ("gamma_0^gamma_1", "alpha_0^gamma_1"),
       ("gamma_0^alpha_1", "gamma_0"), ("alpha_0^gamma_1", "gamma_1"),
       ("gamma_0^alpha_1", "theta"), ("alpha_0^gamma_1", "theta"),
       ("theta", "alpha_0^alpha_1"),
       ("gamma_0", "alpha_0"), ("gamma_1", "alpha_1"),
       ("alpha_0^alpha_1", "alpha_0"), ("alpha_0^alpha_1", "alpha_1"),
       ("alpha_0", "delta"), ("alpha_1", "delta"), ("beta_0", "delta")])

# two pentagons glued after duplicating over gamma
_L14 = (["0", "eta_0", "eta_1", "beta_0^beta_1", "gamma_0", "beta_0", "beta_1",
         "alpha_0", "delta"],
        [("0", "eta_0"), ("0", "eta_1"), ("0", "beta_0^beta_1"),
         ("eta_0", "gamma_0"), ("eta_1", "gamma_0"),
         ("eta_0", "beta_0"), ("eta_1", "beta_1"),
         ("beta_0^beta_1", "beta_0"), ("beta_0^beta_1", "beta_1"),
         ("gamma_0", "alpha_0"), ("alpha_0", "delta"),
         ("beta_0", "delta"), ("beta_1", "delta")])

_M33 = (["eta", "alpha_1", "beta_1", "gamma_1", "alpha_2", "beta_2", "gamma_2", "delta"],
        [("eta", "alpha_1"), ("eta", "beta_1"), ("eta", "gamma_1"),
         ("alpha_1", "alpha_2"), ("beta_1", "alpha_2"), ("gamma_1", "alpha_2"),
         ("gamma_1", "beta_2"), ("gamma_1", "gamma_2"),
         ("alpha_2", "delta"), ("beta_2", "delta"), ("gamma_2", "delta")])

_M33_STAR = (["eta_1", "alpha_1", "beta_1", "gamma_1", "delta_1",
              "eta_2", "alpha_2", "beta_2", "gamma_2", "delta_2"],
             [("eta_1", "alpha_1"), ("eta_1", "beta_1"), ("eta_1", "gamma_1"),
              ("alpha_1", "delta_1"), ("beta_1", "delta_1"), ("gamma_1", "delta_1"),
              ("gamma_1", "eta_2"), ("delta_1", "alpha_2"),
              ("eta_2", "alpha_2"), ("eta_2", "beta_2"), ("eta_2", "gamma_2"),
              ("alpha_2", "delta_2"), ("beta_2", "delta_2"), ("gamma_2", "delta_2")])

# the filter of M1 above gamma_0^gamma_1, written out on its own
_D1 = (["gamma_0^gamma_1", "gamma_0", "gamma_1", "alpha_0^alpha_1", "alpha_0", "alpha_1",
        "delta"],
       [("gamma_0^gamma_1", "gamma_0"), ("gamma_0^gamma_1", "gamma_1"),
        ("gamma_0^gamma_1", "alpha_0^alpha_1"),
        ("gamma_0", "alpha_0"), ("gamma_1", "alpha_1"),
        ("alpha_0^alpha_1", "alpha_0"), ("alpha_0^alpha_1", "alpha_1"),
        ("alpha_0", "delta"), ("alpha_1", "delta")])

_FIXED_DATA = {"N5": _N5, "M3": _M3, "M1": _M1, "K": _K, "L14": _L14,
               "M33": _M33, "M33*": _M33_STAR, "D1": _D1}


def dual(L: FiniteLattice) -> FiniteLattice:
    """Order reversed; meet and join swap roles."""
    return FiniteLattice(L.leq.T, L.join, L.meet, L.labels, check=True)


def glued(glue: str, loose: bool = False) -> FiniteLattice:
    """Chain of len(glue)+1 diamonds glued (or loosely joined) per ``glue``."""
    if set(glue) - {"L", "R"}:
        raise DomainError(f"glue string {glue!r} must consist of L and R")
    names = []
    covers = []

    def new(name):
        names.append(name)
        return name

    k = len(glue) + 1
    copies = []
    bottom = new("eta" if not loose else "eta_1")
    a, b, c = new("alpha_1"), new("beta_1"), new("gamma_1")
    top = None
    copies.append(dict(bottom=bottom, alpha=a, beta=b, gamma=c))
    for i in range(1, k):
        prev = copies[-1]
        letter = glue[i - 1]
        prev_top = f"delta_{i}" if loose else None
        if loose:
            new(prev_top)
            for atom in ("alpha", "beta", "gamma"):
                covers.append((prev[atom], prev_top))
            bottom = new(f"eta_{i + 1}")
            a, b, c = new(f"alpha_{i + 1}"), new(f"beta_{i + 1}"), new(f"gamma_{i + 1}")
            if letter == "R":
                covers += [(prev["gamma"], bottom), (prev_top, a)]
            else:
                covers += [(prev["alpha"], bottom), (prev_top, c)]
            cur = dict(bottom=bottom, alpha=a, beta=b, gamma=c)
        elif letter == "R":
            # top_i becomes alpha_{i+1}; gamma_i becomes the new bottom
            a = new(f"alpha_{i + 1}")
            b, c = new(f"beta_{i + 1}"), new(f"gamma_{i + 1}")
            for atom in ("alpha", "beta", "gamma"):
                covers.append((prev[atom], a))
            cur = dict(bottom=prev["gamma"], alpha=a, beta=b, gamma=c)
        else:
            c = new(f"gamma_{i + 1}")
            a, b = new(f"alpha_{i + 1}"), new(f"beta_{i + 1}")
            for atom in ("alpha", "beta", "gamma"):
                covers.append((prev[atom], c))
            cur = dict(bottom=prev["alpha"], alpha=a, beta=b, gamma=c)
        copies.append(cur)
    top = new("delta" if not loose else f"delta_{k}")
    for copy in copies:
        for atom in ("alpha", "beta", "gamma"):
            covers.append((copy["bottom"], copy[atom]))
    last = copies[-1]
    for atom in ("alpha", "beta", "gamma"):
        covers.append((last[atom], top))
    return FiniteLattice.from_labeled_covers(names, covers)


def build(shape, allow_interpretation: bool = False) -> FiniteLattice:
    """Construct a catalog lattice from a :class:`ShapeId` or its text form.

    Starred families beyond n = 2 follow a reading of "edges pulled apart"
    that is not pinned down by a definition, so they require
    ``allow_interpretation=True``.
    """
    if isinstance(shape, str):
        shape = parse_shape(shape)
    if shape.tag in _FIXED_DATA:
        names, covers = _FIXED_DATA[shape.tag]
        return FiniteLattice.from_labeled_covers(names, covers)
    if shape.tag == "D2":
        return dual(build(ShapeId("D1")))
    glue = shape.glue_string()
    if shape.starred and len(glue) >= 2 and not allow_interpretation:
        raise DomainError(f"{shape} for n >= 3 is an interpretation; "
                          "pass allow_interpretation=True to build it")
    return glued(glue, loose=shape.starred)


def rod_size(n: int) -> int:
    """Element count of R_n: each glued diamond adds three elements."""
    return 3 * n + 2


def describe(L: FiniteLattice) -> str:
    cov = ", ".join(f"{L.labels[a]}<{L.labels[b]}" for a, b in L.covers_list())
    return f"size={len(L)} covers=[{cov}]"


def same_shape(L: FiniteLattice, shape) -> bool:
    from .lattice import isomorphic
    return isomorphic(L, build(shape, allow_interpretation=True)) is not None


__all__ = ["ShapeId", "parse_shape", "build", "dual", "glued", "snake_glue", "rod_size",
           "FIXED", "describe", "same_shape", "np"]
