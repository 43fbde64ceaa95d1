"""Algebras, coalgebras, (co)actions and the predicates relating them.

All predicates return a :class:`~weakcross.report.Report`; only malformed
shapes raise.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import LinMap, ShapeError, identity
from .report import Report

__all__ = [
    "AlgebraData",
    "CoalgebraData",
    "ActionData",
    "check_algebra",
    "check_coalgebra",
    "check_algebra_morphism",
    "check_coalgebra_morphism",
    "check_action",
    "check_linearity",
    "convolution",
]


def _expect(f: LinMap, dom: int, cod: int, what: str) -> None:
    if f.dom != dom or f.cod != cod:
        raise ShapeError(f"{what} should be {dom}->{cod}, got {f.dom}->{f.cod}")


@dataclass(frozen=True)
class AlgebraData:
    dim: int
    unit: LinMap
    mult: LinMap
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        _expect(self.unit, 1, self.dim, "unit")
        _expect(self.mult, self.dim * self.dim, self.dim, "multiplication")
        if self.labels is not None and len(self.labels) != self.dim:
            raise ShapeError("one label per basis vector expected")

    @property
    def id(self) -> LinMap:
        return identity(self.dim)


@dataclass(frozen=True)
class CoalgebraData:
    dim: int
    counit: LinMap
    comult: LinMap
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        _expect(self.counit, self.dim, 1, "counit")
        _expect(self.comult, self.dim, self.dim * self.dim, "comultiplication")
        if self.labels is not None and len(self.labels) != self.dim:
            raise ShapeError("one label per basis vector expected")

    @property
    def id(self) -> LinMap:
        return identity(self.dim)


SIDES = ("left-module", "right-module", "left-comodule", "right-comodule")


@dataclass(frozen=True)
class ActionData:
    """A (co)action of ``over`` on a space of dimension ``carrier``.

    ``structure`` has shape ``over (x) M -> M`` for a left module,
    ``M (x) over -> M`` for a right module, ``M -> over (x) M`` for a left
    comodule and ``M -> M (x) over`` for a right comodule.
    """

    carrier: int
    structure: LinMap
    side: str
    over: AlgebraData | CoalgebraData

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")
        n, m = self.carrier, self.over.dim
        if self.side in ("left-module", "right-module"):
            if not isinstance(self.over, AlgebraData):
                raise TypeError("a module needs an algebra")
            _expect(self.structure, n * m, n, "action")
        else:
            if not isinstance(self.over, CoalgebraData):
                raise TypeError("a comodule needs a coalgebra")
            _expect(self.structure, n, n * m, "coaction")


def check_algebra(a: AlgebraData, title: str = "algebra") -> Report:
    r = Report(title)
    I = a.id
    r.equal("associativity", a.mult @ (a.mult ^ I), a.mult @ (I ^ a.mult))
    r.equal("left-unit", a.mult @ (a.unit ^ I), I)
    r.equal("right-unit", a.mult @ (I ^ a.unit), I)
    return r


def check_coalgebra(c: CoalgebraData, title: str = "coalgebra") -> Report:
    r = Report(title)
    I = c.id
    r.equal("coassociativity", (c.comult ^ I) @ c.comult, (I ^ c.comult) @ c.comult)
    r.equal("left-counit", (c.counit ^ I) @ c.comult, I)
    r.equal("right-counit", (I ^ c.counit) @ c.comult, I)
    return r


def check_algebra_morphism(f: LinMap, src: AlgebraData, dst: AlgebraData, title: str = "algebra morphism") -> Report:
    _expect(f, src.dim, dst.dim, "algebra morphism")
    r = Report(title)
    r.equal("unit-preserving", f @ src.unit, dst.unit)
    r.equal("multiplicative", f @ src.mult, dst.mult @ (f ^ f))
    return r


def check_coalgebra_morphism(f: LinMap, src: CoalgebraData, dst: CoalgebraData, title: str = "coalgebra morphism") -> Report:
    _expect(f, src.dim, dst.dim, "coalgebra morphism")
    r = Report(title)
    r.equal("counit-preserving", dst.counit @ f, src.counit)
    r.equal("comultiplicative", dst.comult @ f, (f ^ f) @ src.comult)
    return r


def check_action(act: ActionData, title: str | None = None) -> Report:
    r = Report(title or act.side)
    s, M, X = act.structure, identity(act.carrier), act.over
    if act.side == "left-module":
        r.equal("action-associative", s @ (X.mult ^ M), s @ (X.id ^ s))
        r.equal("action-unital", s @ (X.unit ^ M), M)
    elif act.side == "right-module":
        r.equal("action-associative", s @ (M ^ X.mult), s @ (s ^ X.id))
        r.equal("action-unital", s @ (M ^ X.unit), M)
    elif act.side == "left-comodule":
        r.equal("coaction-coassociative", (X.comult ^ M) @ s, (X.id ^ s) @ s)
        r.equal("coaction-counital", (X.counit ^ M) @ s, M)
    else:
        r.equal("coaction-coassociative", (M ^ X.comult) @ s, (s ^ X.id) @ s)
        r.equal("coaction-counital", (M ^ X.counit) @ s, M)
    return r


def check_linearity(f: LinMap, src: ActionData, dst: ActionData, title: str = "linearity") -> Report:
    """Whether ``f`` intertwines two (co)actions on the same side."""
    if src.side != dst.side or src.over.dim != dst.over.dim:
        raise ValueError("actions must be on the same side over the same object")
    _expect(f, src.carrier, dst.carrier, "linear map")
    X = identity(src.over.dim)
    r = Report(title)
    if src.side == "left-module":
        r.equal("left-linear", f @ src.structure, dst.structure @ (X ^ f))
    elif src.side == "right-module":
        r.equal("right-linear", f @ src.structure, dst.structure @ (f ^ X))
    elif src.side == "left-comodule":
        r.equal("left-colinear", dst.structure @ f, (X ^ f) @ src.structure)
    else:
        r.equal("right-colinear", dst.structure @ f, (f ^ X) @ src.structure)
    return r


def convolution(f: LinMap, g: LinMap, c: CoalgebraData, a: AlgebraData) -> LinMap:
    """``f * g = mu o (f (x) g) o delta`` for maps from ``c`` into ``a``."""
    _expect(f, c.dim, a.dim, "left convolution factor")
    _expect(g, c.dim, a.dim, "right convolution factor")
    return a.mult @ (f ^ g) @ c.comult
