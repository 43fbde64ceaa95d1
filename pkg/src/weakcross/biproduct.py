"""Weak crossed biproducts on ``C (x) A``.

The algebra structure is a crossed product with the algebra ``A`` on the right
and the coalgebra ``C`` playing the role of ``V``; the coalgebra structure is a
crossed coproduct with ``C`` on the left and ``A`` playing the role of ``V``.
Both must induce the same idempotent, and the common image must be carried
onto a weak bialgebra ``D`` by an isomorphism compatible with everything.
"""
from __future__ import annotations

from dataclasses import dataclass

from .crossed_coproduct import (
    CoCrossedData,
    CrossedCoproduct,
    build_crossed_coproduct,
    crossed_gamma,
    decompose_coalgebra,
    normalize_tau,
)
from .crossed_product import (
    LEFT,
    RIGHT,
    CrossedData,
    CrossedProduct,
    build_crossed_product,
    crossed_nabla,
    decompose_algebra,
    normalize_sigma,
)
from .linalg import LinMap, ShapeError, Splitting, identity, split_idempotent
from .report import ConditionError, Report, gate
from .structures import (
    AlgebraData,
    CoalgebraData,
    check_algebra_morphism,
    check_coalgebra_morphism,
)
from .weak_hopf import WeakBialgebraData, check_weak_bialgebra

__all__ = [
    "BiproductData",
    "Biproduct",
    "IdempotentPair",
    "PairDecomposition",
    "assemble_biproduct",
    "check_biproduct",
    "biproduct_pieces",
    "check_idempotent_pair",
    "decomposition_from_pair",
    "pair_from_decomposition",
    "pair_from_biproduct",
]


@dataclass(frozen=True)
class BiproductData:
    """``product_side`` uses the right layout (``V = C``) and
    ``coproduct_side`` the left layout (``V = A``).  ``iso`` maps the image of
    the common idempotent, as presented by ``splitting``, onto ``target``.
    ``hopf`` optionally records a weak Hopf structure on ``A``."""

    product_side: CrossedData
    coproduct_side: CoCrossedData
    iso: LinMap
    target: WeakBialgebraData
    splitting: Splitting | None = None
    hopf: WeakBialgebraData | None = None

    def __post_init__(self):
        ps, cs = self.product_side, self.coproduct_side
        if ps.orientation != RIGHT or cs.orientation != LEFT:
            raise ValueError("product side must use the right layout and coproduct side the left layout")
        if ps.vdim != cs.coalgebra.dim or cs.vdim != ps.algebra.dim:
            raise ShapeError("product and coproduct sides live on different spaces")
        if ps.preunit is None or cs.precounit is None:
            raise ValueError("a biproduct needs both a preunit and a precounit")
        if self.iso.cod != self.target.dim:
            raise ShapeError("iso must land in the target")
        if self.hopf is not None and self.hopf.algebra != ps.algebra:
            raise ValueError("hopf structure must extend the algebra of the product side")

    @property
    def algebra(self) -> AlgebraData:
        return self.product_side.algebra

    @property
    def coalgebra(self) -> CoalgebraData:
        return self.coproduct_side.coalgebra


@dataclass(frozen=True)
class Biproduct:
    data: BiproductData
    product: CrossedProduct
    coproduct: CrossedCoproduct
    report: Report


def _build(b: BiproductData, r: Report):
    splitting = b.splitting
    if splitting is None:
        try:
            splitting = split_idempotent(crossed_nabla(b.product_side))
        except ValueError:
            splitting = None
    cp = cc = None
    try:
        cp = build_crossed_product(b.product_side, splitting, "algebra side")
        r.add(cp.report)
    except ConditionError as e:
        r.add(e.report)
    try:
        cc = build_crossed_coproduct(b.coproduct_side, splitting, "coalgebra side")
        r.add(cc.report)
    except ConditionError as e:
        r.add(e.report)
    return cp, cc


def check_biproduct(b: BiproductData, title: str = "biproduct") -> Report:
    """Every clause of the biproduct definition, evaluated without
    short-circuiting."""
    r = Report(title)
    cp, cc = _build(b, r)
    r.equal("nabla-equals-gamma", crossed_nabla(b.product_side), crossed_gamma(b.coproduct_side))
    A, C, D = b.algebra, b.coalgebra, b.target
    alpha = b.iso
    r.require("iso-invertible", alpha.is_invertible(), {"shape": list(alpha.shape), "rank": alpha.rank()})
    if cp is not None and cc is not None and alpha.is_invertible():
        r.add(check_algebra_morphism(alpha, cp.image_algebra, D.algebra, "iso multiplicative"))
        r.add(check_coalgebra_morphism(alpha, cc.image_coalgebra, D.coalgebra, "iso comultiplicative"))
    else:
        r.skip("iso-structure", "sides failed or iso not invertible")
    nu, ups = b.product_side.preunit, b.coproduct_side.precounit
    r.equal("preunit-counit", (C.counit ^ A.id) @ nu, A.unit)
    r.equal("precounit-unit", ups @ (C.id ^ A.unit), C.counit)
    r.add(check_weak_bialgebra(D, "target"))
    return r


def assemble_biproduct(b: BiproductData) -> Biproduct:
    r = Report("biproduct")
    cp, cc = _build(b, r)
    r.add(check_biproduct(b, "clauses"))
    gate(r)
    return Biproduct(b, cp, cc, r)


def biproduct_pieces(b: BiproductData) -> dict[str, LinMap]:
    """The four maps presenting ``A`` and ``C`` inside the target."""
    ps, cs = normalize_sigma(b.product_side), normalize_tau(b.coproduct_side)
    A, C = b.algebra, b.coalgebra
    splitting = b.splitting or split_idempotent(crossed_nabla(ps))
    inj, proj = splitting.injection, splitting.projection
    alpha = b.iso
    alpha_inv = alpha.inverse()
    beta = (C.id ^ A.mult) @ (ps.preunit ^ A.id)
    gamma = (C.id ^ cs.precounit) @ (C.comult ^ A.id)
    return {
        "iA": alpha @ proj @ beta,
        "pA": (C.counit ^ A.id) @ inj @ alpha_inv,
        "iC": alpha @ proj @ (C.id ^ A.unit),
        "pC": gamma @ inj @ alpha_inv,
    }


@dataclass(frozen=True)
class IdempotentPair:
    """``pi`` and ``theta`` are endomorphisms of the weak bialgebra ``D``."""

    pi: LinMap
    theta: LinMap


def _pair_maps(D: WeakBialgebraData, pair: IdempotentPair):
    th_pi = pair.theta ^ pair.pi
    proj = D.mult @ th_pi
    inj = th_pi @ D.comult
    return inj, proj


def check_idempotent_pair(D: WeakBialgebraData, pair: IdempotentPair, title: str = "idempotent pair") -> Report:
    r = Report(title)
    I = identity(D.dim)
    pi, th = pair.pi, pair.theta
    mu, delta, eta, eps = D.mult, D.comult, D.unit, D.counit
    r.equal("pair-unit", pi @ eta, eta)
    r.equal("pair-mult", mu @ (pi ^ pi), pi @ mu @ (pi ^ pi))
    r.equal("pair-counit", eps @ th, eps)
    r.equal("pair-comult", (th ^ th) @ delta, (th ^ th) @ delta @ th)
    r.equal("pair-module", (th ^ pi) @ delta @ mu @ (I ^ pi), (I ^ mu) @ (((th ^ pi) @ delta) ^ pi))
    r.equal("pair-comodule", (th ^ I) @ delta @ mu @ (th ^ pi), (th ^ (mu @ (th ^ pi))) @ (delta ^ I))
    r.equal("pair-resolution", mu @ (th ^ pi) @ delta, I)
    r.equal("pi-idempotent", pi @ pi, pi)
    r.equal("theta-idempotent", th @ th, th)
    inj, proj = _pair_maps(D, pair)
    big = inj @ proj
    r.equal("pair-nabla-idempotent", big @ big, big)
    r.equal("pair-nabla-module", big @ (I ^ (mu @ (pi ^ pi))), (I ^ mu) @ ((big @ (I ^ pi)) ^ pi))
    r.facts["nabla_is_tensor"] = big == (th ^ pi)
    return r


@dataclass(frozen=True)
class PairDecomposition:
    A: AlgebraData
    C: CoalgebraData
    iA: LinMap
    pA: LinMap
    iC: LinMap
    pC: LinMap
    biproduct: BiproductData
    nabla_pair: LinMap
    report: Report


def _decompose(D: WeakBialgebraData, A: AlgebraData, C: CoalgebraData,
               iA: LinMap, pA: LinMap, iC: LinMap, pC: LinMap, r: Report) -> BiproductData:
    inj = (pC ^ pA) @ D.comult
    proj = D.mult @ (iC ^ iA)
    r.equal("section", proj @ inj, identity(D.dim))
    gate(r)
    splitting = Splitting(D.dim, inj, proj)
    alg = decompose_algebra(D.algebra, A, C.dim, iA, iC, inj, RIGHT, splitting)
    r.add(alg.report)
    coalg = decompose_coalgebra(D.coalgebra, C, A.dim, pC, pA, proj, LEFT, splitting)
    r.add(coalg.report)
    return BiproductData(alg.data, coalg.data, identity(D.dim), D, splitting)


def decomposition_from_pair(D: WeakBialgebraData, pair: IdempotentPair) -> PairDecomposition:
    """Split ``pi`` and ``theta``, put the induced structures on the images
    and assemble the biproduct whose target is ``D`` itself."""
    r = Report("decomposition from pair")
    r.add(check_weak_bialgebra(D, "target"))
    r.add(check_idempotent_pair(D, pair))
    gate(r)
    sa, sc = split_idempotent(pair.pi), split_idempotent(pair.theta)
    iA, pA, iC, pC = sa.injection, sa.projection, sc.injection, sc.projection
    A = AlgebraData(sa.image_dim, pA @ D.unit, pA @ D.mult @ (iA ^ iA))
    C = CoalgebraData(sc.image_dim, D.counit @ iC, (pC ^ pC) @ D.comult @ iC)
    inj, proj = _pair_maps(D, pair)
    nabla_pair = inj @ proj
    b = _decompose(D, A, C, iA, pA, iC, pC, r)
    r.add(check_biproduct(b))
    gate(r)
    return PairDecomposition(A, C, iA, pA, iC, pC, b, nabla_pair, r)


def pair_from_decomposition(D: WeakBialgebraData, A: AlgebraData, C: CoalgebraData,
                            iA: LinMap, pA: LinMap, iC: LinMap, pC: LinMap) -> tuple[IdempotentPair, Report]:
    """The converse direction: from retracts ``A`` and ``C`` of ``D`` with the
    required (co)algebra morphisms, produce ``pi = iA pA``, ``theta = iC pC``."""
    r = Report("pair from decomposition")
    r.add(check_algebra_morphism(iA, A, D.algebra, "iA"))
    r.equal("retract-A", pA @ iA, A.id)
    r.add(check_coalgebra_morphism(pC, D.coalgebra, C, "pC"))
    r.equal("retract-C", pC @ iC, C.id)
    inj = (pC ^ pA) @ D.comult
    proj = D.mult @ (iC ^ iA)
    nabla = inj @ proj
    r.equal("nabla-idempotent", nabla @ nabla, nabla)
    r.equal("nabla-right-linear", nabla @ (C.id ^ A.mult), (C.id ^ A.mult) @ (nabla ^ A.id))
    r.equal("nabla-left-colinear", (C.comult ^ A.id) @ nabla, (C.id ^ nabla) @ (C.comult ^ A.id))
    r.equal("section", proj @ inj, identity(D.dim))
    pair = IdempotentPair(iA @ pA, iC @ pC)
    r.add(check_idempotent_pair(D, pair))
    gate(r)
    return pair, r


def pair_from_biproduct(b: BiproductData) -> tuple[IdempotentPair, dict[str, LinMap], Report]:
    """Read the idempotent pair off an assembled biproduct."""
    r = Report("pair from biproduct")
    r.add(check_biproduct(b))
    gate(r)
    pieces = biproduct_pieces(b)
    r.equal("retract-A", pieces["pA"] @ pieces["iA"], b.algebra.id)
    r.equal("retract-C", pieces["pC"] @ pieces["iC"], b.coalgebra.id)
    pair = IdempotentPair(pieces["iA"] @ pieces["pA"], pieces["iC"] @ pieces["pC"])
    r.add(check_idempotent_pair(b.target, pair))
    gate(r)
    return pair, pieces, r
