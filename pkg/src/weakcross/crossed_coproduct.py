"""Weak crossed coproducts of a coalgebra ``C`` with a space ``V``.

In the ``"left"`` layout the coproduct lives on ``C (x) V`` with
``chi: C (x) V -> V (x) C`` and ``tau: C (x) V -> V (x) V``; in the
``"right"`` layout on ``V (x) C`` with ``chi: V (x) C -> C (x) V`` and
``tau: V (x) C -> V (x) V``.  Transposing crossed-product data gives
crossed-coproduct data (:func:`transpose_crossed`), which the test-suite uses
to cross-check the formulas below.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .crossed_product import LEFT, RIGHT, CrossedData
from .linalg import LinMap, ShapeError, Splitting, identity, split_idempotent
from .report import Report, gate
from .structures import (
    ActionData,
    AlgebraData,
    CoalgebraData,
    check_coalgebra,
    check_coalgebra_morphism,
    check_linearity,
)

__all__ = [
    "CoCrossedData",
    "CrossedCoproduct",
    "CoDecomposition",
    "crossed_gamma",
    "crossed_coproduct_map",
    "precounit_gamma",
    "normalize_tau",
    "check_cocrossed_data",
    "check_precounit",
    "build_crossed_coproduct",
    "recover_chi_tau",
    "decompose_coalgebra",
    "check_co_universal",
    "co_switch_sides",
    "transpose_algebra",
    "transpose_crossed",
]


@dataclass(frozen=True)
class CoCrossedData:
    coalgebra: CoalgebraData
    vdim: int
    chi: LinMap
    tau: LinMap
    precounit: LinMap | None = None
    orientation: str = LEFT

    def __post_init__(self):
        if self.orientation not in (LEFT, RIGHT):
            raise ValueError("orientation must be 'left' or 'right'")
        c, v = self.coalgebra.dim, self.vdim
        n = c * v
        if self.chi.shape != (n, n):
            raise ShapeError(f"chi should be {n}->{n}")
        if self.tau.shape != (v * v, n):
            raise ShapeError(f"tau should be {n}->{v * v}")
        if self.precounit is not None and self.precounit.shape != (1, n):
            raise ShapeError(f"precounit should be {n}->1")

    @property
    def dim(self) -> int:
        return self.coalgebra.dim * self.vdim

    def pieces(self):
        """Identity on C, identity on V, comultiplication and counit of C."""
        C = self.coalgebra
        return C.id, identity(self.vdim), C.comult, C.counit


def crossed_gamma(d: CoCrossedData) -> LinMap:
    Ic, Iv, delta, eps = d.pieces()
    if d.orientation == LEFT:
        return (Ic ^ Iv ^ eps) @ (Ic ^ d.chi) @ (delta ^ Iv)
    return (eps ^ Iv ^ Ic) @ (d.chi ^ Ic) @ (Iv ^ delta)


def crossed_coproduct_map(d: CoCrossedData) -> LinMap:
    Ic, Iv, delta, _ = d.pieces()
    if d.orientation == LEFT:
        return (Ic ^ d.chi ^ Iv) @ (delta ^ d.tau) @ (delta ^ Iv)
    return (Iv ^ d.chi ^ Ic) @ (d.tau ^ delta) @ (Iv ^ delta)


def precounit_gamma(d: CoCrossedData, precounit: LinMap | None = None) -> LinMap:
    """The map ``C (x) V -> C`` obtained by comultiplying against the precounit."""
    ups = d.precounit if precounit is None else precounit
    Ic, Iv, delta, _ = d.pieces()
    if d.orientation == LEFT:
        return (Ic ^ ups) @ (delta ^ Iv)
    return (ups ^ Ic) @ (Iv ^ delta)


def _coaction(d: CoCrossedData) -> ActionData:
    Ic, Iv, delta, _ = d.pieces()
    if d.orientation == LEFT:
        return ActionData(d.dim, delta ^ Iv, "left-comodule", d.coalgebra)
    return ActionData(d.dim, Iv ^ delta, "right-comodule", d.coalgebra)


def normalize_tau(d: CoCrossedData) -> CoCrossedData:
    return replace(d, tau=d.tau @ crossed_gamma(d))


def check_cocrossed_data(d: CoCrossedData, title: str = "crossed codata") -> Report:
    r = Report(title)
    Ic, Iv, delta, _ = d.pieces()
    chi = d.chi
    if d.orientation == LEFT:
        r.equal("chi-comultiplicative", (chi ^ Ic) @ (Ic ^ chi) @ (delta ^ Iv), (Iv ^ delta) @ chi)
    else:
        r.equal("chi-comultiplicative", (Ic ^ chi) @ (chi ^ Ic) @ (Iv ^ delta), (delta ^ Iv) @ chi)
    gamma = crossed_gamma(d)
    r.equal("gamma-idempotent", gamma @ gamma, gamma)
    co = _coaction(d)
    r.add(check_linearity(gamma, co, co, "gamma colinear"))
    r.equal("gamma-chi", chi @ gamma, chi)
    tau = d.tau @ gamma
    if tau != d.tau:
        r.note("tau replaced by tau o gamma")
        r.facts["tau_normalized"] = True
    else:
        r.facts["tau_normalized"] = False
    if d.orientation == LEFT:
        r.equal("co-twisted",
                (tau ^ Ic) @ (Ic ^ chi) @ (delta ^ Iv),
                (Iv ^ chi) @ (chi ^ Iv) @ (Ic ^ tau) @ (delta ^ Iv))
        r.equal("co-cocycle",
                (tau ^ Iv) @ (Ic ^ tau) @ (delta ^ Iv),
                (Iv ^ tau) @ (chi ^ Iv) @ (Ic ^ tau) @ (delta ^ Iv))
    else:
        r.equal("co-twisted",
                (chi ^ Iv) @ (Iv ^ chi) @ (tau ^ Ic) @ (Iv ^ delta),
                (Ic ^ tau) @ (chi ^ Ic) @ (Iv ^ delta))
        r.equal("co-cocycle",
                (Iv ^ tau) @ (tau ^ Ic) @ (Iv ^ delta),
                (tau ^ Iv) @ (Iv ^ chi) @ (tau ^ Ic) @ (Iv ^ delta))
    r.equal("tau-normalized", tau @ gamma, tau)
    return r


def check_precounit(d: CoCrossedData, title: str = "precounit") -> Report:
    r = Report(title)
    if d.precounit is None:
        r.skip("precounit-present", "no precounit supplied")
        return r
    Ic, Iv, delta, eps = d.pieces()
    gamma = crossed_gamma(d)
    chi, tau, ups = d.chi, d.tau @ gamma, d.precounit
    g = precounit_gamma(d)
    if d.orientation == LEFT:
        target = (eps ^ Iv) @ gamma
        r.equal("co-pre1", (Iv ^ ups) @ (chi ^ Iv) @ (Ic ^ tau) @ (delta ^ Iv), target)
        r.equal("co-pre2", (ups ^ Iv) @ (Ic ^ tau) @ (delta ^ Iv), target)
        r.equal("co-pre3", (ups ^ Ic) @ (Ic ^ chi) @ (delta ^ Iv), g)
    else:
        target = (Iv ^ eps) @ gamma
        r.equal("co-pre1", (ups ^ Iv) @ (Iv ^ chi) @ (tau ^ Ic) @ (Iv ^ delta), target)
        r.equal("co-pre2", (Iv ^ ups) @ (tau ^ Ic) @ (Iv ^ delta), target)
        r.equal("co-pre3", (Ic ^ ups) @ (chi ^ Ic) @ (Iv ^ delta), g)
    dm = crossed_coproduct_map(replace(d, tau=tau))
    _precounit_laws(r, dm, ups, d.dim)
    r.equal("gamma-from-precounit", _gamma_from_precounit(dm, ups, d.dim), gamma)
    return r


def _precounit_laws(r: Report, dm: LinMap, ups: LinMap, n: int) -> None:
    I = identity(n)
    right = (I ^ ups) @ dm
    r.equal("precounit-two-sided", right, (ups ^ I) @ dm)
    r.equal("precounit-absorbs", right, (I ^ ((ups ^ ups) @ dm)) @ dm)


def _gamma_from_precounit(dm: LinMap, ups: LinMap, n: int) -> LinMap:
    return (identity(n) ^ ups) @ dm


@dataclass(frozen=True)
class CrossedCoproduct:
    data: CoCrossedData
    gamma: LinMap
    coproduct: LinMap
    splitting: Splitting
    image_coproduct: LinMap
    image_counit: LinMap | None
    gamma_precounit: LinMap | None
    report: Report

    @property
    def image_coalgebra(self) -> CoalgebraData | None:
        if self.image_counit is None:
            return None
        return CoalgebraData(self.splitting.image_dim, self.image_counit, self.image_coproduct)


def build_crossed_coproduct(d: CoCrossedData, splitting: Splitting | None = None,
                            title: str = "crossed coproduct") -> CrossedCoproduct:
    r = Report(title)
    r.add(check_cocrossed_data(d))
    gate(r)
    d = normalize_tau(d)
    gamma = crossed_gamma(d)
    dm = crossed_coproduct_map(d)
    n = d.dim
    I = identity(n)
    r.equal("coassociative", (dm ^ I) @ dm, (I ^ dm) @ dm)
    r.equal("coproduct-normalized-left", dm @ gamma, dm)
    r.equal("coproduct-normalized-right", (gamma ^ gamma) @ dm, dm)
    Ic, Iv, delta, _ = d.pieces()
    if d.orientation == LEFT:
        r.equal("coproduct-colinear", (delta ^ Iv ^ Ic ^ Iv) @ dm, (Ic ^ dm) @ (delta ^ Iv))
    else:
        r.equal("coproduct-colinear", (Iv ^ Ic ^ Iv ^ delta) @ dm, (dm ^ Ic) @ (Iv ^ delta))
    if splitting is None:
        splitting = split_idempotent(gamma)
    else:
        r.require("splitting-matches", splitting.is_valid_for(gamma))
    inj, proj = splitting.injection, splitting.projection
    image_coproduct = (proj ^ proj) @ dm @ inj
    counit = g = None
    if d.precounit is not None:
        r.add(check_precounit(d))
        counit = d.precounit @ inj
        g = precounit_gamma(d)
        r.equal("gamma-precounit-counit", d.coalgebra.counit @ g, d.precounit)
        r.equal("gamma-precounit-comultiplicative", delta @ g, (g ^ g) @ dm)
        img = CoalgebraData(splitting.image_dim, counit, image_coproduct)
        r.add(check_coalgebra(img, "image coalgebra"))
        r.add(check_coalgebra_morphism(g @ inj, img, d.coalgebra, "image onto C"))
    gate(r)
    return CrossedCoproduct(d, gamma, dm, splitting, image_coproduct, counit, g, r)


def recover_chi_tau(coproduct: LinMap, coalgebra: CoalgebraData, vdim: int, precounit: LinMap,
                    orientation: str = LEFT) -> tuple[LinMap, LinMap, Report]:
    c, v = coalgebra.dim, vdim
    n = c * v
    if coproduct.shape != (n * n, n) or precounit.shape != (1, n):
        raise ShapeError("coproduct or precounit has the wrong shape")
    r = Report("recover chi and tau")
    I = identity(n)
    Ic, Iv, delta, eps = coalgebra.id, identity(v), coalgebra.comult, coalgebra.counit
    r.equal("coassociative", (coproduct ^ I) @ coproduct, (I ^ coproduct) @ coproduct)
    if orientation == LEFT:
        r.equal("coproduct-colinear", (delta ^ Iv ^ Ic ^ Iv) @ coproduct, (Ic ^ coproduct) @ (delta ^ Iv))
        g = (Ic ^ precounit) @ (delta ^ Iv)
        chi = (eps ^ Iv ^ g) @ coproduct
        tau = (eps ^ Iv ^ eps ^ Iv) @ coproduct
    else:
        r.equal("coproduct-colinear", (Iv ^ Ic ^ Iv ^ delta) @ coproduct, (coproduct ^ Ic) @ (Iv ^ delta))
        g = (precounit ^ Ic) @ (Iv ^ delta)
        chi = (g ^ Iv ^ eps) @ coproduct
        tau = (Iv ^ eps ^ Iv ^ eps) @ coproduct
    _precounit_laws(r, coproduct, precounit, n)
    r.equal("precounit-idempotent", (precounit ^ precounit) @ coproduct, precounit)
    gamma = _gamma_from_precounit(coproduct, precounit, n)
    r.equal("coproduct-normalized", (gamma ^ gamma) @ coproduct, coproduct)
    d = CoCrossedData(coalgebra, v, chi, tau, precounit, orientation)
    rebuilt = Report("round trip")
    rebuilt.add(check_cocrossed_data(d))
    rebuilt.add(check_precounit(d))
    if rebuilt.ok:
        rebuilt.equal("coproduct-recovered", crossed_coproduct_map(normalize_tau(d)), coproduct)
    r.add(rebuilt)
    return chi, tau, r


def _varpi_bar(D: CoalgebraData, pC: LinMap, pV: LinMap, orientation: str) -> LinMap:
    return ((pC ^ pV) if orientation == LEFT else (pV ^ pC)) @ D.comult


@dataclass(frozen=True)
class CoDecomposition:
    data: CoCrossedData
    crossed: CrossedCoproduct
    varpi: LinMap
    varpi_inverse: LinMap
    report: Report


def decompose_coalgebra(D: CoalgebraData, C: CoalgebraData, vdim: int, pC: LinMap, pV: LinMap,
                        what: LinMap, orientation: str = LEFT,
                        splitting: Splitting | None = None) -> CoDecomposition:
    """Present ``D`` as a crossed coproduct of ``C`` and ``V``.

    ``pC: D -> C`` must be a coalgebra morphism and ``what: C (x) V -> D`` a
    ``C``-colinear retraction of ``(pC (x) pV) o delta_D``.
    """
    r = Report("decompose coalgebra")
    r.add(check_coalgebra_morphism(pC, D, C, "pC"))
    Iv = identity(vdim)
    n = C.dim * vdim
    if orientation == LEFT:
        on_T = ActionData(n, C.comult ^ Iv, "left-comodule", C)
        on_D = ActionData(D.dim, (pC ^ D.id) @ D.comult, "left-comodule", C)
    else:
        on_T = ActionData(n, Iv ^ C.comult, "right-comodule", C)
        on_D = ActionData(D.dim, (D.id ^ pC) @ D.comult, "right-comodule", C)
    r.add(check_linearity(what, on_T, on_D, "retraction colinear"))
    bar = _varpi_bar(D, pC, pV, orientation)
    r.equal("retraction", what @ bar, D.id)
    gate(r)
    big_gamma = bar @ what
    coproduct = (bar ^ bar) @ D.comult @ what
    ups = D.counit @ what
    chi, tau, rec = recover_chi_tau(coproduct, C, vdim, ups, orientation)
    r.add(rec)
    gate(r)
    d = CoCrossedData(C, vdim, chi, tau, ups, orientation)
    cc = build_crossed_coproduct(d, splitting)
    r.add(cc.report)
    r.equal("gamma-is-big-gamma", cc.gamma, big_gamma)
    r.equal("coproduct-matches", cc.coproduct, coproduct)
    inj, proj = cc.splitting.injection, cc.splitting.projection
    varpi = proj @ bar
    varpi_inv = what @ inj
    r.equal("varpi-left-inverse", varpi_inv @ varpi, D.id)
    r.equal("varpi-right-inverse", varpi @ varpi_inv, identity(cc.splitting.image_dim))
    r.equal("varpi-through-injection", inj @ varpi, bar)
    r.add(check_coalgebra_morphism(varpi, D, cc.image_coalgebra, "varpi"))
    gate(r)
    return CoDecomposition(d, cc, varpi, varpi_inv, r)


def check_co_universal(cc: CrossedCoproduct, D: CoalgebraData, pC: LinMap, pV: LinMap,
                       title: str = "co-universal property") -> Report:
    d = cc.data
    r = Report(title)
    r.add(check_coalgebra_morphism(pC, D, d.coalgebra, "pC"))
    bar = _varpi_bar(D, pC, pV, d.orientation)
    r.equal("co-universal-precounit", d.precounit @ bar, D.counit)
    if d.orientation == LEFT:
        r.equal("co-universal-chi", d.chi @ bar, (pV ^ pC) @ D.comult)
    else:
        r.equal("co-universal-chi", d.chi @ bar, (pC ^ pV) @ D.comult)
    r.equal("co-universal-tau", d.tau @ bar, (pV ^ pV) @ D.comult)
    varpi = cc.splitting.projection @ bar
    r.facts["varpi"] = varpi
    r.add(check_coalgebra_morphism(varpi, D, cc.image_coalgebra, "varpi"))
    inj = cc.splitting.injection
    _, Iv, _, eps = d.pieces()
    r.equal("varpi-restricts-to-C", cc.gamma_precounit @ inj @ varpi, pC)
    v_out = (eps ^ Iv) if d.orientation == LEFT else (Iv ^ eps)
    r.equal("varpi-restricts-to-V", v_out @ inj @ varpi, pV)
    return r


def co_switch_sides(d: CoCrossedData, chi_bar: LinMap) -> tuple[CoCrossedData, Report]:
    r = Report("co-switch sides")
    other = RIGHT if d.orientation == LEFT else LEFT
    d = normalize_tau(d)
    if chi_bar.shape != d.chi.shape:
        raise ShapeError("chi_bar must have the shape of chi")
    new = CoCrossedData(d.coalgebra, d.vdim, chi_bar, d.tau @ chi_bar,
                        None if d.precounit is None else d.precounit @ chi_bar, other)
    r.add(check_cocrossed_data(new, "switched codata"))
    r.equal("chi-bar-after-chi", chi_bar @ d.chi, crossed_gamma(d))
    r.equal("chi-after-chi-bar", d.chi @ chi_bar, crossed_gamma(new))
    r.equal("coproducts-correspond", crossed_coproduct_map(new),
            (d.chi ^ d.chi) @ crossed_coproduct_map(d) @ chi_bar)
    if d.precounit is not None:
        r.add(check_precounit(new, "switched precounit"))
    return new, r


# duality ------------------------------------------------------------------

def transpose_algebra(a: AlgebraData) -> CoalgebraData:
    """The dual coalgebra: counit and comultiplication are the transposes."""
    return CoalgebraData(a.dim, a.unit.T, a.mult.T, a.labels)


def transpose_crossed(d: CrossedData) -> CoCrossedData:
    """Transposition turns crossed-product data into crossed-coproduct data
    on the dual coalgebra, keeping the layout."""
    return CoCrossedData(
        transpose_algebra(d.algebra),
        d.vdim,
        d.psi.T,
        d.sigma.T,
        None if d.preunit is None else d.preunit.T,
        d.orientation,
    )
