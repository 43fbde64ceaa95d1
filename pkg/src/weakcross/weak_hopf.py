"""Weak bialgebras and weak Hopf algebras in the category of vector spaces
with the flip as symmetry (so the braiding is its own inverse)."""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import LinMap, ShapeError, flip, identity
from .report import Report, gate
from .structures import (
    AlgebraData,
    CoalgebraData,
    check_algebra,
    check_coalgebra,
    convolution,
)

__all__ = [
    "WeakBialgebraData",
    "PiMaps",
    "pi_maps",
    "check_weak_bialgebra",
    "compute_pi",
    "check_antipode",
]


@dataclass(frozen=True)
class WeakBialgebraData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: LinMap | None = None

    def __post_init__(self):
        if self.algebra.dim != self.coalgebra.dim:
            raise ShapeError("algebra and coalgebra live on different spaces")
        if self.antipode is not None and self.antipode.shape != (self.dim, self.dim):
            raise ShapeError("antipode must be an endomorphism")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def unit(self) -> LinMap:
        return self.algebra.unit

    @property
    def mult(self) -> LinMap:
        return self.algebra.mult

    @property
    def counit(self) -> LinMap:
        return self.coalgebra.counit

    @property
    def comult(self) -> LinMap:
        return self.coalgebra.comult

    @property
    def labels(self):
        return self.algebra.labels

    def with_antipode(self, antipode: LinMap) -> "WeakBialgebraData":
        return WeakBialgebraData(self.algebra, self.coalgebra, antipode)


@dataclass(frozen=True)
class PiMaps:
    """The four canonical idempotent endomorphisms of a weak bialgebra:
    target and source maps and their barred companions."""

    left: LinMap
    right: LinMap
    left_bar: LinMap
    right_bar: LinMap


def pi_maps(d: WeakBialgebraData) -> PiMaps:
    """Evaluate the four formulas without checking any hypothesis."""
    n = d.dim
    I = identity(n)
    c = flip(n, n)
    eps_mu = d.counit @ d.mult
    delta_eta = d.comult @ d.unit
    return PiMaps(
        left=(eps_mu ^ I) @ (I ^ c) @ (delta_eta ^ I),
        right=(I ^ eps_mu) @ (c ^ I) @ (I ^ delta_eta),
        left_bar=(I ^ eps_mu) @ (delta_eta ^ I),
        right_bar=(eps_mu ^ I) @ (I ^ delta_eta),
    )


def check_weak_bialgebra(d: WeakBialgebraData, title: str = "weak bialgebra") -> Report:
    """Algebra and coalgebra axioms plus the three weak compatibility axioms.

    The second form of the counit and unit axioms uses the inverse braiding,
    which for the flip is the flip itself.
    """
    r = Report(title)
    r.add(check_algebra(d.algebra))
    r.add(check_coalgebra(d.coalgebra))
    n = d.dim
    I = identity(n)
    c = flip(n, n)
    mu, delta, eps, eta = d.mult, d.comult, d.counit, d.unit
    r.equal("comult-mult", delta @ mu, (mu ^ mu) @ (I ^ c ^ I) @ (delta ^ delta))
    eps_mu = eps @ mu
    lhs = eps_mu @ (mu ^ I)
    r.equal("counit-weak", lhs, (eps_mu ^ eps_mu) @ (I ^ delta ^ I))
    r.equal("counit-weak-braided", lhs, (eps_mu ^ eps_mu) @ (I ^ (c @ delta) ^ I))
    delta_eta = delta @ eta
    lhs = (delta ^ I) @ delta_eta
    r.equal("unit-weak", lhs, (I ^ mu ^ I) @ (delta_eta ^ delta_eta))
    r.equal("unit-weak-braided", lhs, (I ^ (mu @ c) ^ I) @ (delta_eta ^ delta_eta))
    r.note("inverse braiding taken equal to the flip")
    return r


def _pi_identities(r: Report, p: PiMaps) -> None:
    L, R, Lb, Rb = p.left, p.right, p.left_bar, p.right_bar
    for name, m in (("pi-left", L), ("pi-right", R), ("pi-left-bar", Lb), ("pi-right-bar", Rb)):
        r.equal(f"{name}-idempotent", m @ m, m)
    r.equal("pi-absorb-1", L @ Lb, L)
    r.equal("pi-absorb-2", L @ Rb, Rb)
    r.equal("pi-absorb-3", Lb @ L, Lb)
    r.equal("pi-absorb-4", Rb @ L, L)
    r.equal("pi-absorb-5", R @ Lb, Lb)
    r.equal("pi-absorb-6", R @ Rb, R)
    r.equal("pi-absorb-7", Lb @ R, R)
    r.equal("pi-absorb-8", Rb @ R, Rb)


def compute_pi(d: WeakBialgebraData) -> PiMaps:
    """The four maps of a weak bialgebra, after gating on its axioms and
    confirming idempotency and the absorption identities."""
    gate(check_weak_bialgebra(d))
    p = pi_maps(d)
    r = Report("pi maps")
    _pi_identities(r, p)
    gate(r)
    return p


def check_antipode(d: WeakBialgebraData, title: str = "antipode") -> Report:
    """Antipode axioms, the derived identities between the antipode and the
    four maps, and the anti-(co)multiplicativity of the antipode."""
    r = Report(title)
    if d.antipode is None:
        r.skip("antipode-present", "no antipode supplied")
        return r
    base = check_weak_bialgebra(d)
    r.add(base)
    n = d.dim
    I = identity(n)
    c = flip(n, n)
    lam = d.antipode
    p = pi_maps(d)
    _pi_identities(r, p)
    conv = lambda f, g: convolution(f, g, d.coalgebra, d.algebra)  # noqa: E731
    r.equal("antipode-left", conv(I, lam), p.left)
    r.equal("antipode-right", conv(lam, I), p.right)
    r.equal("antipode-sandwich", conv(conv(lam, I), lam), lam)
    L, R, Lb, Rb = p.left, p.right, p.left_bar, p.right_bar
    r.equal("pi-antipode-1", L @ lam, L @ R)
    r.equal("pi-antipode-2", L @ R, lam @ R)
    r.equal("pi-antipode-3", R @ lam, R @ L)
    r.equal("pi-antipode-4", R @ L, lam @ L)
    r.equal("pi-antipode-5", L, Rb @ lam)
    r.equal("pi-antipode-6", L, lam @ Lb)
    r.equal("pi-antipode-7", R, Lb @ lam)
    r.equal("pi-antipode-8", R, lam @ Rb)
    r.equal("antipode-antimultiplicative", lam @ d.mult, d.mult @ c @ (lam ^ lam))
    r.equal("antipode-anticomultiplicative", d.comult @ lam, (lam ^ lam) @ c @ d.comult)
    r.equal("antipode-unit", lam @ d.unit, d.unit)
    r.equal("antipode-counit", d.counit @ lam, d.counit)
    return r
