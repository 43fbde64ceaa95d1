"""Weak crossed products of an algebra ``A`` with a space ``V``.

Two layouts are supported.  In the ``"left"`` layout the product lives on
``A (x) V`` with ``psi: V (x) A -> A (x) V`` and ``sigma: V (x) V -> A (x) V``.
In the ``"right"`` layout it lives on ``V (x) A`` with
``psi: A (x) V -> V (x) A`` and ``sigma: V (x) V -> V (x) A``.  Every formula
is written out for both layouts; nothing is obtained by conjugating with the
flip, so comparing the two sides (:func:`switch_sides`) is a real test.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .linalg import LinMap, ShapeError, Splitting, identity, split_idempotent
from .report import Report, gate
from .structures import (
    ActionData,
    AlgebraData,
    check_algebra,
    check_algebra_morphism,
    check_linearity,
)

__all__ = [
    "LEFT",
    "RIGHT",
    "CrossedData",
    "CrossedProduct",
    "Decomposition",
    "crossed_nabla",
    "crossed_product_map",
    "preunit_beta",
    "check_crossed_data",
    "normalize_sigma",
    "check_preunit",
    "build_crossed_product",
    "recover_psi_sigma",
    "decompose_algebra",
    "check_universal",
    "switch_sides",
]

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class CrossedData:
    algebra: AlgebraData
    vdim: int
    psi: LinMap
    sigma: LinMap
    preunit: LinMap | None = None
    orientation: str = LEFT

    def __post_init__(self):
        if self.orientation not in (LEFT, RIGHT):
            raise ValueError("orientation must be 'left' or 'right'")
        a, v = self.algebra.dim, self.vdim
        n = a * v
        if self.psi.shape != (n, n):
            raise ShapeError(f"psi should be {n}->{n}, got {self.psi.dom}->{self.psi.cod}")
        if self.sigma.shape != (n, v * v):
            raise ShapeError(f"sigma should be {v * v}->{n}, got {self.sigma.dom}->{self.sigma.cod}")
        if self.preunit is not None and self.preunit.shape != (n, 1):
            raise ShapeError(f"preunit should be 1->{n}")

    @property
    def dim(self) -> int:
        return self.algebra.dim * self.vdim

    def pieces(self):
        """Identity on A, identity on V, multiplication and unit of A."""
        A = self.algebra
        return A.id, identity(self.vdim), A.mult, A.unit


def crossed_nabla(d: CrossedData) -> LinMap:
    Ia, Iv, mu, eta = d.pieces()
    if d.orientation == LEFT:
        return (mu ^ Iv) @ (Ia ^ d.psi) @ (Ia ^ Iv ^ eta)
    return (Iv ^ mu) @ ((d.psi @ (eta ^ Iv)) ^ Ia)


def crossed_product_map(d: CrossedData) -> LinMap:
    """The product on ``A (x) V`` (or ``V (x) A``) defined by ``psi, sigma``."""
    Ia, Iv, mu, _ = d.pieces()
    if d.orientation == LEFT:
        return (mu ^ Iv) @ (mu ^ d.sigma) @ (Ia ^ d.psi ^ Iv)
    return (Iv ^ mu) @ (d.sigma ^ mu) @ (Iv ^ d.psi ^ Ia)


def preunit_beta(d: CrossedData, preunit: LinMap | None = None) -> LinMap:
    """The map ``A -> A (x) V`` obtained by multiplying against the preunit."""
    nu = d.preunit if preunit is None else preunit
    Ia, Iv, mu, _ = d.pieces()
    if d.orientation == LEFT:
        return (mu ^ Iv) @ (Ia ^ nu)
    return (Iv ^ mu) @ (nu ^ Ia)


def _action(d: CrossedData) -> ActionData:
    Ia, Iv, mu, _ = d.pieces()
    if d.orientation == LEFT:
        return ActionData(d.dim, mu ^ Iv, "left-module", d.algebra)
    return ActionData(d.dim, Iv ^ mu, "right-module", d.algebra)


def normalize_sigma(d: CrossedData) -> CrossedData:
    return replace(d, sigma=crossed_nabla(d) @ d.sigma)


def check_crossed_data(d: CrossedData, title: str = "crossed data") -> Report:
    """Compatibility of ``psi`` with the multiplication, the induced
    idempotent, and the twisted and cocycle conditions (for the normalized
    ``sigma``)."""
    r = Report(title)
    Ia, Iv, mu, _ = d.pieces()
    psi = d.psi
    if d.orientation == LEFT:
        r.equal("psi-multiplicative", (mu ^ Iv) @ (Ia ^ psi) @ (psi ^ Ia), psi @ (Iv ^ mu))
    else:
        r.equal("psi-multiplicative", (Iv ^ mu) @ (psi ^ Ia) @ (Ia ^ psi), psi @ (mu ^ Iv))
    nabla = crossed_nabla(d)
    r.equal("nabla-idempotent", nabla @ nabla, nabla)
    act = _action(d)
    r.add(check_linearity(nabla, act, act, "nabla linear"))
    r.equal("nabla-psi", nabla @ psi, psi)
    sigma = nabla @ d.sigma
    if sigma != d.sigma:
        r.note("sigma replaced by nabla o sigma")
        r.facts["sigma_normalized"] = True
    else:
        r.facts["sigma_normalized"] = False
    if d.orientation == LEFT:
        r.equal("twisted",
                (mu ^ Iv) @ (Ia ^ psi) @ (sigma ^ Ia),
                (mu ^ Iv) @ (Ia ^ sigma) @ (psi ^ Iv) @ (Iv ^ psi))
        r.equal("cocycle",
                (mu ^ Iv) @ (Ia ^ sigma) @ (sigma ^ Iv),
                (mu ^ Iv) @ (Ia ^ sigma) @ (psi ^ Iv) @ (Iv ^ sigma))
    else:
        r.equal("twisted",
                (Iv ^ mu) @ (sigma ^ Ia) @ (Iv ^ psi) @ (psi ^ Iv),
                (Iv ^ mu) @ (psi ^ Ia) @ (Ia ^ sigma))
        r.equal("cocycle",
                (Iv ^ mu) @ (sigma ^ Ia) @ (Iv ^ sigma),
                (Iv ^ mu) @ (sigma ^ Ia) @ (Iv ^ psi) @ (sigma ^ Iv))
    r.equal("sigma-normalized", nabla @ sigma, sigma)
    return r


def check_preunit(d: CrossedData, title: str = "preunit") -> Report:
    """The three conditions characterising a preunit of the crossed product,
    plus the defining preunit identities checked directly."""
    r = Report(title)
    if d.preunit is None:
        r.skip("preunit-present", "no preunit supplied")
        return r
    Ia, Iv, mu, eta = d.pieces()
    psi, sigma, nu = d.psi, crossed_nabla(d) @ d.sigma, d.preunit
    nabla = crossed_nabla(d)
    beta = preunit_beta(d)
    if d.orientation == LEFT:
        target = nabla @ (eta ^ Iv)
        r.equal("pre1", (mu ^ Iv) @ (Ia ^ sigma) @ (psi ^ Iv) @ (Iv ^ nu), target)
        r.equal("pre2", (mu ^ Iv) @ (Ia ^ sigma) @ (nu ^ Iv), target)
        r.equal("pre3", (mu ^ Iv) @ (Ia ^ psi) @ (nu ^ Ia), beta)
    else:
        target = nabla @ (Iv ^ eta)
        r.equal("pre1", (Iv ^ mu) @ (sigma ^ Ia) @ (Iv ^ psi) @ (nu ^ Iv), target)
        r.equal("pre2", (Iv ^ mu) @ (sigma ^ Ia) @ (Iv ^ nu), target)
        r.equal("pre3", (Iv ^ mu) @ (psi ^ Ia) @ (Ia ^ nu), beta)
    m = crossed_product_map(replace(d, sigma=sigma))
    _preunit_laws(r, m, nu, d.dim)
    r.equal("nabla-from-preunit", _nabla_from_preunit(m, nu, d.dim), nabla)
    return r


def _preunit_laws(r: Report, m: LinMap, nu: LinMap, n: int) -> None:
    I = identity(n)
    right = m @ (I ^ nu)
    r.equal("preunit-two-sided", right, m @ (nu ^ I))
    r.equal("preunit-absorbs", right, m @ (I ^ (m @ (nu ^ nu))))


def _nabla_from_preunit(m: LinMap, nu: LinMap, n: int) -> LinMap:
    return m @ (identity(n) ^ nu)


@dataclass(frozen=True)
class CrossedProduct:
    """Everything derived from crossed data.

    ``product`` is the (normalized) multiplication on the full tensor space;
    ``image_product`` and ``image_unit`` give the algebra structure on the
    image of ``nabla`` determined by ``splitting``.
    """

    data: CrossedData
    nabla: LinMap
    product: LinMap
    splitting: Splitting
    image_product: LinMap
    image_unit: LinMap | None
    beta: LinMap | None
    report: Report

    @property
    def image_algebra(self) -> AlgebraData | None:
        if self.image_unit is None:
            return None
        return AlgebraData(self.splitting.image_dim, self.image_unit, self.image_product)


def build_crossed_product(d: CrossedData, splitting: Splitting | None = None,
                          title: str = "crossed product") -> CrossedProduct:
    """Normalize ``sigma``, build the product and split the idempotent.

    Raises :class:`~weakcross.report.ConditionError` if the data fail their
    conditions or the supplied preunit fails any preunit condition.
    """
    r = Report(title)
    r.add(check_crossed_data(d))
    gate(r)
    d = normalize_sigma(d)
    nabla = crossed_nabla(d)
    m = crossed_product_map(d)
    n = d.dim
    I = identity(n)
    r.equal("associative", m @ (m ^ I), m @ (I ^ m))
    r.equal("product-normalized-left", nabla @ m, m)
    r.equal("product-normalized-right", m @ (nabla ^ nabla), m)
    Ia, Iv, mu, _ = d.pieces()
    if d.orientation == LEFT:
        r.equal("product-linear", m @ (mu ^ Iv ^ Ia ^ Iv), (mu ^ Iv) @ (Ia ^ m))
    else:
        r.equal("product-linear", m @ (Iv ^ Ia ^ Iv ^ mu), (Iv ^ mu) @ (m ^ Ia))
    if splitting is None:
        splitting = split_idempotent(nabla)
    else:
        r.require("splitting-matches", splitting.is_valid_for(nabla))
    inj, proj = splitting.injection, splitting.projection
    image_product = proj @ m @ (inj ^ inj)
    unit = beta = None
    if d.preunit is not None:
        r.add(check_preunit(d))
        unit = proj @ d.preunit
        beta = preunit_beta(d)
        r.equal("beta-unit", beta @ d.algebra.unit, d.preunit)
        r.equal("beta-multiplicative", beta @ mu, m @ (beta ^ beta))
        img = AlgebraData(splitting.image_dim, unit, image_product)
        r.add(check_algebra(img, "image algebra"))
        r.add(check_algebra_morphism(proj @ beta, d.algebra, img, "A into the image"))
    gate(r)
    return CrossedProduct(d, nabla, m, splitting, image_product, unit, beta, r)


def recover_psi_sigma(product: LinMap, algebra: AlgebraData, vdim: int, preunit: LinMap,
                      orientation: str = LEFT) -> tuple[LinMap, LinMap, Report]:
    """Read ``psi`` and ``sigma`` off an associative, ``A``-linear product with
    a preunit.  The report carries the hypotheses and the round trip."""
    a, v = algebra.dim, vdim
    n = a * v
    if product.shape != (n, n * n) or preunit.shape != (n, 1):
        raise ShapeError("product or preunit has the wrong shape")
    r = Report("recover psi and sigma")
    I = identity(n)
    Ia, Iv, mu, eta = algebra.id, identity(v), algebra.mult, algebra.unit
    r.equal("associative", product @ (product ^ I), product @ (I ^ product))
    if orientation == LEFT:
        r.equal("product-linear", product @ (mu ^ Iv ^ Ia ^ Iv), (mu ^ Iv) @ (Ia ^ product))
        beta = (mu ^ Iv) @ (Ia ^ preunit)
        psi = product @ (eta ^ Iv ^ beta)
        sigma = product @ (eta ^ Iv ^ eta ^ Iv)
    else:
        r.equal("product-linear", product @ (Iv ^ Ia ^ Iv ^ mu), (Iv ^ mu) @ (product ^ Ia))
        beta = (Iv ^ mu) @ (preunit ^ Ia)
        psi = product @ (beta ^ Iv ^ eta)
        sigma = product @ (Iv ^ eta ^ Iv ^ eta)
    _preunit_laws(r, product, preunit, n)
    r.equal("preunit-idempotent", product @ (preunit ^ preunit), preunit)
    nabla = _nabla_from_preunit(product, preunit, n)
    r.equal("product-normalized", product @ (nabla ^ nabla), product)
    d = CrossedData(algebra, v, psi, sigma, preunit, orientation)
    rebuilt = Report("round trip")
    rebuilt.add(check_crossed_data(d))
    rebuilt.add(check_preunit(d))
    if rebuilt.ok:
        rebuilt.equal("product-recovered", crossed_product_map(normalize_sigma(d)), product)
    r.add(rebuilt)
    return psi, sigma, r


def _omega_bar(B: AlgebraData, iA: LinMap, iV: LinMap, orientation: str) -> LinMap:
    return B.mult @ ((iA ^ iV) if orientation == LEFT else (iV ^ iA))


@dataclass(frozen=True)
class Decomposition:
    data: CrossedData
    crossed: CrossedProduct
    omega: LinMap
    omega_inverse: LinMap
    report: Report


def decompose_algebra(B: AlgebraData, A: AlgebraData, vdim: int, iA: LinMap, iV: LinMap,
                      what: LinMap, orientation: str = LEFT,
                      splitting: Splitting | None = None) -> Decomposition:
    """Present ``B`` as a crossed product of ``A`` and ``V``.

    ``iA: A -> B`` must be an algebra morphism, ``iV: V -> B`` a linear map and
    ``what: B -> A (x) V`` an ``A``-linear section of ``b = mu_B(iA (x) iV)``.
    """
    r = Report("decompose algebra")
    r.add(check_algebra_morphism(iA, A, B, "iA"))
    Iv = identity(vdim)
    n = A.dim * vdim
    if orientation == LEFT:
        on_B = ActionData(B.dim, B.mult @ (iA ^ B.id), "left-module", A)
        on_T = ActionData(n, A.mult ^ Iv, "left-module", A)
    else:
        on_B = ActionData(B.dim, B.mult @ (B.id ^ iA), "right-module", A)
        on_T = ActionData(n, Iv ^ A.mult, "right-module", A)
    r.add(check_linearity(what, on_B, on_T, "section linear"))
    bar = _omega_bar(B, iA, iV, orientation)
    r.equal("section", bar @ what, B.id)
    gate(r)
    big_omega = what @ bar
    product = what @ B.mult @ (bar ^ bar)
    nu = what @ B.unit
    psi, sigma, rec = recover_psi_sigma(product, A, vdim, nu, orientation)
    r.add(rec)
    gate(r)
    d = CrossedData(A, vdim, psi, sigma, nu, orientation)
    cp = build_crossed_product(d, splitting)
    r.add(cp.report)
    r.equal("nabla-is-omega", cp.nabla, big_omega)
    r.equal("product-matches", cp.product, product)
    inj, proj = cp.splitting.injection, cp.splitting.projection
    omega = bar @ inj
    omega_inv = proj @ what
    r.equal("omega-right-inverse", omega @ omega_inv, B.id)
    r.equal("omega-left-inverse", omega_inv @ omega, identity(cp.splitting.image_dim))
    r.equal("omega-through-projection", omega @ proj, bar)
    r.add(check_algebra_morphism(omega, cp.image_algebra, B, "omega"))
    gate(r)
    return Decomposition(d, cp, omega, omega_inv, r)


def check_universal(cp: CrossedProduct, B: AlgebraData, iA: LinMap, iV: LinMap,
                    title: str = "universal property") -> Report:
    """Whether ``iA`` and ``iV`` induce an algebra morphism out of the image
    of the crossed product, and whether that morphism restricts correctly."""
    d = cp.data
    r = Report(title)
    r.add(check_algebra_morphism(iA, d.algebra, B, "iA"))
    bar = _omega_bar(B, iA, iV, d.orientation)
    r.equal("universal-preunit", bar @ d.preunit, B.unit)
    if d.orientation == LEFT:
        r.equal("universal-psi", bar @ d.psi, B.mult @ (iV ^ iA))
        r.equal("universal-sigma", bar @ d.sigma, B.mult @ (iV ^ iV))
    else:
        r.equal("universal-psi", bar @ d.psi, B.mult @ (iA ^ iV))
        r.equal("universal-sigma", bar @ d.sigma, B.mult @ (iV ^ iV))
    omega = bar @ cp.splitting.injection
    r.facts["omega"] = omega
    r.add(check_algebra_morphism(omega, cp.image_algebra, B, "omega"))
    proj = cp.splitting.projection
    _, Iv, _, eta = d.pieces()
    r.equal("omega-restricts-to-A", omega @ proj @ cp.beta, iA)
    v_in = (eta ^ Iv) if d.orientation == LEFT else (Iv ^ eta)
    r.equal("omega-restricts-to-V", omega @ proj @ v_in, iV)
    return r


def switch_sides(d: CrossedData, psi_bar: LinMap) -> tuple[CrossedData, Report]:
    """Move a crossed product to the other side of ``V`` along an
    invertible-on-the-image twist ``psi_bar`` going the opposite way to
    ``d.psi``.  Returns the new data and a report comparing the products."""
    r = Report("switch sides")
    Ia, Iv, mu, eta = d.pieces()
    other = RIGHT if d.orientation == LEFT else LEFT
    d = normalize_sigma(d)
    if psi_bar.shape != d.psi.shape:
        raise ShapeError("psi_bar must have the shape of psi")
    new = CrossedData(d.algebra, d.vdim, psi_bar, psi_bar @ d.sigma,
                      None if d.preunit is None else psi_bar @ d.preunit, other)
    r.add(check_crossed_data(new, "switched data"))
    r.equal("psi-after-psi-bar", d.psi @ psi_bar, crossed_nabla(d))
    r.equal("psi-bar-after-psi", psi_bar @ d.psi, crossed_nabla(new))
    m_old = crossed_product_map(d)
    m_new = crossed_product_map(new)
    r.equal("products-correspond", m_new, psi_bar @ m_old @ (d.psi ^ d.psi))
    if d.preunit is not None:
        r.add(check_preunit(new, "switched preunit"))
    return new, r
