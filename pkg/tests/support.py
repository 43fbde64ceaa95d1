"""Shared instances and independent oracles for the test suite.

The oracles here deliberately avoid the package's own algebra: dense
matrices are plain nested lists of Fractions, and permutation groups are
evaluated on actual permutations rather than through composition tables.
"""
from __future__ import annotations

import functools
import itertools
import random
from fractions import Fraction
from pathlib import Path

import weakcross
from weakcross.gpdfile import load_groupoid
from weakcross.groupoid import (
    base_splitting,
    exact_factorize,
    projection_morphisms,
    random_factorization,
    random_groupoid,
)
from weakcross.linalg import LinMap
from weakcross.projection import biproduct_from_projection

FIXTURES = Path(weakcross.__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

#: criterion number -> (passed, detail), filled in by the acceptance suite
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


# ---------------------------------------------------------------- dense oracle

def dense(m: LinMap) -> list[list[Fraction]]:
    return [[Fraction(m.entry(i, j)) for j in range(m.dom)] for i in range(m.cod)]


def dense_mul(a, b, inner, cols=None):
    """Plain triple loop; ``cols`` is needed when ``inner`` is 0."""
    rows = len(a)
    if cols is None:
        cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)] for i in range(rows)]


def dense_kron(a, b, a_shape, b_shape):
    (ra, ca), (rb, cb) = a_shape, b_shape
    return [[a[i // rb][j // cb] * b[i % rb][j % cb] for j in range(ca * cb)] for i in range(ra * rb)]


def dense_flip(m, n):
    """Permutation matrix sending e_i (x) e_j to e_j (x) e_i."""
    out = [[Fraction(0)] * (m * n) for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            out[j * m + i][i * n + j] = Fraction(1)
    return out


def random_linmap(rng: random.Random, dom: int, cod: int, density: float = 0.6, span: int = 3) -> LinMap:
    rows = [[Fraction(rng.randint(-span, span), rng.choice([1, 1, 2, 3])) if rng.random() < density else 0
             for _ in range(dom)] for _ in range(cod)]
    return LinMap.from_rows(rows, dom=dom)


# ----------------------------------------------------------- permutation oracle

S3_PERMS = {
    "e": (1, 2, 3),
    "(12)": (2, 1, 3),
    "(13)": (3, 2, 1),
    "(23)": (1, 3, 2),
    "(123)": (2, 3, 1),
    "(132)": (3, 1, 2),
}


def perm_compose(p, q):
    """(p o q)(x) = p(q(x)) on {1, 2, 3}."""
    return tuple(p[q[x] - 1] for x in range(len(q)))


def perm_name(p):
    return next(k for k, v in S3_PERMS.items() if v == p)


def s3_name(arrow: str) -> str:
    """Arrow names in the shipped fixture call the unit ``id_o``."""
    return "e" if arrow.startswith("id_") else arrow


def brute_factor(target: str, H, V):
    """All (h, v) with h o v = target, computed on permutations."""
    return [(h, v) for h in H for v in V
            if perm_compose(S3_PERMS[s3_name(h)], S3_PERMS[s3_name(v)]) == S3_PERMS[s3_name(target)]]


# -------------------------------------------------------------------- instances

def fixture_path(name: str) -> Path:
    return FIXTURES / name


@functools.lru_cache(maxsize=None)
def load(name: str):
    return load_groupoid(fixture_path(name))


@functools.lru_cache(maxsize=None)
def factorization(name: str):
    gf = load(name)
    return exact_factorize(gf.groupoid, gf.H, gf.V)


@functools.lru_cache(maxsize=None)
def trivial_v(seed: int):
    return random_factorization(random.Random(seed), "trivial-v", max_arrows=8)


def random_groupoids(count: int = 20, base_seed: int = 1000):
    return [random_groupoid(random.Random(base_seed + k)) for k in range(count)]


FLAGSHIP_SEEDS = tuple(range(10))


def flagship_instances():
    """The instance set used by the end-to-end criteria: the two shipped
    group fixtures and ten seeded trivial-V factorizations."""
    out = [("s3.gpd", factorization("s3.gpd")), ("z6.gpd", factorization("z6.gpd"))]
    out += [(f"trivial-v seed {s}", trivial_v(s)) for s in FLAGSHIP_SEEDS]
    return out


@functools.lru_cache(maxsize=None)
def projection_biproduct(label: str):
    """Cached generic pipeline output for one flagship instance."""
    fz = dict(flagship_instances())[label]
    p = projection_morphisms(fz)
    return fz, p, biproduct_from_projection(p, base_splitting(fz))


FLAGSHIP_LABELS = [label for label, _ in flagship_instances()]


def composable_pairs(fz):
    G = fz.G
    return [(h, v) for h, v in itertools.product(fz.H, fz.V) if G.src(h) == G.tgt(v)]


# ------------------------------------------------------- hand-built algebras

def sweedler():
    """Sweedler's four-dimensional Hopf algebra: g^2 = 1, x^2 = 0, xg = -gx,
    g grouplike, x (g, 1)-primitive.  Basis g^a x^b sits at index 2a + b,
    i.e. 1, x, g, gx.  Neither commutative nor cocommutative."""
    from weakcross.structures import AlgebraData, CoalgebraData
    from weakcross.weak_hopf import WeakBialgebraData

    def mult(j):
        (a, b), (c, d) = divmod(j // 4, 2), divmod(j % 4, 2)
        if b + d == 2:
            return []
        return [(2 * ((a + c) % 2) + b + d, (-1) ** (b * c))]

    def comult(j):
        a, b = divmod(j, 2)
        ga = 2 * a
        if b == 0:
            return [(ga * 4 + ga, 1)]
        return [((ga + 1) * 4 + ga, 1), (2 * ((a + 1) % 2) * 4 + ga + 1, 1)]

    mu = LinMap.from_function(16, 4, mult)
    eta = LinMap.from_rows([[1], [0], [0], [0]])
    delta = LinMap.from_function(4, 16, comult)
    eps = LinMap.from_rows([[1, 0, 1, 0]])
    antipode = LinMap.from_rows([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0]])
    labels = ("1", "x", "g", "gx")
    return WeakBialgebraData(AlgebraData(4, eta, mu, labels), CoalgebraData(4, eps, delta, labels), antipode)


def group_algebra_z2():
    """Q[Z2] on the basis 1, g."""
    from weakcross.linalg import identity
    from weakcross.structures import AlgebraData, CoalgebraData
    from weakcross.weak_hopf import WeakBialgebraData

    mu = LinMap.from_function(4, 2, lambda j: [((j // 2 + j % 2) % 2, 1)])
    delta = LinMap.from_function(2, 4, lambda j: [(3 * j, 1)])
    return WeakBialgebraData(
        AlgebraData(2, LinMap.from_rows([[1], [0]]), mu, ("1", "g")),
        CoalgebraData(2, LinMap.from_rows([[1, 1]]), delta, ("1", "g")),
        identity(2),
    )


def sweedler_projection():
    """The Hopf projection of Sweedler's algebra onto its grouplikes."""
    from weakcross.projection import WeakProjection

    f = LinMap.from_rows([[1, 0], [0, 0], [0, 1], [0, 0]])
    g = LinMap.from_rows([[1, 0, 0, 0], [0, 0, 1, 0]])
    return WeakProjection(sweedler(), group_algebra_z2(), f, g)


def dual(d):
    """The linear dual of a finite weak bialgebra: transpose every structure
    map and exchange the algebra and coalgebra roles."""
    from weakcross.structures import AlgebraData, CoalgebraData
    from weakcross.weak_hopf import WeakBialgebraData

    a = AlgebraData(d.dim, d.counit.T, d.comult.T)
    c = CoalgebraData(d.dim, d.unit.T, d.mult.T)
    return WeakBialgebraData(a, c, None if d.antipode is None else d.antipode.T)


def tensor_bialgebra(C, A):
    """C (x) A with componentwise structure and flips in the middle."""
    from weakcross.linalg import flip, identity
    from weakcross.structures import AlgebraData, CoalgebraData
    from weakcross.weak_hopf import WeakBialgebraData

    c, a = C.dim, A.dim
    mid = identity(c) ^ flip(a, c) ^ identity(a)
    alg = AlgebraData(c * a, C.unit ^ A.unit, (C.mult ^ A.mult) @ mid)
    coalg = CoalgebraData(c * a, C.counit ^ A.counit, (identity(c) ^ flip(c, a) ^ identity(a)) @ (C.comult ^ A.comult))
    return WeakBialgebraData(alg, coalg)


def tensor_biproduct(C, A):
    """C (x) A as a biproduct whose every twist is a flip; nabla is the identity."""
    from weakcross.biproduct import BiproductData
    from weakcross.crossed_coproduct import LEFT, CoCrossedData
    from weakcross.crossed_product import RIGHT, CrossedData
    from weakcross.linalg import flip, identity

    c, a = C.dim, A.dim
    ps = CrossedData(A.algebra, c, flip(a, c), C.mult ^ A.unit, C.unit ^ A.unit, RIGHT)
    cs = CoCrossedData(C.coalgebra, a, flip(c, a), C.counit ^ A.comult, C.counit ^ A.counit, LEFT)
    return BiproductData(ps, cs, identity(c * a), tensor_bialgebra(C, A), None, A)


# ------------------------------------------------------ crossed-data helpers

def tensor_crossed_data(A, V):
    """The plain tensor product algebra ``A (x) V`` presented as crossed data
    in the left layout: psi is the flip and sigma multiplies in ``V``."""
    from weakcross.crossed_product import LEFT, CrossedData
    from weakcross.linalg import flip

    a, v = A.dim, V.dim
    return CrossedData(A, v, flip(v, a), A.unit ^ V.mult, A.unit ^ V.unit, LEFT)


def mirror_crossed(d):
    """Right-layout crossed data over ``A`` read as left-layout data over the
    opposite algebra, by reversing every tensor word."""
    from weakcross.crossed_product import LEFT, CrossedData
    from weakcross.linalg import flip
    from weakcross.structures import AlgebraData

    A = d.algebra
    a, v = A.dim, d.vdim
    op = AlgebraData(a, A.unit, A.mult @ flip(a, a))
    F = flip
    nu = None if d.preunit is None else F(v, a) @ d.preunit
    return CrossedData(op, v, F(v, a) @ d.psi @ F(v, a), F(v, a) @ d.sigma @ F(v, v), nu, LEFT)


def groupoid_psi_bar(fz):
    """``h (x) v -> v' (x) h'`` where ``h o v = v' o h'`` is the reverse
    factorization; zero on non-composable pairs."""
    from weakcross.groupoid import reverse_factor

    G, H, V = fz.G, fz.H, fz.V
    nh, nv = len(H), len(V)
    hpos = {h: k for k, h in enumerate(H)}
    vpos = {v: k for k, v in enumerate(V)}

    def image(j):
        h, v = H[j // nv], V[j % nv]
        if G.src(h) != G.tgt(v):
            return []
        v2, h2 = reverse_factor(fz, G.comp(h, v))
        return [(vpos[v2] * nh + hpos[h2], 1)]

    return LinMap.from_function(nh * nv, nv * nh, image)


def groupoid_chi_bar(fz):
    """``v (x) h -> h (x) v`` on composable pairs, zero elsewhere."""
    G, H, V = fz.G, fz.H, fz.V
    nh, nv = len(H), len(V)

    def image(j):
        v, h = V[j // nh], H[j % nh]
        return [((j % nh) * nv + j // nh, 1)] if G.src(h) == G.tgt(v) else []

    return LinMap.from_function(nv * nh, nh * nv, image)


def crossed_fixtures():
    """Twenty crossed-product fixtures that pass every condition: the
    product sides of the flagship pipelines (right layout), four of them
    switched to the left layout, two mirrored over the opposite algebra, and
    two plain tensor product algebras."""
    from weakcross.crossed_product import normalize_sigma, switch_sides
    from weakcross.groupoid import cyclic_group, group_groupoid, groupoid_algebra

    out = []
    for label in FLAGSHIP_LABELS:
        out.append((f"{label} right", projection_biproduct(label)[2].data.product_side))
    for label in ("s3.gpd", "trivial-v seed 0", "trivial-v seed 5", "trivial-v seed 9"):
        fz, _, pb = projection_biproduct(label)
        switched, _ = switch_sides(pb.data.product_side, groupoid_psi_bar(fz))
        out.append((f"{label} switched", switched))
    for label in ("s3.gpd", "trivial-v seed 7"):
        out.append((f"{label} mirrored", mirror_crossed(normalize_sigma(projection_biproduct(label)[2].data.product_side))))
    z2 = groupoid_algebra(group_groupoid(cyclic_group(2))).algebra
    z3 = groupoid_algebra(group_groupoid(cyclic_group(3))).algebra
    out.append(("sweedler (x) Z3", tensor_crossed_data(sweedler().algebra, z3)))
    out.append(("Z2 (x) Z2", tensor_crossed_data(z2, z2)))
    return out
