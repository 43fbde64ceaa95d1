"""Finite groupoids, their groupoid algebras and exact factorizations.

Composition is written ``later o earlier``: ``comp(tau, sigma)`` is defined
exactly when the source of ``tau`` is the target of ``sigma``.  Basis vectors of
every algebra built here follow arrow declaration order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .linalg import LinMap, Splitting, identity
from .projection import MORPHISM_NAMES, WeakProjection, biproduct_from_projection
from .report import Report, gate
from .structures import AlgebraData, CoalgebraData
from .weak_hopf import WeakBialgebraData, check_antipode, pi_maps

__all__ = [
    "Arrow",
    "Groupoid",
    "FiniteGroup",
    "Factorization",
    "NotWideError",
    "NotExactError",
    "cyclic_group",
    "symmetric_group_3",
    "group_groupoid",
    "pair_group_groupoid",
    "disjoint_union",
    "check_groupoid",
    "groupoid_algebra",
    "check_groupoid_hopf",
    "exact_factorize",
    "projection_morphisms",
    "base_splitting",
    "oracle_biproduct",
    "compare_oracle_generic",
    "reverse_factor",
    "random_groupoid",
    "random_factorization",
]


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


class Groupoid:
    """A finite groupoid given by explicit tables.

    ``compose`` maps ``(later, earlier)`` to the composite's name, ``inverse``
    maps a name to its inverse's name and ``identities`` maps each object to
    the name of its identity arrow.  Tables may be incomplete; whether they
    really describe a groupoid is decided by :func:`check_groupoid`.
    """

    def __init__(self, objects: Sequence[str], arrows: Sequence[Arrow],
                 compose: dict[tuple[str, str], str], inverse: dict[str, str],
                 identities: dict[str, str]):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.index = {a.name: k for k, a in enumerate(self.arrows)}
        if len(self.index) != len(self.arrows):
            raise ValueError("arrow names must be unique")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object names must be unique")
        objs = set(self.objects)
        for a in self.arrows:
            if a.src not in objs or a.tgt not in objs:
                raise ValueError(f"arrow {a.name} has an unknown endpoint")
        self.compose_table = dict(compose)
        self.inverse_map = dict(inverse)
        self.identities = dict(identities)
        for (x, y), z in self.compose_table.items():
            for n in (x, y, z):
                if n not in self.index:
                    raise ValueError(f"composition mentions unknown arrow {n}")
        for x, y in self.inverse_map.items():
            if x not in self.index or y not in self.index:
                raise ValueError("inverse table mentions an unknown arrow")
        if set(self.identities) != objs or any(n not in self.index for n in self.identities.values()):
            raise ValueError("every object needs a declared identity arrow")

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.arrows]

    def arrow(self, name: str) -> Arrow:
        return self.arrows[self.index[name]]

    def src(self, name: str) -> str:
        return self.arrows[self.index[name]].src

    def tgt(self, name: str) -> str:
        return self.arrows[self.index[name]].tgt

    def composable(self, later: str, earlier: str) -> bool:
        return self.src(later) == self.tgt(earlier)

    def comp(self, later: str, earlier: str) -> str | None:
        """The composite, or ``None`` if undefined."""
        return self.compose_table.get((later, earlier))

    def inv(self, name: str) -> str | None:
        return self.inverse_map.get(name)

    def identity_of(self, obj: str) -> str:
        return self.identities[obj]

    def is_identity(self, name: str) -> bool:
        return self.identities.get(self.src(name)) == name

    def subgroupoid(self, names: Iterable[str]) -> "Groupoid":
        keep = set(names)
        unknown = keep - set(self.index)
        if unknown:
            raise ValueError(f"unknown arrows {sorted(unknown)}")
        arrows = [a for a in self.arrows if a.name in keep]
        comp = {k: v for k, v in self.compose_table.items() if k[0] in keep and k[1] in keep and v in keep}
        inv = {k: v for k, v in self.inverse_map.items() if k in keep and v in keep}
        return Groupoid(self.objects, arrows, comp, inv, self.identities)


# finite groups -------------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    names: tuple[str, ...]
    table: dict  # (a, b) -> a*b
    unit: str

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inv(self, a: str) -> str:
        return next(b for b in self.names if self.table[(a, b)] == self.unit)

    def __len__(self) -> int:
        return len(self.names)


def cyclic_group(n: int, prefix: str = "r") -> FiniteGroup:
    names = tuple(f"{prefix}{k}" for k in range(n))
    table = {(names[a], names[b]): names[(a + b) % n] for a in range(n) for b in range(n)}
    return FiniteGroup(names, table, names[0])


def _cycle_name(p: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(str(k + 1))
            k = p[k]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def symmetric_group_3() -> FiniteGroup:
    perms = list(itertools.permutations(range(3)))
    name = {p: _cycle_name(p) for p in perms}
    # (p * q)(i) = p(q(i)): apply q first
    table = {(name[p], name[q]): name[tuple(p[q[i]] for i in range(3))] for p in perms for q in perms}
    order = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    return FiniteGroup(tuple(order), table, "e")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    names = tuple(f"{a}{b}" for a in g1.names for b in g2.names)
    pair = {f"{a}{b}": (a, b) for a in g1.names for b in g2.names}
    table = {}
    for x in names:
        for y in names:
            (a1, b1), (a2, b2) = pair[x], pair[y]
            table[(x, y)] = f"{g1.mul(a1, a2)}{g2.mul(b1, b2)}"
    return FiniteGroup(names, table, f"{g1.unit}{g2.unit}")


def pair_group_groupoid(objects: Sequence[str], group: FiniteGroup,
                        name: Callable[[str, str, str], str] | None = None) -> Groupoid:
    """The connected groupoid with arrows ``(y, k, x): x -> y`` for objects
    ``x, y`` and group elements ``k``, composed by multiplying labels."""
    def default(y, k, x):
        if x == y and k == group.unit:
            return f"id_{x}"
        return f"{k}_{x}{y}" if len(objects) > 1 else k
    name = name or default
    arrows, key = [], {}
    for x in objects:
        for y in objects:
            for k in group.names:
                n = name(y, k, x)
                arrows.append(Arrow(n, x, y))
                key[n] = (y, k, x)
    # identities first, in object order, then the rest in generation order
    ids = [name(x, group.unit, x) for x in objects]
    arrows.sort(key=lambda a: (0, ids.index(a.name)) if a.name in ids else (1, 0))
    comp, inv = {}, {}
    for a in arrows:
        z, k2, y = key[a.name]
        inv[a.name] = name(y, group.inv(k2), z)
        for b in arrows:
            y2, k1, x = key[b.name]
            if y2 == y:
                comp[(a.name, b.name)] = name(z, group.mul(k2, k1), x)
    return Groupoid(objects, arrows, comp, inv, {x: name(x, group.unit, x) for x in objects})


def group_groupoid(group: FiniteGroup, obj: str = "o") -> Groupoid:
    """A group as a one-object groupoid; the unit becomes ``id_<obj>``."""
    rename = lambda k: f"id_{obj}" if k == group.unit else k  # noqa: E731
    return pair_group_groupoid([obj], group, lambda y, k, x: rename(k))


def disjoint_union(*parts: Groupoid) -> Groupoid:
    objects, arrows, comp, inv, ids = [], [], {}, {}, {}
    for g in parts:
        objects += g.objects
        arrows += g.arrows
        comp.update(g.compose_table)
        inv.update(g.inverse_map)
        ids.update(g.identities)
    return Groupoid(objects, arrows, comp, inv, ids)


# axioms -------------------------------------------------------------------

def check_groupoid(G: Groupoid, title: str = "groupoid") -> Report:
    r = Report(title)
    bad_ids = [x for x, n in G.identities.items() if G.src(n) != x or G.tgt(n) != x]
    r.require("identities", not bad_ids, {"objects": bad_ids})
    names = G.names
    missing = next(((a, b) for a in names for b in names if G.composable(a, b) and G.comp(a, b) is None), None)
    r.require("composition-total", missing is None, {"pair": list(missing or ())})
    stray = next((k for k in G.compose_table if not G.composable(*k)), None)
    r.require("composition-domain", stray is None, {"pair": list(stray or ())})
    wrong = next(((a, b) for (a, b), c in G.compose_table.items()
                  if G.src(c) != G.src(b) or G.tgt(c) != G.tgt(a)), None)
    r.require("composition-endpoints", wrong is None, {"pair": list(wrong or ())})
    unit_fail = None
    for a in names:
        if G.comp(G.identity_of(G.tgt(a)), a) not in (a, None) or G.comp(a, G.identity_of(G.src(a))) not in (a, None):
            unit_fail = a
            break
    r.require("unit-laws", unit_fail is None, {"arrow": unit_fail})
    assoc_fail = None
    for a in names:
        for b in names:
            ab = G.comp(a, b)
            if ab is None:
                continue
            for c in names:
                bc = G.comp(b, c)
                if bc is None:
                    continue
                left, right = G.comp(ab, c), G.comp(a, bc)
                if left != right:
                    assoc_fail = [a, b, c]
                    break
            if assoc_fail:
                break
        if assoc_fail:
            break
    r.require("associativity", assoc_fail is None, {"triple": assoc_fail})
    inv_fail = None
    for a in names:
        b = G.inv(a)
        if b is None or G.comp(b, a) != G.identity_of(G.src(a)) or G.comp(a, b) != G.identity_of(G.tgt(a)):
            inv_fail = a
            break
    r.require("inverses", inv_fail is None, {"arrow": inv_fail})
    return r


def groupoid_algebra(G: Groupoid) -> WeakBialgebraData:
    """The groupoid algebra with grouplike arrows and inversion as antipode."""
    gate(check_groupoid(G))
    n = len(G)
    idx = G.index
    names = G.names
    unit = LinMap.from_function(1, n, lambda _: [(idx[i], 1) for i in G.identities.values()])

    def product(j):
        a, b = names[j // n], names[j % n]
        c = G.comp(a, b)
        return [] if c is None else [(idx[c], 1)]

    mult = LinMap.from_function(n * n, n, product)
    comult = LinMap.from_function(n, n * n, lambda j: [(j * n + j, 1)])
    counit = LinMap.from_function(n, 1, lambda j: [(0, 1)])
    antipode = LinMap.from_function(n, n, lambda j: [(idx[G.inv(names[j])], 1)])
    labels = tuple(names)
    return WeakBialgebraData(AlgebraData(n, unit, mult, labels), CoalgebraData(n, counit, comult, labels), antipode)


def check_groupoid_hopf(G: Groupoid, title: str = "groupoid algebra") -> Report:
    """Groupoid axioms, then the weak Hopf suite on its algebra together with
    the explicit source and target formulas and involutivity."""
    r = Report(title)
    gr = r.add(check_groupoid(G))
    if not gr.ok:
        r.skip("weak-hopf-suite", "groupoid axioms fail")
        return r
    d = groupoid_algebra(G)
    r.add(check_antipode(d, "weak Hopf"))
    n = len(G)
    idx, names = G.index, G.names
    target = LinMap.from_function(n, n, lambda j: [(idx[G.identity_of(G.tgt(names[j]))], 1)])
    source = LinMap.from_function(n, n, lambda j: [(idx[G.identity_of(G.src(names[j]))], 1)])
    p = pi_maps(d)
    r.equal("pi-left-is-target", p.left, target)
    r.equal("pi-right-is-source", p.right, source)
    r.equal("antipode-involutive", d.antipode @ d.antipode, identity(n))
    r.facts["counit_of_unit"] = (d.counit @ d.unit).entry(0, 0)
    return r


# factorizations -------------------------------------------------------------

class NotWideError(ValueError):
    def __init__(self, which: str, detail: str):
        super().__init__(f"{which} is not a wide subgroupoid: {detail}")
        self.which = which


class NotExactError(ValueError):
    """Some arrows do not decompose uniquely.  ``counts`` maps every such
    arrow to its number of decompositions; ``arrow`` is the one reported,
    an arrow with no decomposition when there is one."""

    def __init__(self, arrow: str, count: int, counts: dict[str, int] | None = None):
        super().__init__(f"arrow {arrow} has {count} factorizations, expected exactly one")
        self.arrow = arrow
        self.count = count
        self.counts = counts or {arrow: count}


@dataclass(frozen=True)
class Factorization:
    G: Groupoid
    H: tuple[str, ...]
    V: tuple[str, ...]
    table: dict  # arrow -> (h, v) with arrow = h o v

    def part_h(self, name: str) -> str:
        return self.table[name][0]

    def part_v(self, name: str) -> str:
        return self.table[name][1]


def _check_wide(G: Groupoid, names: Sequence[str], which: str) -> None:
    keep = set(names)
    unknown = keep - set(G.index)
    if unknown:
        raise NotWideError(which, f"unknown arrows {sorted(unknown)}")
    missing = [x for x, i in G.identities.items() if i not in keep]
    if missing:
        raise NotWideError(which, f"missing identities of {missing}")
    for a in keep:
        if G.inv(a) not in keep:
            raise NotWideError(which, f"not closed under inverse at {a}")
        for b in keep:
            c = G.comp(a, b)
            if c is not None and c not in keep:
                raise NotWideError(which, f"not closed under composition at {a} o {b}")


def exact_factorize(G: Groupoid, H: Iterable[str], V: Iterable[str]) -> Factorization:
    """Decompose every arrow uniquely as ``h o v`` with ``h`` in ``H`` and
    ``v`` in ``V``."""
    gate(check_groupoid(G))
    H, V = tuple(H), tuple(V)
    _check_wide(G, H, "H")
    _check_wide(G, V, "V")
    order = G.index
    H = tuple(sorted(set(H), key=order.get))
    V = tuple(sorted(set(V), key=order.get))
    found: dict[str, list] = {a: [] for a in G.names}
    for h in H:
        for v in V:
            c = G.comp(h, v)
            if c is not None:
                found[c].append((h, v))
    bad = {a: len(found[a]) for a in G.names if len(found[a]) != 1}
    if bad:
        arrow = next((a for a, k in bad.items() if k == 0), next(iter(bad)))
        raise NotExactError(arrow, bad[arrow], bad)
    return Factorization(G, H, V, {a: found[a][0] for a in G.names})


def reverse_factor(fz: Factorization, name: str) -> tuple[str, str]:
    """The factorization ``name = v o h`` with ``v`` in ``V``, ``h`` in ``H``."""
    G = fz.G
    h, v = fz.table[G.inv(name)]
    return G.inv(v), G.inv(h)


def _inclusion(G: Groupoid, names: Sequence[str]) -> LinMap:
    return LinMap.from_function(len(names), len(G), lambda k: [(G.index[names[k]], 1)])


def projection_morphisms(fz: Factorization) -> WeakProjection:
    """``f`` includes the algebra of ``V`` and ``g`` keeps the ``V`` part."""
    D = groupoid_algebra(fz.G)
    B = groupoid_algebra(fz.G.subgroupoid(fz.V))
    vpos = {v: k for k, v in enumerate(fz.V)}
    f = _inclusion(fz.G, fz.V)
    names = fz.G.names
    g = LinMap.from_function(len(names), len(fz.V), lambda j: [(vpos[fz.part_v(names[j])], 1)])
    return WeakProjection(D, B, f, g)


def base_splitting(fz: Factorization) -> Splitting:
    """Splitting of ``t`` whose image basis is the arrows of ``H``."""
    hpos = {h: k for k, h in enumerate(fz.H)}
    names = fz.G.names
    proj = LinMap.from_function(len(names), len(fz.H), lambda j: [(hpos[fz.part_h(names[j])], 1)])
    return Splitting(len(fz.H), _inclusion(fz.G, fz.H), proj)


def oracle_biproduct(fz: Factorization) -> dict[str, LinMap]:
    """The thirteen biproduct maps written down arrow by arrow from the
    factorization, without any of the generic machinery."""
    G, H, V = fz.G, fz.H, fz.V
    nh, nv, ng = len(H), len(V), len(G)
    hpos = {h: k for k, h in enumerate(H)}
    vpos = {v: k for k, v in enumerate(V)}
    names = G.names

    def cv(h, v):
        return hpos[h] * nv + vpos[v]

    def hv_of(j):
        return H[j // nv], V[j % nv]

    def ok(a, b):
        return G.src(a) == G.tgt(b)

    def mk(dom, cod, rule):
        return LinMap.from_function(dom, cod, lambda j: [(i, 1) for i in rule(j)])

    out = {}
    out["inj"] = mk(ng, nh * nv, lambda j: [cv(*fz.table[names[j]])])
    out["proj"] = mk(nh * nv, ng, lambda j: [G.index[G.comp(*hv_of(j))]] if ok(*hv_of(j)) else [])
    out["nabla"] = mk(nh * nv, nh * nv, lambda j: [j] if ok(*hv_of(j)) else [])
    out["preunit"] = mk(1, nh * nv, lambda _: [cv(G.identity_of(x), G.identity_of(x)) for x in G.objects])
    out["beta"] = mk(nv, nh * nv, lambda j: [cv(G.identity_of(G.tgt(V[j])), V[j])])
    out["precounit"] = mk(nh * nv, 1, lambda j: [0] if ok(*hv_of(j)) else [])
    out["gamma"] = mk(nh * nv, nh, lambda j: [hpos[hv_of(j)[0]]] if ok(*hv_of(j)) else [])

    def psi(j):
        s, w = V[j // nh], H[j % nh]
        if not ok(s, w):
            return []
        return [cv(*fz.table[G.comp(s, w)])]

    out["psi"] = mk(nv * nh, nh * nv, psi)

    def sigma(j):
        w2, w = H[j // nh], H[j % nh]
        if not ok(w2, w):
            return []
        return [cv(G.comp(w2, w), G.identity_of(G.src(w)))]

    out["sigma"] = mk(nh * nh, nh * nv, sigma)
    out["chi"] = mk(nh * nv, nv * nh, lambda j: [vpos[hv_of(j)[1]] * nh + hpos[hv_of(j)[0]]] if ok(*hv_of(j)) else [])
    out["tau"] = mk(nh * nv, nv * nv, lambda j: [vpos[hv_of(j)[1]] * nv + vpos[hv_of(j)[1]]] if ok(*hv_of(j)) else [])

    def mult(j):
        w2, s2 = hv_of(j // (nh * nv))
        w, s = hv_of(j % (nh * nv))
        if not (ok(w2, s2) and ok(s2, w) and ok(w, s)):
            return []
        mid = G.comp(s2, w)
        h_part = G.comp(w2, fz.part_h(G.comp(mid, s)))
        v_part = G.comp(fz.part_v(G.comp(w2, mid)), s)
        return [cv(h_part, v_part)]

    out["mult"] = mk((nh * nv) ** 2, nh * nv, mult)
    out["comult"] = mk(nh * nv, (nh * nv) ** 2, lambda j: [j * nh * nv + j] if ok(*hv_of(j)) else [])
    return out


def compare_oracle_generic(fz: Factorization, title: str = "oracle vs generic") -> Report:
    r = Report(title)
    oracle = oracle_biproduct(fz)
    generic = biproduct_from_projection(projection_morphisms(fz), base_splitting(fz))
    for name in MORPHISM_NAMES:
        r.equal(f"agree-{name}", generic.morphisms[name], oracle[name])
    r.facts["nabla_rank"] = generic.morphisms["nabla"].rank()
    r.facts["tensor_dim"] = len(fz.H) * len(fz.V)
    r.facts["arrows"] = len(fz.G)
    return r


# random instances ---------------------------------------------------------------

_OBJECT_NAMES = "xyzuvw"


def _group_choices(max_order: int) -> list[FiniteGroup]:
    out = [cyclic_group(n) for n in range(1, min(max_order, 6) + 1)]
    if max_order >= 6:
        out.append(symmetric_group_3())
    return out


def random_groupoid(rng: random.Random, max_objects: int = 3, max_arrows: int = 10) -> Groupoid:
    """A disjoint union of connected groupoids ``pair(n) x K`` within the
    given size bounds."""
    n_obj = rng.randint(1, max_objects)
    objects = list(_OBJECT_NAMES[:n_obj])
    parts, budget, k = [], max_arrows, 0
    while k < n_obj:
        size = rng.randint(1, n_obj - k)
        while size * size > budget - (n_obj - k - size):
            size -= 1
        room = (budget - (n_obj - k - size)) // (size * size)
        group = rng.choice(_group_choices(room))
        comp_objs = objects[k:k + size]
        parts.append(pair_group_groupoid(comp_objs, group, _namer(comp_objs, group)))
        budget -= size * size * len(group)
        k += size
    return disjoint_union(*parts)


def _namer(objs, group):
    def name(y, kk, x):
        if x == y and kk == group.unit:
            return f"id_{x}"
        return f"{kk}_{x}{y}"
    return name


def _group_splittings(group: FiniteGroup) -> list[tuple[set, set]]:
    """Exact factorizations ``K = K1 K2`` of small groups by subgroups."""
    e = group.unit
    subgroups = [s for s in _subgroups(group)]
    out = []
    for a in subgroups:
        for b in subgroups:
            if len(a) * len(b) == len(group) and len({group.mul(x, y) for x in a for y in b}) == len(group):
                out.append((a, b))
    return out or [({e}, set(group.names))]


def _subgroups(group: FiniteGroup) -> list[set]:
    found = []
    for gen_a in group.names:
        for gen_b in group.names:
            s = {group.unit, gen_a, gen_b}
            while True:
                bigger = s | {group.mul(x, y) for x in s for y in s}
                if bigger == s:
                    break
                s = bigger
            if s not in found:
                found.append(s)
    return found


def random_factorization(rng: random.Random, kind: str = "mixed", max_objects: int = 3,
                         max_arrows: int = 10) -> Factorization:
    """A seeded exact factorization.

    ``kind`` is ``"trivial-v"`` (``V`` only identities), ``"trivial-h"``, or
    ``"mixed"``: per component either the pair groupoid times one factor of
    a group factorization against the bundle of the other factor, or the
    reverse arrangement.
    """
    G = random_groupoid(rng, max_objects, max_arrows)
    if kind == "trivial-v":
        return exact_factorize(G, G.names, G.identities.values())
    if kind == "trivial-h":
        return exact_factorize(G, G.identities.values(), G.names)
    if kind != "mixed":
        raise ValueError(f"unknown kind {kind!r}")
    return _mixed_factorization(rng, G)


def _mixed_factorization(rng: random.Random, G: Groupoid) -> Factorization:
    # Recover each component's group from the arrows at its first object.
    H, V = set(), set()
    seen = set()
    for x in G.objects:
        if x in seen:
            continue
        comp_objs = sorted({G.tgt(a) for a in G.names if G.src(a) == x}, key=G.objects.index)
        seen.update(comp_objs)
        loops = [a for a in G.names if G.src(a) == x and G.tgt(a) == x]
        table = {(a, b): G.comp(a, b) for a in loops for b in loops}
        K = FiniteGroup(tuple(loops), table, G.identity_of(x))
        k1, k2 = rng.choice(_group_splittings(K))
        # conjugate loop labels to every object along fixed connecting arrows
        conn = {y: next(a for a in G.names if G.src(a) == x and G.tgt(a) == y and
                        (y != x or a == G.identity_of(x))) for y in comp_objs}
        pure_pair = rng.random() < 0.5

        def at(y, loop):
            c = conn[y]
            return G.comp(G.comp(c, loop), G.inv(c))

        def between(z, y, loop):
            # the arrow y -> z "labelled" by loop
            return G.comp(G.comp(conn[z], loop), G.inv(conn[y]))

        for y in comp_objs:
            for z in comp_objs:
                if pure_pair:
                    H.update(between(z, y, k) for k in k1)
                    if y == z:
                        V.update(at(y, k) for k in k2)
                else:
                    if y == z:
                        H.update(at(y, k) for k in k1)
                    V.update(between(z, y, k) for k in k2)
    return exact_factorize(G, H, V)
