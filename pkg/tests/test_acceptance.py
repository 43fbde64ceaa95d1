"""Acceptance suite: one test per criterion, every equality exact.

Each criterion is a plain function returning ``(ok, detail)`` so it can run
both under pytest (where the conftest prints one PASS/FAIL line per
criterion at the end of the session) and as a script::

    python3 tests/test_acceptance.py
"""
import random
import subprocess
import sys
import tempfile
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

HERE = Path(__file__).parent
if str(HERE) not in sys.path:  # running as a script
    sys.path.insert(0, str(HERE))

from coverage_manifest import MANIFEST  # noqa: E402
from support import (  # noqa: E402
    ACCEPTANCE_RESULTS,
    crossed_fixtures,
    dense,
    dense_flip,
    dense_kron,
    dense_mul,
    flagship_instances,
    load,
    projection_biproduct,
    random_groupoids,
    random_linmap,
    sweedler_projection,
)
from weakcross.biproduct import (  # noqa: E402
    BiproductData,
    biproduct_pieces,
    check_biproduct,
    check_idempotent_pair,
    decomposition_from_pair,
    pair_from_biproduct,
    pair_from_decomposition,
)
from weakcross.crossed_coproduct import (  # noqa: E402
    CoCrossedData,
    build_crossed_coproduct,
    check_cocrossed_data,
    check_precounit,
    transpose_crossed,
)
from weakcross.crossed_product import build_crossed_product, crossed_nabla  # noqa: E402
from weakcross.groupoid import (  # noqa: E402
    NotExactError,
    base_splitting,
    check_groupoid_hopf,
    compare_oracle_generic,
    exact_factorize,
    projection_morphisms,
)
from weakcross.linalg import LinMap, flip, identity, split_idempotent  # noqa: E402
from weakcross.projection import (  # noqa: E402
    MORPHISM_NAMES,
    biproduct_from_projection,
    build_entwining,
    check_cocleft,
    check_entwined_module,
    check_weak_projection,
    module_action,
    projection_from_biproduct,
)
from weakcross.report import ConditionError  # noqa: E402
from weakcross.structures import check_algebra_morphism, check_coalgebra_morphism  # noqa: E402
from weakcross.weak_hopf import pi_maps  # noqa: E402

TITLES = {
    1: "groupoid weak Hopf suite",
    2: "oracle equals generic construction",
    3: "biproduct validity",
    4: "idempotent pair equivalence",
    5: "projection round trip",
    6: "cocleft and entwining",
    7: "negative controls",
    8: "core property suites",
    9: "identity coverage manifest",
}

WEAK_HOPF_CHECKS = (
    ["comult-mult", "counit-weak", "counit-weak-braided", "unit-weak", "unit-weak-braided",
     "antipode-left", "antipode-right", "antipode-sandwich"]
    + [f"pi-absorb-{k}" for k in range(1, 9)]
    + [f"pi-antipode-{k}" for k in range(1, 9)]
    + ["antipode-antimultiplicative", "antipode-anticomultiplicative", "antipode-unit", "antipode-counit",
       "pi-left-is-target", "pi-right-is-source", "antipode-involutive"]
)
PAIR_CHECKS = ["pair-unit", "pair-mult", "pair-counit", "pair-comult", "pair-module", "pair-comodule",
               "pair-resolution"]
PROJECTION_IDENTITIES = ["betacomul", "tau-nabla", "nu-nabla", "exp-betanu", "newbetanu", "tf", "fpibarl"]
ENTWINING_CHECKS = ["entwining-mult", "entwining-comult", "entwining-unit", "entwining-counit"]
COCLEFT_CHECKS = ["cocleft-linear", "cocleft-convolution", "cocleft-twist"]


class Tally:
    """Collects failures so a criterion reports all of them, not the first."""

    def __init__(self):
        self.failures = []
        self.count = 0

    def expect(self, condition, what):
        self.count += 1
        if not condition:
            self.failures.append(what)

    def passing(self, report, names, where):
        for name in names:
            self.expect(report.status_of(name) == "pass", f"{where}: {name} is {report.status_of(name)}")

    def result(self, extra=""):
        if self.failures:
            shown = "; ".join(self.failures[:3])
            more = f" (+{len(self.failures) - 3} more)" if len(self.failures) > 3 else ""
            return False, f"{len(self.failures)} of {self.count} assertions failed: {shown}{more}"
        return True, f"{self.count} assertions{extra}"


# --------------------------------------------------------------- criteria

def criterion_1():
    t = Tally()
    start = time.perf_counter()
    instances = [(name, load(name).groupoid) for name in ("s3.gpd", "iso2.gpd", "z6.gpd")]
    instances += [(f"random groupoid {k}", G) for k, G in enumerate(random_groupoids(20))]
    for label, G in instances:
        t.expect(len(G.objects) <= 3 and len(G) <= 10, f"{label}: size bound")
        r = check_groupoid_hopf(G, label)
        t.expect(r.ok, f"{label}: report not ok")
        t.passing(r, WEAK_HOPF_CHECKS, label)
    elapsed = time.perf_counter() - start
    t.expect(elapsed < 10, f"runtime {elapsed:.1f} s exceeds 10 s")
    return t.result(f" over {len(instances)} groupoids in {elapsed:.1f} s")


def criterion_2():
    t = Tally()
    start = time.perf_counter()
    instances = flagship_instances()
    for label, fz in instances:
        r = compare_oracle_generic(fz, label)
        t.passing(r, [f"agree-{name}" for name in MORPHISM_NAMES], label)
        t.expect(len(r.checks) == 13, f"{label}: {len(r.checks)} morphisms compared")
    elapsed = time.perf_counter() - start
    t.expect(elapsed < 30, f"runtime {elapsed:.1f} s exceeds 30 s")
    return t.result(f" over {len(instances)} instances in {elapsed:.1f} s")


def criterion_3():
    t = Tally()
    for label, _ in flagship_instances():
        fz, p, pb = projection_biproduct(label)
        d = pb.data
        t.expect(check_biproduct(d).ok, f"{label}: pipeline biproduct")
        # omega = mu_D (i_C (x) i_A) on the canonical splitting of nabla
        nabla = crossed_nabla(d.product_side)
        s = split_idempotent(nabla)
        omega = p.D.mult @ (pb.base.inj ^ p.f) @ s.injection
        t.expect(omega.is_invertible(), f"{label}: omega not bijective")
        t.expect(check_biproduct(BiproductData(d.product_side, d.coproduct_side, omega, p.D, s, p.B)).ok,
                 f"{label}: biproduct with canonical omega")
        image_alg = build_crossed_product(d.product_side, s).image_algebra
        image_coalg = build_crossed_coproduct(d.coproduct_side, s).image_coalgebra
        t.expect(check_algebra_morphism(omega, image_alg, p.D.algebra).ok, f"{label}: omega algebra morphism")
        t.expect(check_coalgebra_morphism(omega, image_coalg, p.D.coalgebra).ok,
                 f"{label}: omega coalgebra morphism")
        t.expect(nabla.rank() == len(fz.G) == p.D.dim, f"{label}: rank nabla {nabla.rank()} vs {len(fz.G)}")
    return t.result()


def criterion_4():
    t = Tally()
    for label, _ in flagship_instances():
        _, p, pb = projection_biproduct(label)
        pieces = biproduct_pieces(pb.data)
        try:
            pair, r = pair_from_decomposition(p.D, p.B.algebra, pb.base.coalgebra, pieces["iA"], pieces["pA"],
                                              pieces["iC"], pieces["pC"])
        except ConditionError as e:
            t.expect(False, f"{label}: {e.failed_check}")
            continue
        t.passing(r, PAIR_CHECKS, label)
        dec = decomposition_from_pair(p.D, pair)
        again, _ = pair_from_decomposition(p.D, dec.A, dec.C, dec.iA, dec.pA, dec.iC, dec.pC)
        t.expect(again.pi == pair.pi and again.theta == pair.theta, f"{label}: pair round trip")
    gf = load("s3-hopf.gpd")
    fz = exact_factorize(gf.groupoid, gf.H, gf.V)
    hopf_cases = [
        ("s3-hopf", biproduct_from_projection(projection_morphisms(fz), base_splitting(fz))),
        ("sweedler", biproduct_from_projection(sweedler_projection())),
    ]
    for label, pb in hopf_cases:
        pair, _, _ = pair_from_biproduct(pb.data)
        D = pb.projection.D
        r = check_idempotent_pair(D, pair)
        t.expect(r.ok, f"{label}: pair conditions")
        tensor = pair.theta ^ pair.pi
        t.expect(tensor @ D.comult @ D.mult @ tensor == tensor, f"{label}: nabla_DD is not theta (x) pi")
    return t.result()


def criterion_5():
    t = Tally()
    for label, _ in flagship_instances():
        _, p, pb = projection_biproduct(label)
        t.passing(pb.report, PROJECTION_IDENTITIES, label)
        try:
            back, r = projection_from_biproduct(pb.data)
        except ConditionError as e:
            t.expect(False, f"{label}: {e.failed_check}")
            continue
        t.passing(r, ["betacomul", "tau-nabla", "nu-nabla"], f"{label} (converse)")
        t.expect(back.f == p.f, f"{label}: f not recovered")
        t.expect(back.g == p.g, f"{label}: g not recovered")
    return t.result()


def criterion_6():
    t = Tally()
    for label, _ in flagship_instances():
        _, p, pb = projection_biproduct(label)
        ent = build_entwining(p.B, p.D, p.f)
        t.passing(ent.report, ENTWINING_CHECKS, label)
        t.expect(ent.e == pi_maps(p.B).right @ p.g, f"{label}: e differs from Pi^R o g")
        m = check_entwined_module(p.D.dim, module_action(p), p.D.comult, ent.psi, p.B.algebra, p.D.coalgebra)
        t.passing(m, ["entwined-module"], label)
        t.passing(check_cocleft(p, pb.base), COCLEFT_CHECKS, label)
    return t.result()


def criterion_7():
    t = Tally()
    _, p, pb = projection_biproduct("s3.gpd")
    r = check_weak_projection(p)
    t.expect(r.ok, "s3 weak projection should pass")
    t.expect(r.facts.get("g_is_algebra_morphism") is False, "g reported multiplicative on s3")
    w = r.facts.get("g_algebra_witness")
    t.expect(w is not None and w["g_of_product"] != w["product_of_g"], "no witness pair for g")
    gf = load("s3-badHV.gpd")
    try:
        exact_factorize(gf.groupoid, gf.H, gf.V)
        t.expect(False, "H = V = <(12)> accepted")
    except NotExactError as e:
        t.expect(e.counts.get("(123)") == 0, "(123) not reported with zero decompositions")
    d = pb.data
    cs = d.coproduct_side
    bump = LinMap.from_entries(cs.tau.dom, cs.tau.cod, {(1, 0): 1})
    bad = BiproductData(d.product_side, CoCrossedData(cs.coalgebra, cs.vdim, cs.chi, cs.tau + bump,
                                                      cs.precounit, cs.orientation),
                        d.iso, d.target, d.splitting, d.hopf)
    try:
        projection_from_biproduct(bad)
        t.expect(False, "perturbed tau accepted")
    except ConditionError as e:
        t.expect("tau-nabla" in {c.name for _, c in e.report.failures()}, "tau-nabla not among the failures")
    return t.result()


def _random_idempotent(rng):
    """e = i o p with p o i = id from a random rank factorization."""
    n = rng.randint(1, 8)
    r = rng.randint(0, n)
    while True:
        a, b = random_linmap(rng, r, n), random_linmap(rng, n, r)
        ba = b @ a
        if ba.is_invertible():
            p = ba.inverse() @ b
            return n, r, a, p


def criterion_8():
    t = Tally()
    rng = random.Random(8)
    for k in range(100):
        n, r, a, p = _random_idempotent(rng)
        e = a @ p
        t.expect(dense_mul(dense(e), dense(e), n) == dense(e), f"idempotent {k} is not idempotent")
        s = split_idempotent(e)
        t.expect(s.image_dim == r, f"idempotent {k}: image_dim {s.image_dim} vs {r}")
        t.expect(dense_mul(dense(s.injection), dense(s.projection), s.image_dim, n) == dense(e),
                 f"idempotent {k}: i o p differs")
        t.expect(s.projection @ s.injection == identity(s.image_dim), f"idempotent {k}: p o i is not id")
    rng = random.Random(88)
    for k in range(100):
        m, m2, n, n2 = (rng.randint(1, 3) for _ in range(4))
        f, g = random_linmap(rng, m, m2), random_linmap(rng, n, n2)
        lhs, rhs = flip(m2, n2) @ (f ^ g), (g ^ f) @ flip(m, n)
        t.expect(lhs == rhs, f"flip naturality {k}")
        t.expect(dense(lhs) == dense_mul(dense_flip(m2, n2), dense_kron(dense(f), dense(g), f.shape, g.shape),
                                         m2 * n2), f"flip naturality oracle {k}")
    rng = random.Random(888)
    for k in range(100):
        a, b, c, x, y, z = (rng.randint(1, 3) for _ in range(6))
        f1, f2 = random_linmap(rng, b, c), random_linmap(rng, a, b)
        g1, g2 = random_linmap(rng, y, z), random_linmap(rng, x, y)
        t.expect((f1 ^ g1) @ (f2 ^ g2) == (f1 @ f2) ^ (g1 @ g2), f"functoriality {k}")
        t.expect(identity(a) ^ identity(x) == identity(a * x), f"identity functoriality {k}")
    fixtures = crossed_fixtures()
    t.expect(len(fixtures) == 20, f"{len(fixtures)} crossed fixtures")
    for label, d in fixtures:
        co = transpose_crossed(d)
        t.expect(check_cocrossed_data(co).ok and check_precounit(co).ok, f"{label}: transported codata")
        t.expect(build_crossed_coproduct(co).report.ok, f"{label}: transported coproduct")
    return t.result()


def _run_manifest_tests():
    """Run every test the manifest references in a child pytest and return
    the set of (file, test function) pairs with at least one passing case."""
    refs = sorted({ref for refs in MANIFEST.values() for ref in refs})
    with tempfile.TemporaryDirectory() as tmp:
        xml = Path(tmp) / "manifest.xml"
        subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", f"--junitxml={xml}",
                        *[str(HERE / ref) for ref in refs]],
                       cwd=HERE.parent, capture_output=True, text=True, timeout=600)
        if not xml.exists():
            return set()
        passed = set()
        for case in ET.parse(xml).getroot().iter("testcase"):
            if any(child.tag in ("failure", "error", "skipped") for child in case):
                continue
            module = case.get("classname", "").split(".")[-1]
            passed.add((f"{module}.py", case.get("name", "").split("[")[0]))
        return passed


def criterion_9():
    t = Tally()
    passed = _run_manifest_tests()
    for label, refs in MANIFEST.items():
        ok = any(tuple(ref.split("::")) in passed for ref in refs)
        t.expect(ok, f"{label}: no passing test")
    return t.result(f" ({len(MANIFEST)} identity labels)")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def evaluate(number):
    try:
        ok, detail = CRITERIA[number]()
    except Exception as e:  # a crash is a failure of the criterion, reported as such
        ok, detail = False, f"{type(e).__name__}: {e}"
    ACCEPTANCE_RESULTS[number] = (ok, detail)
    return ok, detail


def line(number, ok, detail):
    return f"criterion {number} [{'PASS' if ok else 'FAIL'}] {TITLES[number]}: {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = evaluate(number)
    assert ok, line(number, ok, detail)


def main():
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for n, (ok, detail) in zip(sorted(CRITERIA), results):
        print(line(n, ok, detail))
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
