"""Regenerate the shipped groupoid files and the golden dump.

The golden dump is produced by the arrow-level oracle, never by the generic
pipeline, so the CLI test compares two independent routes.
"""
from __future__ import annotations

from pathlib import Path

from weakcross.gpdfile import format_dump, format_groupoid
from weakcross.groupoid import (
    cyclic_group,
    disjoint_union,
    exact_factorize,
    group_groupoid,
    oracle_biproduct,
    pair_group_groupoid,
    symmetric_group_3,
)
from weakcross.projection import MORPHISM_NAMES

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "src" / "weakcross" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def write(name, G, H=None, V=None, header=None, drop_line=None):
    text = format_groupoid(G, H, V, header)
    if drop_line:
        text = "".join(l for l in text.splitlines(keepends=True) if l.strip() != drop_line)
    (FIX / name).write_text(text)


def main():
    FIX.mkdir(parents=True, exist_ok=True)
    GOLDEN.mkdir(parents=True, exist_ok=True)
    s3 = group_groupoid(symmetric_group_3())
    transp = ["id_o", "(12)"]
    rot = ["id_o", "(123)", "(132)"]
    write("s3.gpd", s3, transp, rot, "symmetric group on three letters as a one-object groupoid")
    write("s3-hopf.gpd", s3, rot, transp, "rotations against a transposition: g is a Hopf projection")
    write("s3-badHV.gpd", s3, transp, transp, "H and V coincide, so the factorization is not exact")
    write("broken.gpd", s3, transp, rot, "an inverse entry has been removed", drop_line="(123)^-1 = (132)")
    z6 = group_groupoid(cyclic_group(6))
    write("z6.gpd", z6, ["id_o", "r3"], ["id_o", "r2", "r4"], "cyclic group of order six as Z2 times Z3")
    iso = pair_group_groupoid(["x", "y"], cyclic_group(1),
                              lambda y, k, x: f"id_{x}" if x == y else ("a" if (x, y) == ("x", "y") else "a_inv"))
    write("iso2.gpd", iso, iso.names, [n for n in iso.names if n.startswith("id_")],
          "two objects joined by one isomorphism")
    bundle = disjoint_union(
        pair_group_groupoid(["x"], cyclic_group(2, "s"), lambda y, k, x: "id_x" if k == "s0" else "s_x"),
        pair_group_groupoid(["y"], cyclic_group(2, "s"), lambda y, k, x: "id_y" if k == "s0" else "s_y"),
    )
    write("bundle2.gpd", bundle, bundle.names, ["id_x", "id_y"], "two disjoint copies of Z2 with trivial V")
    pz = pair_group_groupoid(["x", "y"], cyclic_group(2))
    H = [n for n in pz.names if n.startswith("r0_") or n.startswith("id_")]
    V = [n for n in pz.names if pz.src(n) == pz.tgt(n)]
    write("pair-z2.gpd", pz, H, V, "pair groupoid on two objects times Z2")

    fz = exact_factorize(s3, transp, rot)
    oracle = oracle_biproduct(fz)
    (GOLDEN / "s3_dump.txt").write_text(format_dump({n: oracle[n] for n in MORPHISM_NAMES}))


if __name__ == "__main__":
    main()
