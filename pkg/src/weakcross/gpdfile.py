"""Reading and writing the plain-text groupoid format and morphism dumps.

A groupoid file has the sections ``objects:``, ``arrows:``, ``compose:``,
``inverse:`` and optionally ``subgroupoid H:`` and ``subgroupoid V:``::

    objects: x y
    arrows:
      a : x -> y
      b : y -> x
    compose:
      b . a = id_x
      a . b = id_y
    inverse:
      a^-1 = b

Identities ``id_<object>`` are created automatically together with their
compositions and inverses.  ``a . b = c`` means ``a o b`` and requires the
source of ``a`` to be the target of ``b``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .groupoid import Arrow, Groupoid
from .linalg import LinMap, format_scalar

__all__ = [
    "GroupoidParseError",
    "GroupoidFile",
    "parse_groupoid",
    "load_groupoid",
    "format_groupoid",
    "format_dump",
    "parse_dump",
]

_NAME = r"[^\s:.=^]+"
_SECTION = re.compile(r"^(objects|arrows|compose|inverse|subgroupoid\s+([HV]))\s*:\s*(.*)$")
_ARROW = re.compile(rf"^({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})$")
_COMPOSE = re.compile(rf"^({_NAME})\s*\.\s*({_NAME})\s*=\s*({_NAME})$")
_INVERSE = re.compile(rf"^({_NAME})\s*\^-1\s*=\s*({_NAME})$")


class GroupoidParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line
        self.source = source


@dataclass(frozen=True)
class GroupoidFile:
    groupoid: Groupoid
    H: tuple[str, ...] | None = None
    V: tuple[str, ...] | None = None


def parse_groupoid(text: str, source: str = "<string>") -> GroupoidFile:
    objects: list[str] = []
    arrows: list[Arrow] = []
    compose: dict[tuple[str, str], str] = {}
    compose_line: dict[tuple[str, str], int] = {}
    inverse: dict[str, str] = {}
    subs: dict[str, list[str]] = {}
    sub_lines: dict[str, int] = {}
    section = None
    seen_objects = False

    def err(msg, ln):
        return GroupoidParseError(msg, ln, source)

    def add_arrow(name, s, t, ln):
        if any(a.name == name for a in arrows):
            raise err(f"duplicate arrow {name!r}", ln)
        for o in (s, t):
            if o not in objects:
                raise err(f"undefined object {o!r}", ln)
        arrows.append(Arrow(name, s, t))

    lines = text.splitlines()
    pending: list[tuple[int, str, str]] = []  # (line, section, body)
    for ln, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        m = _SECTION.match(body)
        if m:
            section = m.group(1) if m.group(2) is None else f"sub{m.group(2)}"
            if section in ("objects",) and seen_objects:
                raise err("objects declared twice", ln)
            if section == "objects":
                seen_objects = True
            if section.startswith("sub"):
                if section in subs:
                    raise err(f"subgroupoid {section[3]} declared twice", ln)
                subs[section] = []
                sub_lines[section] = ln
            rest = m.group(3).strip()
            if rest:
                pending.append((ln, section, rest))
            continue
        if section is None:
            raise err(f"content outside any section: {body!r}", ln)
        pending.append((ln, section, body))

    if not seen_objects:
        raise GroupoidParseError("missing objects section", None, source)

    for ln, sec, body in pending:
        if sec == "objects":
            for o in body.replace(",", " ").split():
                if not re.fullmatch(_NAME, o):
                    raise err(f"bad object name {o!r}", ln)
                if o in objects:
                    raise err(f"duplicate object {o!r}", ln)
                objects.append(o)
    for o in objects:
        arrows.append(Arrow(f"id_{o}", o, o))
    declared_ids = {a.name for a in arrows}

    for ln, sec, body in pending:
        if sec == "arrows":
            m = _ARROW.match(body)
            if not m:
                raise err(f"expected 'name : source -> target', got {body!r}", ln)
            name, s, t = m.groups()
            if name in declared_ids:
                if not (s == t and name == f"id_{s}"):
                    raise err(f"{name!r} is reserved for an identity", ln)
                continue
            add_arrow(name, s, t, ln)

    by_name = {a.name: a for a in arrows}

    def known(n, ln):
        if n not in by_name:
            raise err(f"undefined arrow {n!r}", ln)
        return by_name[n]

    for ln, sec, body in pending:
        if sec == "compose":
            m = _COMPOSE.match(body)
            if not m:
                raise err(f"expected 'a . b = c', got {body!r}", ln)
            a, b, c = m.groups()
            A, B = known(a, ln), known(b, ln)
            known(c, ln)
            if A.src != B.tgt:
                raise err(f"{a} . {b} is not composable: source of {a} is {A.src}, target of {b} is {B.tgt}", ln)
            if (a, b) in compose and compose[(a, b)] != c:
                raise err(f"conflicting composition for {a} . {b} (see line {compose_line[(a, b)]})", ln)
            compose[(a, b)] = c
            compose_line[(a, b)] = ln
        elif sec == "inverse":
            m = _INVERSE.match(body)
            if not m:
                raise err(f"expected 'a^-1 = b', got {body!r}", ln)
            a, b = m.groups()
            known(a, ln), known(b, ln)
            for x, y in ((a, b), (b, a)):
                if x in inverse and inverse[x] != y:
                    raise err(f"conflicting inverse for {x}", ln)
            inverse[a] = b
            inverse[b] = a
        elif sec.startswith("sub"):
            for n in body.replace(",", " ").split():
                known(n, ln)
                subs[sec].append(n)

    identities = {o: f"id_{o}" for o in objects}
    for a in arrows:
        for key, val in (((identities[a.tgt], a.name), a.name), ((a.name, identities[a.src]), a.name)):
            if key in compose and compose[key] != val:
                raise err(f"identity law contradicted by {key[0]} . {key[1]} = {compose[key]}", compose_line[key])
            compose.setdefault(key, val)
    for o in objects:
        inverse.setdefault(identities[o], identities[o])

    G = Groupoid(objects, arrows, compose, inverse, identities)
    H = tuple(subs["subH"]) if "subH" in subs else None
    V = tuple(subs["subV"]) if "subV" in subs else None
    return GroupoidFile(G, H, V)


def load_groupoid(path: str | Path) -> GroupoidFile:
    p = Path(path)
    return parse_groupoid(p.read_text(), str(p))


def format_groupoid(G: Groupoid, H=None, V=None, header: str | None = None) -> str:
    """Serialize a groupoid; identity bookkeeping is left implicit."""
    ids = set(G.identities.values())
    out = []
    if header:
        out += [f"# {line}" for line in header.splitlines()]
    out.append("objects: " + " ".join(G.objects))
    out.append("arrows:")
    out += [f"  {a.name} : {a.src} -> {a.tgt}" for a in G.arrows if a.name not in ids]
    out.append("compose:")
    for (a, b), c in G.compose_table.items():
        if a in ids or b in ids:
            continue
        out.append(f"  {a} . {b} = {c}")
    out.append("inverse:")
    done = set()
    for a, b in G.inverse_map.items():
        if a in ids or a in done:
            continue
        out.append(f"  {a}^-1 = {b}")
        done.update((a, b))
    if H is not None:
        out.append("subgroupoid H: " + " ".join(H))
    if V is not None:
        out.append("subgroupoid V: " + " ".join(V))
    return "\n".join(out) + "\n"


def format_dump(maps: dict[str, LinMap]) -> str:
    """Labeled dense matrices, row-major, with rationals written ``p/q``."""
    out = []
    for name, m in maps.items():
        out.append(f"matrix {name} {m.cod} {m.dom}")
        for row in m.rows():
            out.append(" ".join(format_scalar(v) for v in row))
        out.append("end")
    return "\n".join(out) + "\n"


def parse_dump(text: str) -> dict[str, LinMap]:
    maps: dict[str, LinMap] = {}
    lines = [l.strip() for l in text.splitlines()]
    k = 0
    while k < len(lines):
        line = lines[k]
        k += 1
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "matrix":
            raise ValueError(f"line {k}: expected 'matrix <name> <rows> <cols>'")
        name, rows, cols = parts[1], int(parts[2]), int(parts[3])
        body = []
        for _ in range(rows):
            vals = lines[k].split()
            k += 1
            if len(vals) != cols:
                raise ValueError(f"line {k}: expected {cols} entries")
            body.append(vals)
        if lines[k] != "end":
            raise ValueError(f"line {k + 1}: expected 'end'")
        k += 1
        maps[name] = LinMap.from_rows(body, dom=cols)
    return maps
