#!/usr/bin/env python3
"""Writes the non-discrete pointed example categories and the broken file into corpus/."""

import itertools
import json
import pathlib

BOT = None
OUT = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def maps(m, n):
    # lexicographic, undefined first
    return [tuple(t) for t in itertools.product([BOT] + list(range(n)), repeat=m)]


def rank(f, n):
    r = 0
    for x in f:
        r = r * (n + 1) + (0 if x is BOT else x + 1)
    return r


def name(f, m, n):
    return f"p{m}_{n}_{rank(f, n)}"


def compose(g, f):
    return tuple(BOT if x is BOT else g[x] for x in f)


def restriction_leq(f, g):
    return all(x is BOT or x == y for x, y in zip(f, g))


def par_on(sizes):
    objects = [str(s) for s in sizes]
    mors, table = [], {}
    for m in sizes:
        for n in sizes:
            for f in maps(m, n):
                mors.append({"name": name(f, m, n), "dom": str(m), "cod": str(n)})
                table[name(f, m, n)] = (f, m, n)
    ids = {str(m): name(tuple(range(m)), m, m) for m in sizes}
    comp, leq = [], []
    for gname, (g, b, c) in table.items():
        for fname, (f, a, b2) in table.items():
            if b2 == b:
                comp.append([gname, fname, name(compose(g, f), a, c)])
            if (a, b2) == (b, c) and f != g and restriction_leq(g, f):
                leq.append([gname, fname])
    return {"objects": objects, "morphisms": mors, "identities": ids, "compose": comp, "leq": leq}


def endo_monoid(n):
    full = par_on([n])
    for m in full["morphisms"]:
        m["dom"] = m["cod"] = "*"
    return {**full, "objects": ["*"], "identities": {"*": full["identities"][str(n)]}}


def chain_monoid():
    # 0 ≤ e ≤ 1 with e idempotent and 0 absorbing
    mors = [{"name": x, "dom": "*", "cod": "*"} for x in ("0", "e", "1")]
    prod = {("e", "e"): "e"}
    comp = []
    for g in ("0", "e", "1"):
        for f in ("0", "e", "1"):
            if "0" in (g, f):
                gf = "0"
            elif g == "1":
                gf = f
            elif f == "1":
                gf = g
            else:
                gf = prod[(g, f)]
            comp.append([g, f, gf])
    return {"objects": ["*"], "morphisms": mors, "identities": {"*": "1"}, "compose": comp,
            "leq": [["0", "e"], ["e", "1"]]}


def broken():
    # a∘(a∘b) ≠ (a∘a)∘b
    mors = [{"name": x, "dom": "*", "cod": "*"} for x in ("1", "a", "b")]
    t = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}
    comp = [[g, f, f if g == "1" else g if f == "1" else t[(g, f)]]
            for g in ("1", "a", "b") for f in ("1", "a", "b")]
    return {"objects": ["*"], "morphisms": mors, "identities": {"*": "1"}, "compose": comp, "leq": []}


def write(fname, data):
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    (OUT / fname).write_text(text, encoding="utf-8")
    print(f"{fname}: {len(data['morphisms'])} morphisms")


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    write("chain_monoid.json", chain_monoid())
    write("par22_endo.json", endo_monoid(2))
    write("par_1_2.json", par_on([1, 2]))
    write("broken.json", broken())
