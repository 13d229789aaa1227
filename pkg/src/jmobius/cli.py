"""``jmobius`` command line: compute invariants, run identity suites, search, subdivisions.

Exit status: 0 on success, 1 on bad input, 2 when ``verify`` finds a violated
identity.  JSON output uses sorted keys so it is byte-for-byte reproducible.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path
from typing import Callable

from . import matroids as mt
from .errors import HypothesisError, JMobiusError, SizeBoundError
from .incidence import (atom_cut, coatom_cut, convolve2, crosscut_sum, delta2, hall_sum,
                        mobius, tensor2, weisner_sum, weisner_sum_dual, zeta2)
from .invariants import (char_poly, eval_at_minus_one, j_char_poly,
                         j_mobius_poly, m_decomposition)
from .laurent import LaurentPoly
from .poset import (Poset, boolean_lattice, chain, flags, is_geometric, is_lattice,
                    is_modular_lattice, poset_from_json, product)
from .trincidence import (IncFn3, atom_double_cut, delta3, double_crosscut_sum, hall_gen_sum,
                          j_fast, j_recursive, left_distributivity_check, otherside_sum,
                          structure_witnesses, tensor3, tri_mul, weisner_gen_sum,
                          weisner_gen_sum_dual, zeta3)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2
INVARIANTS = ("mu", "J", "chi", "jchar", "jmobius")
SUITES = ("j-axioms", "classical", "generalized", "structure", "polynomials", "all")


class InputError(JMobiusError, ValueError):
    code = "input"


# -- object registry ------------------------------------------------------------------

_NAMED_MATROIDS: dict[str, Callable[[], mt.Matroid]] = {
    "K3": lambda: mt.graphic(mt.k_edges(3), name="M(K3)"),
    "K4": lambda: mt.graphic(mt.k_edges(4), name="M(K4)"),
    "K33": lambda: mt.graphic(mt.k33_edges(), name="M(K33)"),
    "dual K33": lambda: mt.dual(mt.graphic(mt.k33_edges(), name="M(K33)")),
}
_ALIASES = {"K33*": "dual K33", "dual(K33)": "dual K33", "M*(K33)": "dual K33",
            "K3,3": "K33", "dual K3,3": "dual K33"}


def _named_object(name: str):
    name = _ALIASES.get(name.strip(), name.strip())
    if name in _NAMED_MATROIDS:
        return _NAMED_MATROIDS[name]()
    if m := re.fullmatch(r"B_?\{?(\d+)\}?", name):
        return boolean_lattice(int(m.group(1)))
    if m := re.fullmatch(r"C_?\{?(\d+)\}?", name):
        return chain(int(m.group(1)))
    if m := re.fullmatch(r"U_?\{?(\d+),(\d+)\}?", name):
        return mt.uniform(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"L_?\{?(\d+)\}?\^\{?(\d+)\}?", name):
        return mt.subspace_lattice(int(m.group(1)), int(m.group(2))).poset
    raise InputError(f"unknown object {name!r}")


def resolve_object(text: str | None, q: int | None = None, n: int | None = None):
    """Turn an --object argument into a Poset or Matroid.

    Accepts inline JSON, ``@path`` to a JSON file, or a registry name.  With no
    object but --q and --n, builds L_q^n.
    """
    if text is None:
        if q is not None and n is not None:
            return mt.subspace_lattice(q, n).poset
        raise InputError("no --object given")
    text = text.strip()
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
        return object_from_json(doc)
    return _named_object(text)


def object_from_json(doc: dict):
    if not isinstance(doc, dict):
        raise InputError("object descriptor must be a JSON object")
    kind = doc.get("type", "poset")
    try:
        if kind == "poset":
            return poset_from_json(doc)
        return mt.matroid_from_json(doc)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad {kind} descriptor: {exc}") from None


def as_poset(obj) -> Poset:
    if isinstance(obj, mt.Matroid):
        return mt.flats_lattice(obj).poset
    return obj


# -- compute ------------------------------------------------------------------------------

def _label(p: Poset, x: int):
    return p.labels[x] if p.labels is not None else x


def poly_doc(poly: LaurentPoly) -> dict:
    return {**poly.to_json(), "text": poly.format()}


def compute(obj, invariant: str) -> dict:
    p = as_poset(obj)
    doc: dict = {"invariant": invariant, "size": p.size}
    if invariant == "mu":
        mu = mobius(p).values
        doc["values"] = [[_label(p, x), _label(p, y), mu[(x, y)]] for (x, y) in flags(p, 2)]
    elif invariant == "J":
        J = j_fast(p).values
        doc["values"] = [[*(_label(p, v) for v in t), J[t]] for t in flags(p, 3)]
    elif invariant == "chi":
        doc["polynomial"] = poly_doc(char_poly(p))
    elif invariant == "jchar":
        doc["polynomial"] = poly_doc(j_char_poly(p))
    elif invariant == "jmobius":
        doc["polynomial"] = poly_doc(j_mobius_poly(p))
    else:
        raise InputError(f"unknown invariant {invariant!r}")
    return doc


# -- verify --------------------------------------------------------------------------------

def _check(name: str, fn) -> dict:
    try:
        ok = bool(fn())
    except HypothesisError as exc:
        return {"name": name, "status": "skipped", "reason": str(exc)}
    return {"name": name, "status": "holds" if ok else "violated"}


def _lattice_only(p: Poset, name: str, fn) -> dict:
    if not is_lattice(p):
        return {"name": name, "status": "skipped", "reason": "not a lattice"}
    return _check(name, fn)


def suite_j_axioms(p: Poset, rng=None) -> list[dict]:
    J, d3, z3 = j_fast(p), delta3(p), zeta3(p)
    return [
        _check("zeta3 ⋗ J = δ3", lambda: tri_mul(z3, J) == d3),
        _check("J ⋗ zeta3 = δ3", lambda: tri_mul(J, z3) == d3),
        _check("J from its defining recursion = μ◇μ", lambda: j_recursive(p) == J),
    ]


def _all_intervals(p: Poset, fn) -> bool:
    mu = mobius(p).values
    return all(fn(x, y) == mu[(x, y)] for (x, y) in flags(p, 2))


def _weisner_all(p: Poset) -> bool:
    if p.size < 2:
        raise HypothesisError("lattice needs at least two elements")
    return all(weisner_sum(p, a) == 0 for a in range(p.size) if a != p.top)


def _weisner_dual_all(p: Poset) -> bool:
    if p.size < 2:
        raise HypothesisError("lattice needs at least two elements")
    return all(weisner_sum_dual(p, a) == 0 for a in range(p.size) if a != p.bottom)


def suite_classical(p: Poset, rng=None) -> list[dict]:
    mu, z, d = mobius(p), zeta2(p), delta2(p)
    c2 = chain(2)
    return [
        _check("ζ * μ = δ", lambda: convolve2(z, mu) == d),
        _check("μ * ζ = δ", lambda: convolve2(mu, z) == d),
        _check("Hall's theorem (alternating chain counts give μ)",
               lambda: _all_intervals(p, lambda x, y: hall_sum(p, x, y))),
        _lattice_only(p, "cross-cut theorem with atoms",
                      lambda: _all_intervals(p, lambda x, y: crosscut_sum(p, atom_cut(p, x, y)))),
        _lattice_only(p, "cross-cut theorem with coatoms",
                      lambda: _all_intervals(p, lambda x, y: crosscut_sum(p, coatom_cut(p, x, y)))),
        _lattice_only(p, "Weisner's theorem", lambda: _weisner_all(p)),
        _lattice_only(p, "Weisner's theorem, dual form", lambda: _weisner_dual_all(p)),
        _check("Möbius function of a product", lambda: tensor2(mu, mobius(c2)) == mobius(product(p, c2))),
    ]


def _weisner_gen_all(p: Poset) -> bool:
    pairs = [(a, b) for a in range(p.size) for b in range(p.size)
             if p.lt(p.bottom, a) and p.lt(a, b)]
    return all(weisner_gen_sum(p, a, b) == 0 for a, b in pairs)


def _weisner_gen_dual_all(p: Poset) -> bool:
    pairs = [(a, b) for a in range(p.size) for b in range(p.size)
             if p.lt(b, a) and p.lt(a, p.top)]
    return all(weisner_gen_sum_dual(p, a, b) == 0 for a, b in pairs)


def suite_generalized(p: Poset, rng=None) -> list[dict]:
    J = j_fast(p)
    F3 = flags(p, 3)
    d3 = delta3(p).values
    b1 = boolean_lattice(1)
    return [
        _check("generalized Hall theorem (signed c_ij counts give J)",
               lambda: all(hall_gen_sum(p, *t) == J[t] for t in F3)),
        _lattice_only(p, "double cross-cut theorem with atoms",
                      lambda: all(double_crosscut_sum(p, atom_double_cut(p, *t)) == J[t] for t in F3)),
        _lattice_only(p, "generalized Weisner theorem",
                      lambda: p.size < 3 or _weisner_gen_all(p)),
        _lattice_only(p, "generalized Weisner theorem, dual form",
                      lambda: p.size < 3 or _weisner_gen_dual_all(p)),
        _check("other-side sum of J is δ3",
               lambda: all(otherside_sum(p, *t) == d3[t] for t in F3)),
        _check("J of a product is the product of J",
               lambda: tensor3(J, j_fast(b1)) == j_fast(product(p, b1))),
    ]


def random_incfn3(p: Poset, rng: random.Random, lo: int = -3, hi: int = 3) -> IncFn3:
    return IncFn3(p, {t: rng.randint(lo, hi) for t in flags(p, 3)})


def suite_structure(p: Poset, rng: random.Random | None = None, trials: int = 50) -> list[dict]:
    rng = rng or random.Random(0)
    out = []
    try:
        report = structure_witnesses(p)
    except HypothesisError as exc:
        return [{"name": "structure witnesses", "status": "skipped", "reason": str(exc)}]
    for w in report.witnesses:
        out.append({"name": f"⋗ fails {w.prop} (witness)", "status": "holds" if w.holds else "violated",
                    "flag": list(w.flag), "lhs": w.lhs, "rhs": w.rhs, "basis": w.basis})
    d3 = delta3(p)
    fs = [[random_incfn3(p, rng) for _ in range(3)] for _ in range(trials)]
    out.append(_check("⋗ is left distributive", lambda: all(left_distributivity_check(*f) for f in fs)))
    out.append(_check("δ3 is a left identity", lambda: all(tri_mul(d3, f[0]) == f[0] for f in fs)))
    return out


def suite_polynomials(p: Poset, rng=None) -> list[dict]:
    b1 = boolean_lattice(1)
    out = []
    if p.ranks is None or not is_lattice(p):
        return [{"name": "polynomial identities", "status": "skipped",
                 "reason": "needs a ranked lattice"}]
    out.append(_check("ℳ(1) = 0", lambda: p.size < 2 or j_mobius_poly(p).eval(1) == 0))
    out.append(_check("ℳ equals its decomposition over middle elements",
                      lambda: m_decomposition(p) == j_mobius_poly(p)))
    if is_geometric(p):
        out.append(_check("𝒥 has positive coefficients",
                          lambda: all(j_char_poly(p).coefficient(k) > 0 for k in range(p.rank + 1))))
        if is_modular_lattice(p) and p.size >= 2:
            out.append(_check("ℳ(-1) = 0 on a modular geometric lattice",
                              lambda: eval_at_minus_one(p) == 0))
    pb = product(p, b1)
    out.append(_check("𝒥 is multiplicative", lambda: j_char_poly(pb) == j_char_poly(p) * j_char_poly(b1)))
    out.append(_check("ℳ is multiplicative",
                      lambda: j_mobius_poly(pb) == j_mobius_poly(p) * j_mobius_poly(b1)))
    return out


_SUITE_FNS = {
    "j-axioms": suite_j_axioms,
    "classical": suite_classical,
    "generalized": suite_generalized,
    "structure": suite_structure,
    "polynomials": suite_polynomials,
}


def verify(obj, suite: str, seed: int = 0) -> dict:
    p = as_poset(obj)
    names = list(_SUITE_FNS) if suite == "all" else [suite]
    if any(n not in _SUITE_FNS for n in names):
        raise InputError(f"unknown suite {suite!r}")
    rng = random.Random(seed)
    checks = []
    for n in names:
        for c in _SUITE_FNS[n](p, rng):
            checks.append({"suite": n, **c})
    violated = [c["name"] for c in checks if c["status"] == "violated"]
    return {"suite": suite, "checks": checks, "violated": violated, "ok": not violated}


# -- search -----------------------------------------------------------------------------

def search_minus_one_roots(max_ground: int = 7, max_rank: int = 3) -> list[dict]:
    """ℳ(M, -1) for every simple matroid within the bounds, plus M*(K3,3).

    ℳ only sees the lattice of flats, so one simple representative per
    geometric lattice suffices.
    """
    if max_ground > 8 or max_rank > 3:
        raise SizeBoundError("exhaustive search is limited to ground <= 8 and rank <= 3")
    if max_ground < 0 or max_rank < 0:
        raise InputError("bounds must be nonnegative")
    rows = []
    pinned = mt.dual(mt.graphic(mt.k33_edges(), name="M(K33)"))
    for M, is_pinned in [(M, False) for M in mt.simple_matroids(max_ground, max_rank)] + [(pinned, True)]:
        L = mt.flats_lattice(M)
        rows.append({
            "name": M.name,
            "ground": M.ground_size,
            "rank": M.rank,
            "connected": mt.is_connected(M),
            "modular": is_modular_lattice(L.poset),
            "m_at_minus_one": eval_at_minus_one(L),
            "pinned": is_pinned,
            "descriptor": mt.matroid_to_json(M),
        })
    return rows


def search_summary(rows: list[dict]) -> dict:
    modular = [r for r in rows if r["modular"]]
    return {
        "entries": len(rows),
        "modular": len(modular),
        "modular_all_vanish": all(r["m_at_minus_one"] == 0 for r in modular),
        "nonmodular_connected_roots": [r["name"] for r in rows if r["m_at_minus_one"] == 0
                                       and r["connected"] and not r["modular"]],
    }


# -- subdivision ------------------------------------------------------------------------

_FIXTURES = {"u24-split": mt.u24_split_fixture}
_SUBDIVISION_INVARIANTS = {
    "chi": lambda M: char_poly(mt.flats_lattice(M).poset),
    "jchar": lambda M: j_char_poly(mt.flats_lattice(M)),
    "jmobius": lambda M: j_mobius_poly(mt.flats_lattice(M).poset),
}


def subdivision(fixture: str, invariant: str) -> dict:
    if fixture in _FIXTURES:
        fix = _FIXTURES[fixture]()
    else:
        text = Path(fixture[1:]).read_text() if fixture.startswith("@") else fixture
        try:
            fix = mt.fixture_from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"bad fixture: {exc}") from None
    if invariant not in _SUBDIVISION_INVARIANTS:
        raise InputError(f"invariant {invariant!r} is not defined on matroids here")
    rep = mt.valuation_check(fix, _SUBDIVISION_INVARIANTS[invariant])
    return {
        "fixture": fix.name,
        "invariant": invariant,
        "lhs": poly_doc(rep.lhs),
        "rhs": poly_doc(rep.rhs),
        "residual": poly_doc(rep.residual),
        "terms": [{"pieces": list(S), "sign": s, "value": poly_doc(v)} for S, s, v in rep.terms],
    }


# -- output ------------------------------------------------------------------------------

def _render_text(command: str, doc) -> str:
    if command == "compute":
        if "polynomial" in doc:
            return doc["polynomial"]["text"]
        return "\n".join(" ".join(str(v) for v in row) for row in doc["values"])
    if command == "verify":
        lines = [f"{c['status']:9} [{c['suite']}] {c['name']}" for c in doc["checks"]]
        lines.append("all identities hold" if doc["ok"] else
                     "violated: " + "; ".join(doc["violated"]))
        return "\n".join(lines)
    if command == "search":
        lines = [f"{r['name']:<16} n={r['ground']} r={r['rank']} connected={r['connected']!s:<5} "
                 f"modular={r['modular']!s:<5} M(-1)={r['m_at_minus_one']}"
                 + ("  (pinned)" if r["pinned"] else "") for r in doc["catalog"]]
        s = doc["summary"]
        lines.append(f"{s['entries']} entries; modular entries all vanish at -1: "
                     f"{s['modular_all_vanish']}")
        return "\n".join(lines)
    if command == "subdivision":
        return "\n".join([f"f(parent) = {doc['lhs']['text']}",
                          f"inclusion-exclusion = {doc['rhs']['text']}",
                          f"residual = {doc['residual']['text']}"])
    return json.dumps(doc, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jmobius", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "text"), default="json")

    c = sub.add_parser("compute", help="compute an invariant of a poset or matroid")
    c.add_argument("--object")
    c.add_argument("--invariant", choices=INVARIANTS, default="jmobius")
    c.add_argument("--q", type=int)
    c.add_argument("--n", type=int)
    common(c)

    v = sub.add_parser("verify", help="check identities on one object")
    v.add_argument("--object")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--q", type=int)
    v.add_argument("--n", type=int)
    common(v)

    s = sub.add_parser("search", help="scan small simple matroids for roots of ℳ at -1")
    s.add_argument("--max-ground", type=int, default=7)
    s.add_argument("--max-rank", type=int, default=3)
    common(s)

    d = sub.add_parser("subdivision", help="inclusion-exclusion over a matroid subdivision")
    d.add_argument("--fixture", default="u24-split")
    d.add_argument("--invariant", choices=tuple(_SUBDIVISION_INVARIANTS), default="jchar")
    common(d)
    return ap


def run(args: argparse.Namespace) -> tuple[int, object]:
    if args.command == "compute":
        return EXIT_OK, compute(resolve_object(args.object, args.q, args.n), args.invariant)
    if args.command == "verify":
        doc = verify(resolve_object(args.object, args.q, args.n), args.suite, args.seed)
        return (EXIT_OK if doc["ok"] else EXIT_VIOLATION), doc
    if args.command == "search":
        rows = search_minus_one_roots(args.max_ground, args.max_rank)
        return EXIT_OK, {"catalog": rows, "summary": search_summary(rows)}
    if args.command == "subdivision":
        return EXIT_OK, subdivision(args.fixture, args.invariant)
    raise InputError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, doc = run(args)
    except (JMobiusError, OSError) as exc:
        code = getattr(exc, "code", "io")
        print(json.dumps({"error": code, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_INPUT
    if args.format == "text":
        print(_render_text(args.command, doc))
    else:
        print(json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
