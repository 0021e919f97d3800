"""``heatsym`` command line.

Exit codes: 0 success or verified, 1 verification failure, 2 usage or parse
error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from itertools import combinations
from typing import List, Optional

from . import conslaw, liealg, symmetry
from .jet import U, normal_form, residual
from .parser import ParseError, parse_combination, parse_diff, parse_relation

SLOW_ORDER = 5


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


def _fixture_path(name: str):
    return resources.files("heatsym") / "data" / name


def load_schema() -> dict:
    return json.loads(_fixture_path("schemas.json").read_text())


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _check_slow(args, n: int):
    if n < 0:
        raise UsageError("order must be nonnegative")
    if n >= SLOW_ORDER and not args.slow:
        raise UsageError(f"order {n} needs --slow")


# -- count -------------------------------------------------------------------

def cmd_count(args) -> int:
    n = args.n
    _check_slow(args, n)
    res = symmetry.independent_count(n, mode=args.mode, jobs=args.jobs)
    same = [symmetry.deps_same_order(k) for k in range(n + 1)]
    cross = [symmetry.deps_cross_order(k) for k in range(n)]
    words = len(symmetry.enumerate_words(n, args.mode))
    payload = {
        "order": n,
        "mode": args.mode,
        "words": words,
        "enumerated_rank": res.enumerated_rank,
        "formula_N": res.formula_value,
        "deps_same": same,
        "deps_cross": cross,
        "dependency_totals": [symmetry.dependency_total(k) for k in range(n + 1)],
        "agree": res.agree,
    }
    lines = [
        f"order n = {n}",
        f"  words ({args.mode}, length <= {n}): {words}",
        f"  enumerated rank: {res.enumerated_rank}",
        f"  closed form N({n}): {res.formula_value}",
        "  order k: same-order + cross-order = dependencies",
    ]
    for k in range(n + 1):
        c = cross[k - 1] if k >= 1 else 0
        lines.append(f"    {k}: {same[k]} + {c} = {same[k] + c}")
    lines.append(f"  agree: {'yes' if res.agree else 'NO'}")
    _emit(args, payload, "\n".join(lines))
    return 0 if res.agree else 1


# -- basis -------------------------------------------------------------------

def cmd_basis(args) -> int:
    n = args.n
    _check_slow(args, n)
    entries = symmetry.basis(n, jobs=args.jobs)
    data = [{"word": list(w), "characteristic": Q.to_json(), "text": str(Q)} for w, Q in entries]
    if args.out:
        try:
            with open(args.out, "w") as fh:
                json.dump(data, fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            sys.stderr.write(f"heatsym: cannot write {args.out}: {exc}\n")
            return 3
    payload = {"order": n, "size": len(entries), "formula_N": symmetry.formula_N(n), "out": args.out}
    if not args.out:
        payload["basis"] = data
    lines = [f"basis of order <= {n}: {len(entries)} characteristics (N({n}) = {symmetry.formula_N(n)})"]
    if args.out:
        lines.append(f"written to {args.out}")
    else:
        for k in range(n + 1):
            group = [(w, Q) for w, Q in entries if len(w) == k]
            lines.append(f"order {k} ({len(group)}):")
            lines.extend(f"  {symmetry.word_str(w):<12} {Q}" for w, Q in group)
    _emit(args, payload, "\n".join(lines))
    return 0 if len(entries) == symmetry.formula_N(n) else 1


# -- apply / verify-symmetry -------------------------------------------------

def cmd_apply(args) -> int:
    comb = parse_combination(args.words)
    seed = parse_diff(args.seed) if args.seed else U
    Q = normal_form(symmetry.evaluate_combination(comb, seed))
    res = residual(Q)
    payload = {
        "words": symmetry.combination_str(comb),
        "seed": str(seed),
        "characteristic": Q.to_json(),
        "text": str(Q),
        "residual_zero": res.is_zero(),
    }
    _emit(args, payload, f"{symmetry.combination_str(comb)} [{seed}] = {Q}")
    return 0


def cmd_verify_symmetry(args) -> int:
    Q = normal_form(parse_diff(args.expr))
    res = residual(Q)
    ok = res.is_zero()
    payload = {"expr": args.expr, "normal_form": str(Q), "residual": res.to_json(), "residual_text": str(res), "symmetry": ok}
    text = f"{Q}: " + ("symmetry (residual 0)" if ok else f"NOT a symmetry, residual {res}")
    _emit(args, payload, text)
    return 0 if ok else 1


# -- verify-relations --------------------------------------------------------

def load_relation_fixture(path) -> List[dict]:
    import jsonschema

    try:
        if path is None:
            raw = _fixture_path("relations.json").read_text()
        else:
            with open(path) as fh:
                raw = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read fixture {path}: {exc}") from exc
    try:
        entries = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"fixture is not valid JSON: {exc}") from None
    schema = load_schema()
    try:
        jsonschema.validate(entries, {"$ref": "#/$defs/relation_fixture", "$defs": schema["$defs"]})
    except jsonschema.ValidationError as exc:
        raise UsageError(f"malformed fixture: {exc.message}") from None
    return entries


def cmd_verify_relations(args) -> int:
    entries = load_relation_fixture(args.fixture)
    if args.printed_only:
        entries = [e for e in entries if e["as_printed"]]
    if args.source:
        wanted = set(args.source.split(","))
        entries = [e for e in entries if e["source"] in wanted]
    results = []
    for e in entries:
        try:
            rel = parse_relation(f"{e['lhs']} == {e['rhs']}")
        except ParseError as exc:
            raise UsageError(f"relation {e['name']}: {exc}") from None
        chk = symmetry.verify_relation(rel)
        results.append({
            "name": e["name"],
            "source": e["source"],
            "relation": str(rel),
            "as_printed": e["as_printed"],
            "typo": bool(e.get("typo", False)),
            "corrects": e.get("corrects"),
            "holds": chk.holds,
            "residual": str(chk.residual),
        })
    passed = sum(r["holds"] for r in results)
    blocking = [r for r in results if not r["holds"] and not r["typo"]]
    flagged = [r for r in results if r["typo"]]
    corrected = {r["corrects"]: r["holds"] for r in results if r["corrects"]}
    payload = {
        "relations": results,
        "total": len(results),
        "passed": passed,
        "failed": len(results) - passed,
        "typo_flagged": len(flagged),
        "typos_with_verified_correction": sum(bool(corrected.get(r["name"])) for r in flagged),
        "ok": not blocking,
    }
    lines = []
    for r in results:
        tag = "PASS" if r["holds"] else ("FAIL (flagged typo)" if r["typo"] else "FAIL")
        line = f"{tag:<20} {r['name']:<20} {r['relation']}"
        if not r["holds"]:
            line += f"\n{'':<21}residual: {r['residual']}"
        lines.append(line)
    lines.append(f"{passed}/{len(results)} relations hold; {len(flagged)} flagged typo(s)")
    _emit(args, payload, "\n".join(lines))
    return 0 if not blocking else 1


# -- commutators -------------------------------------------------------------

def cmd_commutators(args) -> int:
    gens = dict(liealg.GENERATORS)
    if args.printed_x5:
        gens[5] = liealg.PRINTED_X5
    entries = liealg.verify_table(gens)
    keys = sorted(gens)
    antisym = all(
        (liealg.commutator(gens[i], gens[j]) + liealg.commutator(gens[j], gens[i])).is_zero()
        for i, j in combinations(keys, 2)
    )
    jac = all(liealg.jacobi(gens[i], gens[j], gens[k]).is_zero() for i, j, k in combinations(keys, 3))
    sub = liealg.is_subalgebra(liealg.SUBALGEBRA, gens)
    closes = all(e.closes for e in entries)
    agree = all(e.agree for e in entries)
    rows = [
        {
            "left": e.left,
            "right": e.right,
            "computed": liealg.combination_str(e.computed),
            "printed": liealg.combination_str(e.printed),
            "agree": e.agree,
        }
        for e in entries
    ]
    ok = closes and antisym and jac and sub and agree
    payload = {
        "x5": str(gens[5]),
        "brackets": rows,
        "closes": closes,
        "antisymmetric": antisym,
        "jacobi": jac,
        "subalgebra_1_10_closed": sub,
        "printed_agree": sum(e.agree for e in entries),
        "total": len(entries),
        "ok": ok,
    }
    lines = [f"X5 = {gens[5]}"]
    for r in rows:
        if r["computed"] == "0" and r["printed"] == "0":
            continue
        mark = "" if r["agree"] else f"   (printed: {r['printed']})  MISMATCH"
        lines.append(f"[X{r['left']}, X{r['right']}] = {r['computed']}{mark}")
    lines.append("all remaining brackets vanish" if all(
        r["agree"] for r in rows if r["printed"] == "0") else "some printed zero brackets do not vanish")
    lines.append(f"printed table: {payload['printed_agree']}/{len(rows)} entries agree")
    lines.append(f"closure in span X1..X13: {closes}; antisymmetry: {antisym}; Jacobi: {jac}; X1..X10 subalgebra: {sub}")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


# -- conserve / classify -----------------------------------------------------

def _classification(T: conslaw.ConservedVector) -> dict:
    div = conslaw.divergence(T)
    out = {
        "vector": T.to_json(),
        "vector_text": [str(c) for c in T.components],
        "divergence_raw": str(div.raw),
        "on_shell_divergence": str(div.on_shell),
        "conserved": div.conserved,
    }
    if div.conserved:
        lam = conslaw.multiplier(T)
        out.update({
            "multiplier": lam.value.to_json(),
            "multiplier_text": str(lam.value),
            "adjoint_ok": lam.adjoint_ok,
            "trivial_first_kind": conslaw.is_trivial_first_kind(T),
            "multiplier_trivial": lam.is_zero(),
            "equivalent_to_base": conslaw.equivalent(T, conslaw.T_BASE),
        })
    return out


def _classification_text(rep: dict) -> str:
    names = ("T^t", "T^x", "T^y", "T^z")
    lines = [f"  {n} = {c}" for n, c in zip(names, rep["vector_text"])]
    lines.append(f"  on-shell divergence: {rep['on_shell_divergence']}")
    if rep["conserved"]:
        lines.append(f"  multiplier: {rep['multiplier_text']} (adjoint equation {'ok' if rep['adjoint_ok'] else 'FAILS'})")
        lines.append(f"  trivial (components vanish on solutions): {rep['trivial_first_kind']}")
        lines.append(f"  multiplier-trivial: {rep['multiplier_trivial']}")
        lines.append(f"  equivalent to (-U, Ux, Uy, Uz): {rep['equivalent_to_base']}")
    else:
        lines.append("  NOT conserved")
    return "\n".join(lines)


def cmd_conserve(args) -> int:
    Q = normal_form(parse_diff(args.expr))
    res = residual(Q)
    if not res.is_zero():
        payload = {"expr": args.expr, "symmetry": False, "residual": str(res)}
        _emit(args, payload, f"{args.expr!r} is not a symmetry characteristic: residual {res}")
        return 1
    T = conslaw.generate_evolutionary(Q)
    rep = _classification(T)
    payload = {"expr": args.expr, "symmetry": True, "characteristic": str(Q), **rep}
    _emit(args, payload, f"conserved vector generated by {Q}:\n" + _classification_text(rep))
    return 0 if rep["conserved"] and rep["adjoint_ok"] else 1


def cmd_classify(args) -> int:
    try:
        with open(args.vector) as fh:
            data = json.load(fh)
    except OSError as exc:
        sys.stderr.write(f"heatsym: cannot read {args.vector}: {exc}\n")
        return 3
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON: {exc}") from None
    try:
        T = conslaw.ConservedVector.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed conserved vector: {exc}") from None
    rep = _classification(T)
    _emit(args, {"path": args.vector, **rep}, f"{args.vector}:\n" + _classification_text(rep))
    return 0 if rep["conserved"] else 1


# -- wiring ------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--jobs", type=int, default=d(1), metavar="N")
    p.add_argument("--slow", action="store_true", default=d(False), help=f"allow order >= {SLOW_ORDER}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heatsym", description="Symmetry hierarchy and conservation laws of U_t = U_xx + U_yy + U_zz")
    _global_flags(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="rank of the word hierarchy vs closed form")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=("nondecreasing", "all"), default="nondecreasing")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("basis", parents=[common], help="greedy basis of characteristics")
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("apply", parents=[common], help="apply operator words, e.g. 'R1 R8'")
    p.add_argument("words")
    p.add_argument("--seed", help="seed characteristic (default U)")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify-symmetry", parents=[common], help="check the invariance condition")
    p.add_argument("expr")
    p.set_defaults(func=cmd_verify_symmetry)

    p = sub.add_parser("verify-relations", parents=[common], help="check word relations from a fixture")
    p.add_argument("fixture", nargs="?", help="relation fixture (default: shipped set)")
    p.add_argument("--printed-only", action="store_true")
    p.add_argument("--source", help="comma-separated sources, e.g. fir-od,sec-od")
    p.set_defaults(func=cmd_verify_relations)

    p = sub.add_parser("commutators", parents=[common], help="bracket table of X1..X13")
    p.add_argument("--printed-x5", action="store_true", help="use X5 exactly as printed")
    p.set_defaults(func=cmd_commutators)

    p = sub.add_parser("conserve", parents=[common], help="conserved vector generated by a characteristic")
    p.add_argument("expr")
    p.set_defaults(func=cmd_conserve)

    p = sub.add_parser("classify", parents=[common], help="classify a conserved vector JSON file")
    p.add_argument("vector")
    p.set_defaults(func=cmd_classify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.jobs < 1:
        ap.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        sys.stderr.write(f"heatsym: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"heatsym: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
