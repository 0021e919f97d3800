"""Search minimal edits that repair printed word relations which fail to verify.

For every failing relation, tries each single edit of the right-hand side:
replace one operator index, flip one sign, drop one term, or add one term
``+-w`` with ``w`` a nondecreasing word of length <= 3.  Prints every edit that
makes the relation hold.

    python scripts/find_relation_corrections.py src/heatsym/data/relations.json
"""
import argparse
import itertools
import json
from fractions import Fraction

from heatsym.parser import parse_relation
from heatsym.symmetry import (
    WordRelation,
    characteristics,
    combination_str,
    enumerate_words,
    evaluate_combination,
)
from heatsym.jet import normal_form


def edits(rhs):
    n = len(rhs)
    for t in range(n):
        c, w = rhs[t]
        for pos in range(len(w)):
            for i in range(1, 10):
                if i != w[pos]:
                    w2 = w[:pos] + (i,) + w[pos + 1:]
                    yield f"replace R{w[pos]} by R{i} in term {t + 1}", rhs[:t] + [(c, w2)] + rhs[t + 1:]
        yield f"flip sign of term {t + 1}", rhs[:t] + [(-c, w)] + rhs[t + 1:]
        yield f"drop term {t + 1}", rhs[:t] + rhs[t + 1:]
    for w in enumerate_words(3):
        for s in (1, -1):
            yield f"add {'+' if s > 0 else '-'}{w}", rhs + [(Fraction(s), w)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("fixture")
    args = ap.parse_args()
    entries = json.load(open(args.fixture))
    words = enumerate_words(3, mode="all")
    chars = dict(zip(words, characteristics(words)))
    for e in entries:
        if not e.get("as_printed", True):
            continue
        rel = parse_relation(f"{e['lhs']} == {e['rhs']}")
        lhs = evaluate_combination(rel.lhs)
        if normal_form(lhs - evaluate_combination(rel.rhs)).is_zero():
            continue
        print(f"{e['name']}: {e['lhs']} == {e['rhs']}  FAILS")
        for label, rhs in edits(rel.rhs):
            total = sum((chars[tuple(w)] * c for c, w in rhs), lhs * 0)
            if normal_form(lhs - total).is_zero():
                print(f"    fix: {label}:  {e['lhs']} == {combination_str(rhs)}")


if __name__ == "__main__":
    main()
