"""Conserved vectors generated from the base law by point and generalized symmetries.

For each generator X1..X13 reports whether it is associated with the base law,
the multiplier of the law it generates, and the bracket criterion against the
translations.  Then classifies the laws generated by the order <= n basis.
"""
import argparse
from collections import Counter
from dataclasses import dataclass

from heatsym.conslaw import T_BASE, generate_evolutionary, generate_point, invariance_check, multiplier, bracket_criterion
from heatsym.liealg import GENERATORS
from heatsym.symmetry import basis, word_str


@dataclass
class Config:
    order: int = 2
    show_laws: bool = False


def point_section():
    print("point symmetries acting on (-U, Ux, Uy, Uz)")
    for k, V in GENERATORS.items():
        T = generate_point(V)
        lam = multiplier(T).value
        print(f"  X{k:<3} associated={str(invariance_check(V)):<5}  multiplier={lam}")
    print("bracket criterion with Y = X6")
    for k in (11, 12, 13):
        chk = bracket_criterion(GENERATORS[k], GENERATORS[6], T_BASE)
        print(f"  X = X{k}: [X, Y] = {chk.bracket}, b = {chk.proportional_to_Y}, "
              f"predicted trivial = {chk.predicts_trivial}, generated multiplier = {chk.generated_multiplier}")


def basis_section(cfg: Config):
    classes = Counter()
    entries = basis(cfg.order)
    for w, Q in entries:
        T = generate_evolutionary(Q)
        lam = multiplier(T)
        assert lam.adjoint_ok
        classes[str(lam.value)] += 1
        if cfg.show_laws:
            print(f"  {word_str(w):<10} {T}  multiplier {lam.value}")
    print(f"order <= {cfg.order} basis: {len(entries)} laws, multiplier classes:")
    for lam, count in sorted(classes.items(), key=lambda kv: -kv[1]):
        print(f"  {lam:<12} x{count}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=Config.order)
    ap.add_argument("--show-laws", action="store_true")
    a = ap.parse_args()
    point_section()
    basis_section(Config(a.order, a.show_laws))
