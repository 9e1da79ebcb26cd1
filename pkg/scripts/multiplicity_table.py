"""Graded multiplicities of L(lambda) in V(lambda) over the acceptance sweep.

    python scripts/multiplicity_table.py [N]
"""
import sys

from critchar.formulas import decomposition_multiplicities, endring_character
from critchar.rootdata import build_root_system

SWEEP = [("A", 1, (0,)), ("A", 1, (1,)), ("A", 2, (0, 0)), ("A", 2, (1, 0)),
         ("C", 2, (0, 0)), ("C", 2, (0, 1)), ("G", 2, (0, 0)), ("G", 2, (1, 0))]


def main(N: int = 8) -> None:
    for t, l, lam in SWEEP:
        rs = build_root_system(t, l)
        L = rs.critical_weight(lam)
        m = decomposition_multiplicities(rs, L, N).coefficients
        agree = m == endring_character(rs, L, N).coefficients
        print(f"{rs.label:3} {str(lam):7} {' '.join(map(str, m))}  {'ok' if agree else 'MISMATCH'}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
