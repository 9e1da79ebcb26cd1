"""Gram-rank graded dimensions of L(lambda) next to the closed-form values.

    python scripts/oracle_table.py
"""
from critchar.charseries import qdims
from critchar.formulas import critical_character, weyl_module_character
from critchar.oracle.weyl_module import simple_quotient_dims
from critchar.rootdata import build_root_system

CASES = [("A", 1, (0,), 4), ("A", 1, (1,), 3), ("A", 1, (2,), 3), ("A", 2, (0, 0), 2), ("A", 2, (1, 0), 2)]


def main() -> None:
    print(f"{'type':5} {'lambda':8} {'dim V':24} {'gram rank':24} {'closed form':24} agree")
    for t, l, lam, N in CASES:
        rs = build_root_system(t, l)
        L = rs.critical_weight(lam)
        rep = simple_quotient_dims(rs, L, N)
        closed = qdims(critical_character(rs, L, N)).coefficients
        weyl = qdims(weyl_module_character(rs, L, N)).coefficients
        fmt = lambda xs: " ".join(map(str, xs))
        print(f"{rs.label:5} {str(lam):8} {fmt(weyl):24} {fmt(rep.qdims()):24} {fmt(closed):24} "
              f"{rep.qdims() == tuple(closed)}")


if __name__ == "__main__":
    main()
