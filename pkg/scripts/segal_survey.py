"""Survey Segal verdicts for nerves of the built-in categories and bar constructions.

    python scripts/segal_survey.py --max-m 3
"""

import argparse

from multisegal import cat
from multisegal.bar import NonCommutativeError, bar
from multisegal.sset import check_segal, check_segal_multi


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-m", type=int, default=3)
    parser.add_argument("--max-k", type=int, default=2)
    args = parser.parse_args()

    print("nerves")
    for C in cat.small_categories():
        report = check_segal(cat.nerve(C, args.max_m), args.max_m)
        statuses = " ".join(v.status for v in report.verdicts)
        print(f"  {C.name:12s} {statuses}")

    print("bar constructions")
    names = list(cat.BUILTIN_COMMUTATIVE) + ["leftzero3"]
    for name in names:
        M = cat.builtin_monoid(name)
        for n in (1, 2, 3):
            try:
                W = bar(M, n, max(args.max_m, args.max_k))
            except NonCommutativeError as err:
                print(f"  {name:12s} n={n}: refused ({err.witness[0]!r}*{err.witness[1]!r} not commutative)")
                continue
            report = check_segal_multi(W, args.max_m, args.max_k)
            print(f"  {name:12s} n={n}: {'all bijective' if report.all_bijective else 'FAILS'}")


if __name__ == "__main__":
    main()
