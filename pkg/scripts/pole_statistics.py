"""How many candidate poles survive in the reduced topological zeta function?

For seeded random branches, compare the candidate list with the factors of
the reduced denominator of Z_top and tabulate the outcome by (d, g).
"""

import argparse
from collections import defaultdict

from qozeta.branch import derive_invariants, random_branch
from qozeta.ztop import candidate_pole_multiset, special_vectors, z_top


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=200)
    args = parser.parse_args()
    table = defaultdict(lambda: [0, 0, 0, 0])  # branches, candidates, actual poles, special vectors
    for seed in range(args.seed, args.seed + args.count):
        inv = derive_invariants(random_branch(seed))
        zt = z_top(inv)
        row = table[(inv.d, inv.g)]
        row[0] += 1
        row[1] += len(candidate_pole_multiset(inv))
        row[2] += len(zt.den)
        row[3] += len(special_vectors(inv))
    print(f"{'d':>2} {'g':>2} {'branches':>9} {'candidates':>11} {'poles':>6} {'ratio':>6} {'special':>8}")
    for (d, g), (n, cand, poles, special) in sorted(table.items()):
        print(f"{d:>2} {g:>2} {n:>9} {cand:>11} {poles:>6} {poles / cand:>6.2f} {special:>8}")


if __name__ == "__main__":
    main()
