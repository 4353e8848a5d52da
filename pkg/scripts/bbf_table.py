"""Two clique unions whose decks share 2p cards but whose sizes differ by one.

    python3 scripts/bbf_table.py --pmax 12
"""

from __future__ import annotations

import argparse

from decksize.adversary import bbf_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=10)
    args = ap.parse_args()
    print(" p    n   e(G)  e(H)  common  2p")
    for p in range(2, args.pmax + 1):
        _, _, s = bbf_pair(p)
        print(f"{p:2d} {s['n']:4d} {s['m_G']:6d} {s['m_H']:5d} {s['common']:7d} {2 * p:3d}")


if __name__ == "__main__":
    main()
