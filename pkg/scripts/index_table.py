"""Tabulate Hilbert index polynomials of the two built-in curves for a few 1-PS.

    python scripts/index_table.py --curve bridge
    python scripts/index_table.py --curve tacnodal --weights 0,2,3,4,2 --weights 1,0,0,0,0
"""
import argparse

from gitbench import anchors
from gitbench.stability import OnePS, chow_index, hilbert_index_polynomial, stabilizer_weights

DEFAULT_WEIGHTS = {
    "bridge": [(3, -2, -7, 3, 3), (-3, 2, 7, -3, -3), (1, 0, 0, 0, 0), (0, 1, 2, 0, 0)],
    "tacnodal": [(0, 2, 3, 4, 2), (-11, -1, 4, 9, -1), (1, 0, 0, 0, 0), (0, 0, 0, 0, 1)],
}


def weight_vector(text: str) -> tuple:
    return tuple(int(x) for x in text.split(","))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--curve", choices=sorted(DEFAULT_WEIGHTS), default="bridge")
    parser.add_argument("--weights", type=weight_vector, action="append", help="comma-separated GL weights")
    args = parser.parse_args(argv)

    ideal = anchors.bridge_ideal() if args.curve == "bridge" else anchors.tacnodal_ideal()
    rows = args.weights or DEFAULT_WEIGHTS[args.curve]
    print(f"curve: {args.curve}")
    print("stabilizer lattice: " + "; ".join(str(v) for v in stabilizer_weights(ideal)))
    print(f"{'weights':<24}{'mu_m':<32}chow (leading)")
    for w in rows:
        poly = hilbert_index_polynomial(ideal, OnePS(w))
        print(f"{str(w):<24}{str(poly):<32}{chow_index(ideal, w, 'leading')}")


if __name__ == "__main__":
    main()
