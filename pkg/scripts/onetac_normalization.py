"""Compare the one-tacnode index for rational SL weights and for their integral rescaling.

The weights (0,2,3,4,2) and (-11,-1,4,9,-1) = 5*(0,2,3,4,2) - 11 define the same
1-PS up to scale, so every index differs by exactly the factor 5.
"""
from fractions import Fraction

from gitbench import anchors
from gitbench.stability import CHOW_POINT_WEIGHT, chow_combined_index, chow_index, hilbert_index_polynomial, point_index_bound


def main():
    ideal = anchors.tacnodal_ideal()
    point = anchors.tacnodal_point()
    for rho in (anchors.RHO_TAC, anchors.RHO_TAC_INTEGRAL):
        w = rho.gl_weights
        print(f"weights {w}")
        print(f"  mu_m                      {hilbert_index_polynomial(ideal, rho)}")
        print(f"  chow (leading)            {chow_index(ideal, rho, 'leading')}")
        print(f"  largest point weight      {point_index_bound(rho)}")
        print(f"  chow + 4/3 point bound    {chow_index(ideal, rho, 'leading') + CHOW_POINT_WEIGHT * point_index_bound(rho)}")
        print(f"  chow of (C, p), p generic {chow_combined_index(ideal, point, rho, 'leading')}")
    a = hilbert_index_polynomial(ideal, anchors.RHO_TAC_INTEGRAL)
    b = hilbert_index_polynomial(ideal, anchors.RHO_TAC)
    print(f"ratio of leading coefficients: {Fraction(a.coeff(2)) / b.coeff(2)}")


if __name__ == "__main__":
    main()
