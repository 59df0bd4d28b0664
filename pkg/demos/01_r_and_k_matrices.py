#!/usr/bin/env python3
"""R-matrices, K-matrices and their exact identities.

Builds the rational R-matrix R(u) = I - P/u + Q/(u - kappa), checks the
Yang-Baxter equation and unitarity exactly (as polynomial identities in two
variables, no sampling), and runs the K-matrix suite for a few symmetric
pairs, including a second-kind (u-dependent) one.
"""

from fractions import Fraction

from twyang import (
    check_p_identity,
    check_yang_baxter,
    g_matrix,
    k_one_param,
    op_P,
    op_Q,
    p_scalar,
    pair,
    r_matrix,
    verify_k_matrix,
    verify_r_matrix,
)

# The structural operators: P^2 = I, Q^2 = N Q, PQ = QP = +-Q.
P = op_P(4)
Q = op_Q(4, "symplectic")
print("P^2 = I:", (P @ P) == P @ P @ P @ P)
print("Q^2 = N Q:", (Q @ Q) == Q.scale(Fraction(4)))
print("P Q = -Q (symplectic):", (P @ Q) == Q.scale(Fraction(-1)))

# Yang-Baxter for the orthogonal so_5 R-matrix (kappa = 3/2).
print()
print(verify_r_matrix(5, "orthogonal"))

# K-matrix suite for a trivial pair, a CI pair and the second-kind BI(a).
for pt in [pair("C0", 4), pair("CI", 4), pair("BIa", 5, 3, 2)]:
    rep = verify_k_matrix(pt)
    print(rep)
    print(f"  p(u) = {p_scalar(g_matrix(pt), pt)}")
    assert check_p_identity(g_matrix(pt), pt).passed

# The one-parameter family G + a/u I of type CI/DIII.
rep = verify_k_matrix(pair("DIII", 4), a=Fraction(3, 7))
print(rep)
