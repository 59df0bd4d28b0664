#!/usr/bin/env python3
"""Deciding finite-dimensionality via Drinfeld polynomials.

Given a highest weight, the classification theorems reduce finiteness to a
functional equation P(u + shift)/P(u) = (ratio of tilde-transformed weight
components) together with reflection symmetries of P (plus a scalar gamma
for types CI/DIII).  The solver works purely by exact linear algebra on
coefficients; no factorization, no floating point, and an honest
"inconclusive" when a rational certificate cannot be decided.
"""

from fractions import Fraction

from twyang import (
    Certificate,
    Poly,
    WeightTuple,
    classify,
    construct_from_cert,
    eval_so3,
    eval_so4,
    highest_weight_extract,
    onedim_module,
    pair,
    rf,
)

# classify an so_3 evaluation module
m = eval_so3(-1)
wt = WeightTuple(m.pair, highest_weight_extract(m).weights)
v = classify(wt)
print(m.provenance, "->", v.finite_dim)
print("  P_1 =", v.certificate.P[0], " (symmetric about 3/4)")

# classify an so_4 DIII module: a (P, Q, gamma) certificate
m = eval_so4("DIII", 1, 0)
wt = WeightTuple(m.pair, highest_weight_extract(m).weights)
v = classify(wt)
print(m.provenance, "->", v.finite_dim)
print("  P =", [str(p) for p in v.certificate.P], " gamma =", v.certificate.gamma)

# a weight that is not even nontrivial
wt = WeightTuple(pair("D0", 4), {1: rf((1, 1), (0, 1)), 2: rf((1,))})
print("perturbed D0 weight ->", classify(wt).as_dict()["finite_dim"])

# an honest inconclusive: irrational pole structure for CI
wt = WeightTuple(pair("CI", 2), {1: rf((2, 0, 1), (0, 0, 1))})
print("irrational CI weight ->", classify(wt).finite_dim)

# the reverse direction: build a weight from a certificate and round-trip it
pt = pair("CI", 4)
Q = [Poly.from_roots([Fraction(1, 2)]), Poly.from_roots([Fraction(-1)])]
P = [Q[0] * Q[0].compose_affine(-1, Fraction(5)) * Fraction(-1),
     Q[1] * Q[1].compose_affine(-1, Fraction(2)) * Fraction(-1)]
cert = Certificate(pt, P, gamma=Fraction(3))
wt = construct_from_cert(cert, Q)
v = classify(wt)
print("round trip recovers the certificate:",
      v.certificate.P == cert.P and v.certificate.gamma == cert.gamma)

# necessary conditions (the only implemented direction) for BDI/CII
pt = pair("BIa", 5, 3, 2)
wt = WeightTuple(pt, highest_weight_extract(onedim_module(pt)).weights)
v = classify(wt)
print(f"{pt}: {v.finite_dim} (pass = {v.necessary_pass})")
