#!/usr/bin/env python3
"""Coideal tensor products and rank reduction.

The twisted Yangian is a left coideal subalgebra, so an X(g_N)-module W
tensored with a twisted module V is again a twisted module.  This demo
tensors the vector evaluation module of X(sp_4) with a one-dimensional
CI-module, verifies the result, restricts to the subspace V+ (dropping the
rank by one) and to V^J (landing in a reflection algebra), and checks the
highest-weight bookkeeping at every step.
"""

from fractions import Fraction

from twyang import (
    RatFunc,
    WeightTuple,
    extract_x_weights,
    highest_weight_extract,
    onedim_module,
    pair,
    poly,
    restrict_v_j,
    restrict_v_plus,
    tensor_twisted,
    tilde,
    vector_eval_x,
    verify_twisted,
)

pt = pair("CI", 4)
x = vector_eval_x(4, "symplectic", 0)
lam = extract_x_weights(x).candidates[0][1]
print("vector X(sp_4)-module weights:", {i: str(l) for i, l in lam.items()})

tm = tensor_twisted(x, onedim_module(pt))
print("tensor module dim", tm.dim)
print(verify_twisted(tm))

hw = highest_weight_extract(tm)
gt = tilde(WeightTuple(pt, hw.weights)).tmu
ka2 = pt.kappa / 2
two_u = RatFunc(poly(0, 2))
for i in pt.i_range:
    prod = lam[i].substitute_affine(1, -ka2) * lam[-i].substitute_affine(-1, ka2)
    print(f"  tilde mu_{i} == 2u * lam_{i}(u-k/2) lam_{-i}(-u+k/2):",
          gt[i] == two_u * prod)

sub, rep = restrict_v_plus(tm)
print()
print("V+ restriction ->", sub.pair, "dim", sub.dim)
print(rep)
print("restricted weight:", str(highest_weight_extract(sub).weights[1]))

bm, rep = restrict_v_j(tm)
print()
print("V^J restriction -> reflection algebra B(2, 0) module, dim", bm.dim)
print(rep)
