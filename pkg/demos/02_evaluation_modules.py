#!/usr/bin/env python3
"""Evaluation modules of the low-rank twisted Yangians.

Builds finite-dimensional modules for the pairs (sp_2, sp_2), (sp_2, gl_1),
(so_3, so_3) and (so_4, so_4 / gl_2), verifies the defining reflection and
symmetry relations exactly, and reads off highest weights and the central
scalar w(u) with S(u) S(-u) = w(u) I.
"""

from fractions import Fraction

from twyang import (
    eval_so3,
    eval_so4,
    eval_sp2,
    highest_weight_extract,
    unitary_scalar,
    verify_twisted,
)

# a 3-dimensional module of the (sp_2, sp_2) twisted Yangian
m = eval_sp2("C0", -2)
print(m.provenance, "dim", m.dim)
print(verify_twisted(m))
w = highest_weight_extract(m).weights
print("  highest weight mu(u) =", w[1])
print("  w(u) =", unitary_scalar(m), "= mu(u) mu(-u):",
      unitary_scalar(m) == w[1] * w[1].reflect())

# so_3: note the half-integer weight lattice
m = eval_so3(Fraction(-3, 2))
print()
print(m.provenance, "dim", m.dim)
print(verify_twisted(m))
w = highest_weight_extract(m).weights
print("  mu_0(u) =", w[0])
print("  mu_1(u) =", w[1])

# so_4, both fixed subalgebras
for variant, mu in [("D0", (0, -1)), ("DIII", (1, 0))]:
    m = eval_so4(variant, *mu)
    print()
    print(m.provenance, "dim", m.dim)
    print(verify_twisted(m))
    w = highest_weight_extract(m).weights
    print("  mu_1, mu_2 =", w[1], "|", w[2])
