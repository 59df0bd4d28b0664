"""Exact verification of operator-valued matrix relations on modules.

A module hands over its S-matrix in cleared form: a common denominator
polynomial den(u) and, per label pair (i,j), the coefficient matrices of the
numerator polynomial num_ij(u) (ascending powers of u, entries exact).  The
defining commutator relations are then polynomial identities in (u, v); both
sides are multiplied by the common scalar denominator and compared
coefficient by coefficient.  That keeps every d x d matrix product between
original numerator matrices; all degree growth lives in scalar polynomials.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exact import BiPoly, Poly, RatFunc, poly
from .rkmat import Report
from .tensors import SYMPLECTIC, sign


def _zeros(d):
    m = np.empty((d, d), dtype=object)
    m[:] = Fraction(0)
    return m


def _is_zero_mat(m) -> bool:
    return not any(bool(x) for x in m.flat)


class ClearedS:
    """Cleared S-matrix data plus the precomputed pair products."""

    def __init__(self, labels, family, dim, den: Poly, num: dict):
        self.labels = list(labels)
        self.family = family
        self.dim = dim
        self.den = den
        # strip zero coefficient matrices but keep alignment
        self.num = {k: [a for a in v] for k, v in num.items() if any(not _is_zero_mat(a) for a in v)}
        self._L = {}

    def tfac(self, a) -> int:
        if self.family == SYMPLECTIC:
            if a == 0:
                raise ValueError("index 0 cannot occur in the symplectic family")
            return sign(a)
        return 1

    def theta(self, i, j) -> int:
        return self.tfac(i) * self.tfac(j) if self.family == SYMPLECTIC else 1

    # -- products -------------------------------------------------------
    def product(self, ab, cd):
        """{(p, q): num_ab[p] @ num_cd[q]}, i.e. s_ab(u) s_cd(v) numerators."""
        key = (ab, cd)
        got = self._L.get(key)
        if got is not None:
            return got
        A = self.num.get(ab)
        B = self.num.get(cd)
        out = {}
        if A and B:
            for p, ap in enumerate(A):
                if _is_zero_mat(ap):
                    continue
                for q, bq in enumerate(B):
                    if _is_zero_mat(bq):
                        continue
                    out[(p, q)] = ap @ bq
        self._L[key] = out
        return out

    def _sum_products(self, pairs):
        out = {}
        for w, ab, cd in pairs:
            if not w:
                continue
            for k, m in self.product(ab, cd).items():
                acc = out.get(k)
                out[k] = w * m if acc is None else acc + w * m
        return out

    def sig(self, i, l):
        """sum_a s_ia(u) s_al(v)."""
        key = ("sig", i, l)
        got = self._L.get(key)
        if got is None:
            got = self._sum_products([(1, (i, a), (a, l)) for a in self.labels])
            self._L[key] = got
        return got

    def th1(self, j, l):
        """sum_a tfac(a) s_aj(u) s_{-a,l}(v)."""
        key = ("th1", j, l)
        got = self._L.get(key)
        if got is None:
            got = self._sum_products([(self.tfac(a), (a, j), (-a, l)) for a in self.labels])
            self._L[key] = got
        return got

    def th2(self, k, i):
        """sum_a tfac(a) s_{k,-a}(u) s_{ia}(v)."""
        key = ("th2", k, i)
        got = self._L.get(key)
        if got is None:
            got = self._sum_products([(self.tfac(a), (k, -a), (i, a)) for a in self.labels])
            self._L[key] = got
        return got

    def tp(self, c, d):
        """sum_a s_aa(u) s_cd(v)."""
        key = ("tp", c, d)
        got = self._L.get(key)
        if got is None:
            got = self._sum_products([(1, (a, a), (c, d)) for a in self.labels])
            self._L[key] = got
        return got

    def tp2(self, c, d):
        """sum_a s_cd(u) s_aa(v)."""
        key = ("tp2", c, d)
        got = self._L.get(key)
        if got is None:
            got = self._sum_products([(1, (c, d), (a, a)) for a in self.labels])
            self._L[key] = got
        return got


def _linform(*factors) -> BiPoly:
    """Product of linear forms given as (cu, cv, c0) triples."""
    out = BiPoly.constant(1)
    for cu, cv, c0 in factors:
        out = out * BiPoly({(1, 0): cu, (0, 1): cv, (0, 0): c0})
    return out


def _accumulate(result, cpoly: BiPoly, prod, factor=1, swap=False):
    """result += factor * cpoly(u,v) * prod, optionally with u <-> v swapped."""
    if not cpoly or not prod:
        return
    for (mp, mq), mc in cpoly.terms.items():
        w = mc * factor
        if not w:
            continue
        for (p, q), mat in prod.items():
            key = (mp + q, mq + p) if swap else (mp + p, mq + q)
            acc = result.get(key)
            result[key] = w * mat if acc is None else acc + w * mat


def _check_quadruples(cs: ClearedS, term_builder, name) -> Report:
    rep = Report(name)
    for i in cs.labels:
        for j in cs.labels:
            for k in cs.labels:
                for l in cs.labels:
                    result = {}
                    term_builder(cs, result, i, j, k, l)
                    bad = [pq for pq, m in result.items() if not _is_zero_mat(m)]
                    if bad:
                        rep.fail(((i, j, k, l), sorted(bad)))
    return rep


# ---------------------------------------------------------------------------
# relation term builders; each writes D*(LHS - RHS) into `result`
# ---------------------------------------------------------------------------


def _twisted_terms(kappa):
    ka = Fraction(kappa)
    d_uv = (1, -1, 0)  # u - v
    s_uv = (1, 1, 0)  # u + v
    d_ka = (1, -1, -ka)  # u - v - kappa
    s_ka = (1, 1, -ka)  # u + v - kappa
    D = _linform(d_uv, s_uv, d_ka, s_ka)
    c1 = _linform(s_uv, d_ka, s_ka)
    c2 = _linform(d_uv, d_ka, s_ka)
    c3 = _linform(d_ka, s_ka)
    c4 = _linform(d_uv, s_uv, s_ka)
    c5 = _linform(d_uv, s_uv, d_ka)
    c6 = _linform(d_uv, s_ka)
    c7 = _linform(s_uv, d_ka)
    c8 = _linform(d_uv, s_uv)

    def build(cs: ClearedS, res, i, j, k, l):
        th = cs.theta
        # D * LHS: [s_ij(u), s_kl(v)]
        _accumulate(res, D, cs.product((i, j), (k, l)))
        _accumulate(res, D, cs.product((k, l), (i, j)), factor=-1, swap=True)
        # T1
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=-1)
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=1, swap=True)
        # T2
        if k == j:
            _accumulate(res, c2, cs.sig(i, l), factor=-1)
        if i == l:
            _accumulate(res, c2, cs.sig(k, j), factor=1, swap=True)
        # T3
        if i == j:
            _accumulate(res, c3, cs.sig(k, l), factor=1)
            _accumulate(res, c3, cs.sig(k, l), factor=-1, swap=True)
        # T4
        if k == -i:
            _accumulate(res, c4, cs.th1(j, l), factor=cs.tfac(i) if cs.family == SYMPLECTIC else 1)
        if l == -j:
            _accumulate(
                res,
                c4,
                cs.th2(k, i),
                factor=-(cs.tfac(j) if cs.family == SYMPLECTIC else 1),
                swap=True,
            )
        # T5
        _accumulate(res, c5, cs.product((i, -k), (-j, l)), factor=th(j, -k))
        _accumulate(res, c5, cs.product((k, -i), (-l, j)), factor=-th(i, -l), swap=True)
        # T6
        if k == -i:
            _accumulate(res, c6, cs.sig(-j, l), factor=-th(i, -j))
        if l == -j:
            _accumulate(res, c6, cs.sig(k, -i), factor=th(i, -j), swap=True)
        # T7
        _accumulate(res, c7, cs.product((k, -i), (-j, l)), factor=-th(i, -j))
        _accumulate(res, c7, cs.product((k, -i), (-j, l)), factor=th(i, -j), swap=True)
        # T8
        if k == -i:
            _accumulate(res, c8, cs.tp(-j, l), factor=th(i, j))
        if l == -j:
            _accumulate(res, c8, cs.tp2(k, -i), factor=-th(i, j), swap=True)

    return build


def _rtt_terms(kappa):
    """[t_ij(u), t_kl(v)] for the g_N extended Yangian (kappa term included)."""
    ka = Fraction(kappa)
    d_uv = (1, -1, 0)
    d_ka = (1, -1, -ka)
    D = _linform(d_uv, d_ka)
    c1 = _linform(d_ka)
    c4 = _linform(d_uv)

    def build(cs: ClearedS, res, i, j, k, l):
        _accumulate(res, D, cs.product((i, j), (k, l)))
        _accumulate(res, D, cs.product((k, l), (i, j)), factor=-1, swap=True)
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=-1)
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=1, swap=True)
        if k == -i:
            _accumulate(res, c4, cs.th1(j, l), factor=cs.tfac(i) if cs.family == SYMPLECTIC else 1)
        if l == -j:
            _accumulate(
                res,
                c4,
                cs.th2(k, i),
                factor=-(cs.tfac(j) if cs.family == SYMPLECTIC else 1),
                swap=True,
            )

    return build


def _olshanskii_terms():
    d_uv = (1, -1, 0)
    s_uv = (1, 1, 0)
    D = _linform(d_uv, s_uv)
    c1 = _linform(s_uv)
    c2 = _linform(d_uv)
    c3 = BiPoly.constant(1)

    def build(cs: ClearedS, res, i, j, k, l):
        th = cs.theta
        _accumulate(res, D, cs.product((i, j), (k, l)))
        _accumulate(res, D, cs.product((k, l), (i, j)), factor=-1, swap=True)
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=-1)
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=1, swap=True)
        _accumulate(res, c2, cs.product((i, -k), (-j, l)), factor=th(k, -j))
        _accumulate(res, c2, cs.product((k, -i), (-l, j)), factor=-th(i, -l), swap=True)
        _accumulate(res, c3, cs.product((k, -i), (-j, l)), factor=-th(i, -j))
        _accumulate(res, c3, cs.product((k, -i), (-j, l)), factor=th(i, -j), swap=True)

    return build


def _mr_terms():
    """[b_ij(u), b_kl(v)] of the reflection algebra with labels 1..n."""
    d_uv = (1, -1, 0)
    s_uv = (1, 1, 0)
    D = _linform(d_uv, s_uv)
    c1 = _linform(s_uv)
    c2 = _linform(d_uv)
    c3 = BiPoly.constant(1)

    def build(cs: ClearedS, res, i, j, k, l):
        _accumulate(res, D, cs.product((i, j), (k, l)))
        _accumulate(res, D, cs.product((k, l), (i, j)), factor=-1, swap=True)
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=-1)
        _accumulate(res, c1, cs.product((k, j), (i, l)), factor=1, swap=True)
        if k == j:
            _accumulate(res, c2, cs.sig(i, l), factor=-1)
        if i == l:
            _accumulate(res, c2, cs.sig(k, j), factor=1, swap=True)
        if i == j:
            _accumulate(res, c3, cs.sig(k, l), factor=1)
            _accumulate(res, c3, cs.sig(k, l), factor=-1, swap=True)

    return build


def check_twisted_commutators(cs: ClearedS, kappa) -> Report:
    return _check_quadruples(cs, _twisted_terms(kappa), "reflection-commutators")


def check_rtt_commutators(cs: ClearedS, kappa) -> Report:
    return _check_quadruples(cs, _rtt_terms(kappa), "rtt-commutators")


def check_olshanskii_commutators(cs: ClearedS) -> Report:
    return _check_quadruples(cs, _olshanskii_terms(), "olshanskii-commutators")


def check_mr_commutators(cs: ClearedS) -> Report:
    return _check_quadruples(cs, _mr_terms(), "reflection-algebra-commutators")


# ---------------------------------------------------------------------------
# unitary scalar S(u) S(-u) = w(u) I
# ---------------------------------------------------------------------------


def scalar_product_with_reflected(cs: ClearedS):
    """Returns (w, report): w with S(u) S(-u) = w(u) * Id if scalar, else None."""
    rep = Report("unitary-scalar")
    den2 = cs.den * cs.den.compose_affine(-1, 0)
    dim = cs.dim
    w_num = None
    for i in cs.labels:
        for j in cs.labels:
            acc = {}
            for a in cs.labels:
                A = cs.num.get((i, a))
                B = cs.num.get((a, j))
                if not A or not B:
                    continue
                for p, ap in enumerate(A):
                    for q, bq in enumerate(B):
                        m = ap @ ((-1) ** q * bq)
                        acc[p + q] = m if p + q not in acc else acc[p + q] + m
            if i != j:
                if any(not _is_zero_mat(m) for m in acc.values()):
                    rep.fail(((i, j), "off-diagonal entry of S(u)S(-u) is nonzero"))
                continue
            # diagonal: must be a scalar matrix, equal for every i
            coeffs = []
            top = max(acc) if acc else 0
            for k in range(top + 1):
                m = acc.get(k)
                if m is None:
                    coeffs.append(Fraction(0))
                    continue
                c = m[0, 0]
                scal = True
                for r in range(dim):
                    for s in range(dim):
                        if (r == s and m[r, s] != c) or (r != s and m[r, s]):
                            scal = False
                            break
                    if not scal:
                        break
                if not scal:
                    rep.fail(((i, i), f"coefficient of u^{k} is not scalar"))
                    return None, rep
                coeffs.append(c)
            w = RatFunc(Poly(coeffs), den2)
            if w_num is None:
                w_num = w
            elif w_num != w:
                rep.fail(((i, i), "diagonal scalar differs between labels"))
    return w_num, rep
