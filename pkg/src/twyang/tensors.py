"""Signed-index labeled matrices, Kronecker products and the operators P, Q.

Rows and columns are labeled by the signed index set {-n..n} (0 present iff
N is odd); multi-leg matrices carry tuples of signed indices.  Storage is a
mapping {(row_label, col_label): value} with zeros omitted, so the entry
ring is anything with +, -, * and truthiness (Fraction, RatFunc, BiPoly...).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class IndexSet:
    n: int
    includes_zero: bool

    @staticmethod
    def for_N(N: int) -> "IndexSet":
        if N < 1:
            raise ValueError("N must be positive")
        return IndexSet(N // 2, N % 2 == 1)

    @property
    def N(self) -> int:
        return 2 * self.n + (1 if self.includes_zero else 0)

    def labels(self):
        neg = list(range(-self.n, 0))
        pos = list(range(1, self.n + 1))
        return neg + ([0] if self.includes_zero else []) + pos


ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"


def sign(i: int) -> int:
    return (i > 0) - (i < 0)


def theta(family: str, i: int, j: int) -> int:
    """theta_ij: 1 in the orthogonal case, sign(i)sign(j) in the symplectic one."""
    if family == ORTHOGONAL:
        return 1
    if family == SYMPLECTIC:
        if i == 0 or j == 0:
            return 1
        return sign(i) * sign(j)
    raise ValueError(f"unknown family {family!r}")


def _as_label(x):
    return x if isinstance(x, tuple) else (x,)


class LabeledMatrix:
    """Square matrix with rows/columns addressed by (tuples of) signed indices."""

    __slots__ = ("labels", "data")

    def __init__(self, labels, data=None):
        self.labels = tuple(_as_label(l) for l in labels)
        self.data = {}
        if data:
            for (r, c), v in data.items():
                if v:
                    self.data[(_as_label(r), _as_label(c))] = v

    # -- constructors ---------------------------------------------------
    @staticmethod
    def identity(labels, one=Fraction(1)):
        m = LabeledMatrix(labels)
        for l in m.labels:
            m.data[(l, l)] = one
        return m

    @staticmethod
    def unit(labels, r, c, value=Fraction(1)):
        return LabeledMatrix(labels, {(r, c): value})

    # -- basic structure -------------------------------------------------
    @property
    def legs(self):
        return len(self.labels[0]) if self.labels else 0

    def __getitem__(self, rc):
        r, c = rc
        return self.data.get((_as_label(r), _as_label(c)), Fraction(0))

    def __iter__(self):
        return iter(self.data.items())

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, other):
        if not isinstance(other, LabeledMatrix):
            return NotImplemented
        return self.labels == other.labels and self.data == other.data

    def copy(self):
        return LabeledMatrix(self.labels, dict(self.data))

    def map_values(self, f):
        out = LabeledMatrix(self.labels)
        for k, v in self.data.items():
            w = f(v)
            if w:
                out.data[k] = w
        return out

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        if self.labels != other.labels:
            raise ValueError("label mismatch")
        out = self.copy()
        for k, v in other.data.items():
            s = out.data.get(k)
            s = v if s is None else s + v
            if s:
                out.data[k] = s
            else:
                out.data.pop(k, None)
        return out

    def __neg__(self):
        return self.map_values(lambda v: -v)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if not s:
            return LabeledMatrix(self.labels)
        return self.map_values(lambda v: s * v)

    def __matmul__(self, other):
        if self.labels != other.labels:
            raise ValueError("label mismatch")
        cols = {}
        for (r, c), v in other.data.items():
            cols.setdefault(r, []).append((c, v))
        out = LabeledMatrix(self.labels)
        acc = out.data
        for (r, k), a in self.data.items():
            hits = cols.get(k)
            if not hits:
                continue
            for c, b in hits:
                key = (r, c)
                s = acc.get(key)
                p = a * b
                s = p if s is None else s + p
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return out

    # -- tensor structure ---------------------------------------------------
    def kron(self, other):
        labels = tuple(a + b for a in self.labels for b in other.labels)
        out = LabeledMatrix(labels)
        for (r1, c1), v1 in self.data.items():
            for (r2, c2), v2 in other.data.items():
                p = v1 * v2
                if p:
                    out.data[(r1 + r2, c1 + c2)] = p
        return out

    def transpose_t(self, family):
        """Full transpose: entry (i,j) of the result is theta_ji * A[-j,-i]."""
        out = LabeledMatrix(self.labels)
        for (r, c), v in self.data.items():
            nr = tuple(-x for x in c)
            nc = tuple(-x for x in r)
            th = 1
            for a, b in zip(nr, nc):
                th *= theta(family, b, a)
            w = th * v if th != 1 else v
            if w:
                out.data[(nr, nc)] = w
        return out

    def partial_transpose(self, leg, family):
        """Transpose one leg of a two-leg matrix (leg in {1, 2})."""
        if self.legs != 2:
            raise ValueError("partial transpose requires exactly two legs")
        if leg not in (1, 2):
            raise ValueError("leg must be 1 or 2")
        i = leg - 1
        out = LabeledMatrix(self.labels)
        for (r, c), v in self.data.items():
            nr, nc = list(r), list(c)
            nr[i], nc[i] = -c[i], -r[i]
            th = theta(family, c[i], r[i])
            w = th * v if th != 1 else v
            if w:
                out.data[(tuple(nr), tuple(nc))] = w
        return out

    def is_diagonal(self):
        return all(r == c for (r, c) in self.data)

    def trace(self):
        s = None
        for l in self.labels:
            v = self.data.get((l, l))
            if v is not None:
                s = v if s is None else s + v
        return s if s is not None else Fraction(0)

    def nonzero_items(self):
        return sorted(self.data.items(), key=lambda kv: kv[0])

    def __repr__(self):
        ent = ", ".join(f"{r}->{c}: {v}" for (r, c), v in self.nonzero_items())
        return f"LabeledMatrix[{self.legs} leg(s), {len(self.labels)} labels]({ent})"


def kron(a: LabeledMatrix, b: LabeledMatrix) -> LabeledMatrix:
    return a.kron(b)


def op_P(N: int) -> LabeledMatrix:
    """Permutation operator P = sum E_ij (x) E_ji on C^N (x) C^N."""
    idx = IndexSet.for_N(N)
    labels = [(i, k) for i in idx.labels() for k in idx.labels()]
    m = LabeledMatrix(labels)
    for i in idx.labels():
        for k in idx.labels():
            m.data[((i, k), (k, i))] = Fraction(1)
    return m


def op_Q(N: int, family: str) -> LabeledMatrix:
    """Q = sum theta_ij E_ij (x) E_{-i,-j}; equals P^{t1} = P^{t2}."""
    if family == SYMPLECTIC and N % 2 == 1:
        raise ValueError("the symplectic family requires even N")
    idx = IndexSet.for_N(N)
    labels = [(i, k) for i in idx.labels() for k in idx.labels()]
    m = LabeledMatrix(labels)
    for i in idx.labels():
        for j in idx.labels():
            m.data[((i, -i), (j, -j))] = Fraction(theta(family, i, j))
    return m


def leg_embed(a: LabeledMatrix, leg: int, total_legs: int, one_leg_labels) -> LabeledMatrix:
    """Place a one-leg matrix on leg `leg` of a total_legs-fold tensor space."""
    if a.legs != 1:
        raise ValueError("leg_embed places one-leg matrices")
    if not 1 <= leg <= total_legs:
        raise ValueError("leg out of range")
    return place_on_legs(a, (leg,), total_legs, one_leg_labels)


def place_on_legs(a: LabeledMatrix, legs, total_legs: int, one_leg_labels) -> LabeledMatrix:
    """Place a k-leg matrix on the given legs (1-based, increasing), identity elsewhere."""
    legs = tuple(legs)
    if len(legs) != a.legs:
        raise ValueError("number of target legs must match the matrix")
    if any(not 1 <= l <= total_legs for l in legs) or len(set(legs)) != len(legs):
        raise ValueError("bad leg placement")
    base = [tuple(_as_label(l)) for l in one_leg_labels]
    other = [l for l in range(1, total_legs + 1) if l not in legs]

    import itertools

    labels = list(itertools.product(*([b[0] for b in base],) * total_legs))
    out = LabeledMatrix(labels)
    pos = {l: i for i, l in enumerate(legs, start=0)}
    for rest in itertools.product(*([b[0] for b in base],) * len(other)):
        for (r, c), v in a.data.items():
            rr = [None] * total_legs
            cc = [None] * total_legs
            for i, l in enumerate(legs):
                rr[l - 1] = r[i]
                cc[l - 1] = c[i]
            for i, l in enumerate(other):
                rr[l - 1] = rest[i]
                cc[l - 1] = rest[i]
            out.data[(tuple(rr), tuple(cc))] = v
    return out
