"""Affine transformations T(x) = Ax + b: action on points and polynomials,
induced coordinate permutations, and the two-part membership test for the
affine permutation group of a monomial Cartesian code (point set preserved,
monomial span preserved)."""

from __future__ import annotations

from .codes import rank_ix
from .field import Field, FieldElement, FieldError
from .poly import Polynomial, reduce_mod_vanishing, substitute_affine


class AffineTransformation:
    """Pair (A, b) over a field; not necessarily invertible."""

    __slots__ = ("field", "m", "A", "b")

    def __init__(self, field: Field, A, b=None):
        self.field = field
        rows = []
        for row in A:
            rows.append(tuple(field(x).ix for x in row))
        self.m = len(rows)
        if any(len(r) != self.m for r in rows):
            raise ValueError("matrix must be square")
        self.A = tuple(rows)
        if b is None:
            b = [0] * self.m
        self.b = tuple(field(x).ix for x in b)
        if len(self.b) != self.m:
            raise ValueError("offset length mismatch")

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, field, m):
        return cls(field, [[1 if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def translation(cls, field, b):
        b = list(b)
        m = len(b)
        T = cls.identity(field, m)
        return cls(field, T.A, b)

    # -- views ----------------------------------------------------------------
    def matrix(self):
        F = self.field
        return tuple(tuple(FieldElement(F, x) for x in row) for row in self.A)

    def offset(self):
        return tuple(FieldElement(self.field, x) for x in self.b)

    def is_translation(self):
        return all(self.A[i][j] == (1 if i == j else 0)
                   for i in range(self.m) for j in range(self.m))

    def __eq__(self, other):
        return (isinstance(other, AffineTransformation) and self.field == other.field
                and self.A == other.A and self.b == other.b)

    def __hash__(self):
        return hash((self.A, self.b))

    def __repr__(self):
        return f"Affine(A={[list(r) for r in self.A]}, b={list(self.b)})"

    # -- group structure ---------------------------------------------------------
    def is_invertible(self):
        return rank_ix([list(r) for r in self.A], self.field) == self.m

    def apply_point(self, P):
        F = self.field
        pix = [x.ix if isinstance(x, FieldElement) else F(x).ix for x in P]
        if len(pix) != self.m:
            raise ValueError("point dimension mismatch")
        out = []
        for i in range(self.m):
            acc = self.b[i]
            row = self.A[i]
            for j in range(self.m):
                if row[j] and pix[j]:
                    acc = F.add_ix(acc, F.mul_ix(row[j], pix[j]))
            out.append(FieldElement(F, acc))
        return tuple(out)

    def compose(self, other: "AffineTransformation") -> "AffineTransformation":
        """self after other: x -> self(other(x))."""
        if self.field != other.field or self.m != other.m:
            raise FieldError("transformations over different ambients")
        F, m = self.field, self.m
        A = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                acc = 0
                for t in range(m):
                    acc = F.add_ix(acc, F.mul_ix(self.A[i][t], other.A[t][j]))
                A[i][j] = acc
        b = []
        for i in range(m):
            acc = self.b[i]
            for t in range(m):
                acc = F.add_ix(acc, F.mul_ix(self.A[i][t], other.b[t]))
            b.append(acc)
        return AffineTransformation(F, A, b)

    def invert(self) -> "AffineTransformation":
        """Inverse map; requires an invertible matrix part."""
        F, m = self.field, self.m
        aug = [list(self.A[i]) + [1 if j == i else 0 for j in range(m)]
               for i in range(m)]
        from .codes import rref_ix
        rows, rank, pivots = rref_ix(aug, F)
        if rank < m or pivots[:m] != tuple(range(m)):
            raise FieldError("singular transformation")
        Ainv = [list(rows[i][m:]) for i in range(m)]
        binv = []
        for i in range(m):
            acc = 0
            for t in range(m):
                acc = F.add_ix(acc, F.mul_ix(Ainv[i][t], self.b[t]))
            binv.append(F.neg_ix(acc))
        return AffineTransformation(F, Ainv, binv)

    def of_poly(self, f: Polynomial) -> Polynomial:
        return substitute_affine(f, self.matrix(), self.offset())

    # -- serialization -------------------------------------------------------------
    def to_json(self):
        F = self.field
        return {"A": [[list(FieldElement(F, x).coeffs) for x in row] for row in self.A],
                "b": [list(FieldElement(F, x).coeffs) for x in self.b]}

    @staticmethod
    def from_json(field, obj) -> "AffineTransformation":
        return AffineTransformation(field,
                                    [[field(x) for x in row] for row in obj["A"]],
                                    [field(x) for x in obj["b"]])


# ---------------------------------------------------------------------------

def stabilizes_set(T: AffineTransformation, S) -> bool:
    """Whether the image multiset of the points equals the point set."""
    if T.field != S.field or T.m != S.m:
        return False
    seen = set()
    for P in S.points():
        img = T.apply_point(P)
        if not S.contains_point(img):
            return False
        ix = S.point_index(img)
        if ix in seen:
            return False
        seen.add(ix)
    return True


def induced_permutation(T: AffineTransformation, S):
    """Index permutation pi with point[pi[t]] = T(point[t]); requires a
    stabilizing T.  Composition: pi of (T1 after T2) = pi_T1 compose pi_T2."""
    if not stabilizes_set(T, S):
        raise ValueError("transformation does not stabilize the point set")
    return tuple(S.point_index(T.apply_point(P)) for P in S.points())


def permute_word(word, pi):
    """Coordinate action of a permutation on a codeword: entry t becomes the
    old entry pi[t]."""
    return tuple(word[pi[t]] for t in range(len(word)))


class SpanChecker:
    """Reusable tester for the span condition of one (monomial set, point set)
    pair: the reduced pullback of every member must be supported inside the
    set.  Keeps per-pair state so scanning many transformations is cheap."""

    def __init__(self, L, S):
        self.S = S
        self.F = S.field
        self.m = S.m
        monos = frozenset(getattr(L, "monomials", L))
        self.members = sorted(monos, key=lambda e: (sum(e), e))
        self.allowed = monos
        self.sizes = S.sizes

    def _reduce_term(self, out, exp, coeff):
        F = self.F
        stack = [(exp, coeff)]
        while stack:
            e, c = stack.pop()
            j = next((t for t in range(self.m) if e[t] >= self.sizes[t]), None)
            if j is None:
                v = F.add_ix(out.get(e, 0), c)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
                continue
            for d, rc in enumerate(self.S.power_reduction(j, e[j])):
                if rc:
                    stack.append((e[:j] + (d,) + e[j + 1:], F.mul_ix(c, rc)))

    def _mul(self, f, g):
        F = self.F
        out = {}
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                self._reduce_term(out, tuple(a + b for a, b in zip(e1, e2)),
                                  F.mul_ix(c1, c2))
        return out

    def check_ix(self, A, b) -> bool:
        """A: rows of element indices, b: element indices."""
        F, m = self.F, self.m
        forms = []
        for i in range(m):
            f = {}
            for j in range(m):
                if A[i][j]:
                    e = [0] * m
                    e[j] = 1
                    f[tuple(e)] = A[i][j]
            if b[i]:
                f[(0,) * m] = b[i]
            forms.append(f)
        pows = [{0: {(0,) * m: 1}, 1: forms[i]} for i in range(m)]

        def form_pow(i, d):
            memo = pows[i]
            if d not in memo:
                half = form_pow(i, d // 2)
                sq = self._mul(half, half)
                memo[d] = sq if d % 2 == 0 else self._mul(sq, forms[i])
            return memo[d]

        for u in self.members:
            prod = {(0,) * m: 1}
            for i, d in enumerate(u):
                if d:
                    prod = self._mul(prod, form_pow(i, d))
                    if not prod:
                        break
            if any(e not in self.allowed for e in prod):
                return False
        return True

    def check(self, T: AffineTransformation) -> bool:
        return self.check_ix(T.A, T.b)


def stabilizes_monomial_span(T: AffineTransformation, L, S) -> bool:
    """Condition on the monomial side: for every member u, the support of the
    reduced substitution of u under T stays inside the set."""
    return SpanChecker(L, S).check(T)


def is_affine_permutation(T: AffineTransformation, L, S) -> bool:
    return stabilizes_set(T, S) and stabilizes_monomial_span(T, L, S)


def membership_report(T: AffineTransformation, L, S) -> dict:
    """Both membership conditions for one transformation, with the first
    offending point or (member, monomial) pair as a witness."""
    report = {"T": T.to_json(), "stabilizes_set": True, "stabilizes_span": True,
              "witness": None}
    seen = set()
    for P in S.points():
        img = T.apply_point(P)
        if not S.contains_point(img) or S.point_index(img) in seen:
            report["stabilizes_set"] = False
            report["witness"] = {"point": [x.to_json() for x in P]}
            break
        seen.add(S.point_index(img))
    monos = frozenset(getattr(L, "monomials", L))
    for u in sorted(monos, key=lambda e: (sum(e), e)):
        got = reduce_mod_vanishing(T.of_poly(Polynomial.monomial(S.field, u)), S)
        bad = [w for w in got.support() if w not in monos]
        if bad:
            report["stabilizes_span"] = False
            if report["witness"] is None:
                report["witness"] = {"member": list(u), "monomial": list(bad[0])}
            break
    return report
