"""Sparse multivariate polynomials over GF(q): arithmetic, affine
substitution, canonical reduction modulo a Cartesian vanishing ideal, and
evaluation.

Monomials are plain exponent tuples of length m.  Term iteration is in
graded lexicographic order (total degree first, ties broken with x1 biggest)
so printed output and JSON are stable.
"""

from __future__ import annotations

from .field import Field, FieldElement, FieldError


def grlex_key(exp):
    return (sum(exp), tuple(-e for e in exp))


def sorted_monomials(exps):
    return sorted(exps, key=grlex_key)


class Polynomial:
    """Immutable sparse polynomial; no zero coefficients are stored."""

    __slots__ = ("field", "m", "_terms")

    def __init__(self, field: Field, m: int, terms=None):
        self.field = field
        self.m = m
        clean = {}
        for exp, c in (terms or {}).items():
            ix = c.ix if isinstance(c, FieldElement) else c % field.q
            if ix:
                exp = tuple(exp)
                if len(exp) != m or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp}")
                clean[exp] = ix
        self._terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field, m):
        return cls(field, m)

    @classmethod
    def constant(cls, field, m, c):
        return cls(field, m, {(0,) * m: field(c)})

    @classmethod
    def variable(cls, field, m, i):
        """The polynomial x_{i+1}; i is a 0-based variable position."""
        exp = [0] * m
        exp[i] = 1
        return cls(field, m, {tuple(exp): 1})

    @classmethod
    def monomial(cls, field, exp, coeff=1):
        return cls(field, len(exp), {tuple(exp): field(coeff)})

    # -- inspection ---------------------------------------------------------
    def support(self):
        return sorted_monomials(self._terms)

    def coeff(self, exp) -> FieldElement:
        return FieldElement(self.field, self._terms.get(tuple(exp), 0))

    def terms(self):
        return [(e, FieldElement(self.field, self._terms[e])) for e in self.support()]

    def is_zero(self):
        return not self._terms

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=0)

    def degree_in(self, i):
        return max((e[i] for e in self._terms), default=0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.field == other.field
                and self.m == other.m and self._terms == other._terms)

    def __len__(self):
        return len(self._terms)

    # -- ring operations ------------------------------------------------------
    def _check(self, other):
        if self.field != other.field or self.m != other.m:
            raise FieldError("polynomials from different ambients")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = F.add_ix(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._raw(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        F = self.field
        return self._raw({e: F.neg_ix(c) for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        F = self.field
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add_ix(out.get(e, 0), F.mul_ix(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return self._raw(out)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.field
        cix = F(c).ix
        if cix == 0:
            return Polynomial.zero(F, self.m)
        return self._raw({e: F.mul_ix(v, cix) for e, v in self._terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.field, self.m, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _raw(self, terms):
        p = Polynomial.__new__(Polynomial)
        p.field = self.field
        p.m = self.m
        p._terms = terms
        return p

    # -- evaluation -------------------------------------------------------------
    def evaluate(self, point) -> FieldElement:
        F = self.field
        pix = [F(x).ix for x in point]
        if len(pix) != self.m:
            raise ValueError("point dimension mismatch")
        acc = 0
        for e, c in self._terms.items():
            v = c
            for x, d in zip(pix, e):
                if d:
                    v = F.mul_ix(v, F.pow_ix(x, d))
                    if not v:
                        break
            acc = F.add_ix(acc, v)
        return FieldElement(F, acc)

    # -- serialization ------------------------------------------------------------
    def to_json(self):
        return [{"exp": list(e), "coeff": list(FieldElement(self.field, c).coeffs)}
                for e, c in ((e, self._terms[e]) for e in self.support())]

    @classmethod
    def from_json(cls, field, m, obj):
        return cls(field, m, {tuple(t["exp"]): field(t["coeff"]) for t in obj})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in self.support():
            c = FieldElement(self.field, self._terms[e])
            factors = [f"x{i + 1}" + (f"^{d}" if d > 1 else "")
                       for i, d in enumerate(e) if d]
            if not factors:
                parts.append(repr(c))
            elif c == self.field.one:
                parts.append("*".join(factors))
            else:
                parts.append(f"({c!r})*" + "*".join(factors))
        return " + ".join(parts)


# ---------------------------------------------------------------------------

def substitute_affine(f: Polynomial, A, b) -> Polynomial:
    """Replace each x_i in f by the i-th entry of Ax+b, fully expanded.

    A is an m x m matrix and b a length-m vector over the same field; no
    reduction modulo any vanishing ideal happens here.
    """
    F, m = f.field, f.m
    rows = [list(r) for r in A]
    if len(rows) != m or any(len(r) != m for r in rows) or len(list(b)) != m:
        raise ValueError("dimension mismatch in affine substitution")
    forms = []
    for i in range(m):
        terms = {}
        for j in range(m):
            c = F(rows[i][j])
            if c:
                e = [0] * m
                e[j] = 1
                terms[tuple(e)] = c
        bi = F(list(b)[i])
        if bi:
            terms[(0,) * m] = bi
        forms.append(Polynomial(F, m, terms))

    powers = [{} for _ in range(m)]

    def form_pow(i, d):
        memo = powers[i]
        if d not in memo:
            memo[d] = forms[i] ** d if d > 1 else (forms[i] if d == 1 else
                                                   Polynomial.constant(F, m, 1))
        return memo[d]

    out = Polynomial.zero(F, m)
    for e, c in f._terms.items():
        prod = Polynomial.constant(F, m, c)
        for i, d in enumerate(e):
            if d:
                prod = prod * form_pow(i, d)
        out = out + prod
    return out


def reduce_mod_vanishing(f: Polynomial, S) -> Polynomial:
    """Canonical representative of f modulo the vanishing ideal of the
    Cartesian set S: every exponent ends up below the component size and
    evaluations on S are unchanged."""
    F, m = f.field, f.m
    if S.field != F or S.m != m:
        raise FieldError("set and polynomial ambients differ")
    bounds = S.sizes
    terms = dict(f._terms)
    for j in range(m):
        nj = bounds[j]
        while True:
            bad = [e for e in terms if e[j] >= nj]
            if not bad:
                break
            # rewrite the highest violating power first
            bad.sort(key=lambda e: -e[j])
            e = bad[0]
            c = terms.pop(e)
            rep = S.power_reduction(j, e[j])
            for d, rc in enumerate(rep):
                if rc:
                    e2 = e[:j] + (d,) + e[j + 1:]
                    v = F.add_ix(terms.get(e2, 0), F.mul_ix(c, rc))
                    if v:
                        terms[e2] = v
                    else:
                        terms.pop(e2, None)
    out = Polynomial.__new__(Polynomial)
    out.field, out.m, out._terms = F, m, terms
    return out


def evaluate_on_set(f: Polynomial, S) -> tuple:
    """Codeword of f on S: evaluations at the canonically ordered points."""
    F, m = f.field, f.m
    if S.field != F or S.m != m:
        raise FieldError("set and polynomial ambients differ")
    return tuple(f.evaluate(P) for P in S.points())
