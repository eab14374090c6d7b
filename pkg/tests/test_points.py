"""Cartesian set construction, classification, canonical orders, subgroup
computations, and the subgroup shift/escape properties checked exhaustively."""

import itertools

import pytest

from cartperm.field import GF, FieldError
from cartperm.points import (
    ADD, EXPLICIT, FULL, MULT, CartesianSet, additive_component,
    classify_subset, explicit_component, full_component, mult_component,
    stabilizer_subfield, sum_of_elements, torus_component, transporter_space,
)


def alpha16():
    F = GF(16)
    return F, F.primitive_element()


def test_point_order_worked_example():
    F = GF(3)
    S = CartesianSet([mult_component(F, 2), explicit_component(F, [F(0), F(1)])])
    assert S.points_ix() == ((1, 0), (1, 1), (2, 0), (2, 1))
    assert S.n == 4 and S.sizes == (2, 2)


def test_point_order_binary_and_torus():
    F2 = GF(2)
    S = CartesianSet([full_component(F2)])
    assert S.points_ix() == ((0,), (1,))
    F4 = GF(4)
    T = CartesianSet([torus_component(F4)] * 2)
    a = F4.primitive_element()
    assert T.n == 9
    assert T.points_ix()[:3] == ((1, 1), (1, a.ix), (1, (a * a).ix))


def test_points_are_distinct_and_stable():
    F = GF(4)
    S = CartesianSet([full_component(F), torus_component(F)])
    pts = S.points_ix()
    assert len(set(pts)) == S.n == 12
    assert pts == CartesianSet([full_component(F), torus_component(F)]).points_ix()
    for i, P in enumerate(S.points()):
        assert S.point_index(P) == i


def test_classify_subset():
    F3 = GF(3)
    c = classify_subset(F3, [F3(1), F3(2)])
    assert c.kind == MULT and c.order == 2
    assert classify_subset(F3, [F3(0), F3(1), F3(2)]).kind == FULL
    # {0,1} is not addition-closed in GF(3)
    assert classify_subset(F3, [F3(0), F3(1)]).kind == EXPLICIT
    F9 = GF(9)
    sub = classify_subset(F9, [F9(0), F9(1), F9(2)])
    assert sub.kind == ADD and len(sub.basis) == 1
    assert classify_subset(F9, [F9(1)]).kind == MULT
    assert classify_subset(F9, [F9(0)]).kind == ADD
    assert classify_subset(F9, [F9(1), F9(3)]).kind == EXPLICIT
    with pytest.raises(FieldError):
        classify_subset(F3, [])


def test_classify_gf16_line():
    F, a = alpha16()
    g = classify_subset(F, [F.zero, a ** 6, a ** 11, a ** 6 + a ** 11])
    assert g.kind == ADD and len(g.basis) == 2
    alpha_f4 = {(a * x).ix for x in F.subfield_elements(2)}
    assert g.element_set() == alpha_f4


def test_mult_component_structure():
    F, a = alpha16()
    g5 = mult_component(F, 5)
    assert [x.ix for x in g5.elements] == [(a ** (3 * i)).ix for i in range(5)]
    with pytest.raises(FieldError):
        mult_component(F, 4)  # 4 does not divide 15
    F9 = GF(9)
    g4 = mult_component(F9, 4)
    els = g4.element_set()
    assert len(els) == 4 and all(F9.pow_ix(x, 4) == 1 for x in els)


def test_additive_component_canonical_order():
    F, a = alpha16()
    g = additive_component(F, [F.one, a, a * a])
    assert [x.ix for x in g.elements] == list(range(8))
    # dependent spanning sets collapse to the same canonical basis
    g2 = additive_component(F, [F.one, a, a + 1, a * a])
    assert g2.elements == g.elements and g2.basis == g.basis


def test_stabilizer_subfield():
    F, a = alpha16()
    g = additive_component(F, [a ** 6, a ** 11])
    assert stabilizer_subfield(g) == 2
    h = additive_component(F, [F.one, a, a * a])
    assert stabilizer_subfield(h) == 1
    assert stabilizer_subfield(full_component(F)) == 4


def test_transporter_table_gf16():
    F, a = alpha16()
    G1 = additive_component(F, [F.one, a, a * a])
    G2 = additive_component(F, [a ** 6, a ** 11])       # alpha * F_4
    G3 = additive_component(F, [F.one])
    F4 = frozenset(F.subfield_elements(2))
    F2 = frozenset([F.zero, F.one])
    scale = lambda c, S: frozenset(c * x for x in S)

    H = {(i, j): transporter_space(Gi, Gj)
         for i, Gi in enumerate((G1, G2, G3))
         for j, Gj in enumerate((G1, G2, G3))}
    assert H[0, 0] == F2
    assert H[0, 1] == scale(a.inverse(), F4)
    assert H[0, 2] == frozenset(G1.elements)
    assert H[1, 0] == frozenset([F.zero])
    assert H[1, 1] == F4
    assert H[1, 2] == frozenset(G2.elements)
    assert H[2, 0] == frozenset([F.zero])
    assert H[2, 1] == frozenset([F.zero])
    assert H[2, 2] == frozenset(G3.elements)


def test_transporter_is_stabilizer_on_diagonal():
    F, a = alpha16()
    for basis in ([F.one], [a ** 6, a ** 11], [F.one, a], [F.one, a, a ** 2]):
        g = additive_component(F, basis)
        H = transporter_space(g, g)
        d = stabilizer_subfield(g)
        assert H == frozenset(F.subfield_elements(d))
        assert len(H) == F.p ** d


def test_sum_of_elements():
    F3 = GF(3)
    assert sum_of_elements(mult_component(F3, 2)) == F3.zero
    F, a = alpha16()
    assert sum_of_elements(mult_component(F, 1)) == F.one
    assert sum_of_elements(mult_component(F, 5)) == F.zero
    for q in (4, 5, 7, 8, 9, 13, 16):
        Fq = GF(q)
        for s in range(2, q):
            if (q - 1) % s == 0:
                assert sum_of_elements(mult_component(Fq, s)) == Fq.zero


def nontrivial_subgroups(F):
    return [mult_component(F, s) for s in range(2, F.q) if (F.q - 1) % s == 0]


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_no_affine_shift_of_subgroup_is_a_subgroup(q):
    # a*G1 + b is never a subgroup G2 when b is nonzero
    F = GF(q)
    subs = nontrivial_subgroups(F)
    for G1 in subs:
        g1 = [x.ix for x in G1.elements]
        for G2 in subs:
            s2 = G2.element_set()
            for a in range(F.q):
                for b in range(1, F.q):
                    image = {F.add_ix(F.mul_ix(a, g), b) for g in g1}
                    assert image != s2


def _has_escape_witness(F, comps, a, b, Gi):
    gset = Gi.element_set()
    for g in itertools.product(*[c.elements for c in comps]):
        acc = b
        for av, gv in zip(a, g):
            acc = F.add_ix(acc, F.mul_ix(av, gv.ix))
        if acc not in gset:
            return True
    return False


@pytest.mark.parametrize("q", [3, 4, 5, 7, 9])
def test_heavy_rows_always_escape(q):
    # for every row of weight >= 2 and every shift there is a point of the
    # subgroup product landing outside the target component; exhaustive for
    # two factors, and for three equal factors
    F = GF(q)
    subs = nontrivial_subgroups(F)
    combos = [list(c) for c in itertools.product(subs, repeat=2)]
    combos += [[G, G, G] for G in subs]
    for comb in combos:
        m = len(comb)
        for a in itertools.product(range(F.q), repeat=m):
            if sum(1 for x in a if x) < 2:
                continue
            for b in range(F.q):
                for Gi in set(comb):
                    assert _has_escape_witness(F, comb, a, b, Gi), (q, m, a, b)


def test_heavy_row_escape_fails_for_unbalanced_triples():
    # boundary of the escape property: two order-2 factors cannot force a
    # row out of an order-4 target, so (1,1,0)*g + 1 stays inside C4 in GF(5)
    F = GF(5)
    C2, C4 = mult_component(F, 2), mult_component(F, 4)
    assert not _has_escape_witness(F, [C2, C2, C4], (1, 1, 0), 1, C4)


def test_json_round_trip():
    F, a = alpha16()
    S = CartesianSet([
        full_component(F),
        mult_component(F, 5),
        additive_component(F, [a ** 6, a ** 11]),
        explicit_component(F, [F.one, a]),
    ])
    S2 = CartesianSet.from_json(F, S.to_json())
    assert S2 == S and S2.points_ix() == S.points_ix()


def test_vanishing_polynomials():
    F = GF(4)
    S = CartesianSet([torus_component(F), full_component(F)])
    # x^3 - 1 on the torus component, x^4 - x on the full component
    assert S.vanishing_coeffs(0) == (F.neg_ix(1), 0, 0, 1)
    assert S.vanishing_coeffs(1) == (0, F.neg_ix(1), 0, 0, 1)
    # power reduction folds exponents into the box
    F3 = GF(3)
    S3 = CartesianSet([explicit_component(F3, [F3(0), F3(1)])])
    assert S3.power_reduction(0, 5) == (0, 1)   # x^5 = x on {0,1}
    assert S3.power_reduction(0, 1) == (0, 1)
    assert S3.power_reduction(0, 0) == (1, 0)
