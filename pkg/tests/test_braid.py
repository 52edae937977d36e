import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diagcomplex.braid import (_eps_prefix, bar_coproduct, bar_differential,
                               bar_grading, bar_shuffle, basis_element,
                               chord_key, chord_relation_kernel, chord_word,
                               degree_parity, differential_D, enumerate_bar,
                               enumerate_D, grading_D, in_relation_kernel, mu123,
                               order3_example, product_D, project_chords,
                               relation_rows, shuffle_indecomposables_dim,
                               verify_cocycle)
from diagcomplex.diagram import Diagram, Parity, canonicalize, chord, tripod
from diagcomplex.errors import InfeasibleGrading
from diagcomplex.lincomb import add_into

ODD, EVEN = Parity.ODD, Parity.EVEN
PARITIES = (ODD, EVEN)


def _key(d, p):
    return canonicalize(d, p).key


# ------------------------------------------------------------------ D(m)


def test_grading_examples():
    g = grading_D(chord(1, 2, 2), 3)
    assert (g.degree, g.order, g.defect) == (2, 1, 0)
    g = grading_D(tripod(), 3)
    assert (g.degree, g.order, g.defect) == (3, 2, 0)
    two = Diagram(3, 0, ((0, 1), (0, 2)))
    for n in (2, 3, 4, 5):
        g = grading_D(two, n)
        assert (g.order, g.defect) == (2, 1)


def test_differential_examples():
    for p in PARITIES:
        assert differential_D(chord(1, 2, 2), p) == {}
        dt = differential_D(tripod(), p)
        assert len(dt) == 3
        assert all(abs(c) == 1 for c in dt.values())
        centers = set()
        for key in dt:
            _, m, nfree, edges = key
            assert nfree == 0 and len(edges) == 2
            (a, b), (c, d) = edges
            centers |= {a, b} & {c, d}
        assert centers == {0, 1, 2}


def test_product_examples():
    for p in PARITIES:
        prod = product_D(chord(1, 2, 3), chord(1, 3, 3), p)
        assert prod == {_key(Diagram(3, 0, ((0, 1), (0, 2))), p): 1}
        assert product_D(chord(1, 2, 2), chord(1, 2, 2), p) == {}


def _small_D(m, parity):
    out = []
    for r in (1, 2):
        for s in range(-1, r):
            try:
                out += enumerate_D(m, r, s, parity)
            except InfeasibleGrading:
                pass
    return out


def test_product_graded_commutative():
    for p in PARITIES:
        corpus = [k for k in _small_D(3, p) if len(k[3]) <= 2]
        assert len(corpus) >= 6
        for a, b in itertools.product(corpus, repeat=2):
            ab = product_D({a: 1}, {b: 1}, p)
            ba = product_D({b: 1}, {a: 1}, p)
            sign = -1 if degree_parity(a, p) * degree_parity(b, p) else 1
            assert ab == {k: sign * c for k, c in ba.items()}


def test_enumeration_examples():
    for p in PARITIES:
        assert enumerate_D(2, 1, 0, p) == [chord_key(1, 2, 2)]
        assert len(enumerate_D(3, 1, 0, p)) == 3
        assert enumerate_D(3, 2, 0, p) == [_key(tripod(), p)]
    with pytest.raises(InfeasibleGrading):
        enumerate_D(3, 1, 1, EVEN)


def test_d_squared_and_gradings():
    for p in PARITIES:
        for m in (2, 3):
            for r in (1, 2, 3):
                for s in (-1, 0, 1):
                    try:
                        keys = enumerate_D(m, r, s, p)
                    except InfeasibleGrading:
                        continue
                    for k in keys:
                        dk = differential_D({k: Fraction(1)}, p)
                        assert differential_D(dk, p) == {}
                        for k2 in dk:
                            g, g2 = grading_D(k, 3), grading_D(k2, 3)
                            assert (g2.order, g2.defect) == (g.order, g.defect + 1)


def test_projection():
    for p in PARITIES:
        assert project_chords(tripod(), p) == {}
        assert project_chords(chord(1, 2, 2), p) == {((1, 2),): 1}
        prod = Diagram(3, 0, ((0, 1), (0, 2)))
        assert project_chords(prod, p) == {((1, 2), (2, 3)): 1, ((1, 3), (2, 3)): -1}


def test_projection_kills_boundaries():
    for p in PARITIES:
        for r in (2, 3):
            for s in (-1, 0):
                for k in enumerate_D(3, r, s, p):
                    assert project_chords(differential_D({k: 1}, p), p) == {}


# -------------------------------------------------------------- bar words


def test_bar_grading_examples():
    g12 = chord_key(1, 2, 2)
    g = bar_grading((g12, g12), 3)
    assert (g.p, g.q, g.total, g.order, g.defect) == (2, 4, 2, 2, 0)
    t = _key(tripod(), ODD)
    g = bar_grading((t,), 3)
    assert (g.p, g.q, g.total) == (1, 3, 2)
    for n in (2, 3, 4):
        for p in (1, 2, 3):
            assert bar_grading((g12,) * p, n).total == p * (n - 2)


def test_bar_differential_examples():
    g12 = chord_key(1, 2, 2)
    for p in PARITIES:
        assert bar_differential({(g12,): Fraction(1)}, p) == {}
        assert bar_differential({(g12, g12): Fraction(1)}, p) == {}


def test_bar_enumeration_examples():
    for p in PARITIES:
        g12 = chord_key(1, 2, 2)
        assert enumerate_bar(2, 2, 0, p) == [(g12, g12)]
        assert len(enumerate_bar(3, 1, 0, p)) == 3
        words = enumerate_bar(3, 2, 0, p)
        assert len(words) == 10
        assert (_key(tripod(), p),) in words


def test_bar_shuffle_signs():
    a = chord_word([(1, 2)], 3, EVEN)
    b = chord_word([(1, 3)], 3, EVEN)
    w12, w13 = next(iter(a)), next(iter(b))
    assert bar_shuffle(a, b, EVEN) == {w12 + w13: 1, w13 + w12: 1}
    assert bar_shuffle(a, b, ODD) == {w12 + w13: 1, w13 + w12: -1}


def test_coproduct_examples():
    w = next(iter(chord_word([(1, 2)], 3, EVEN)))
    assert bar_coproduct(w) == {((), w): 1, (w, ()): 1}
    w2 = next(iter(chord_word([(1, 2), (1, 3)], 3, EVEN)))
    assert len(bar_coproduct(w2)) == 3


def _corpus(m, max_r, p):
    words = []
    for r in range(1, max_r + 1):
        for s in range(-2 * r, r):
            try:
                words += enumerate_bar(m, r, s, p)
            except InfeasibleGrading:
                pass
    return words


def test_delta_squared():
    for p in PARITIES:
        for w in _corpus(3, 2, p):
            assert bar_differential(bar_differential({w: Fraction(1)}, p), p) == {}


def _coassoc_left(w):
    out = {}
    for (a, b), c in bar_coproduct(w).items():
        for (a1, a2), c2 in bar_coproduct(a).items():
            out[(a1, a2, b)] = out.get((a1, a2, b), 0) + c * c2
    return out


def _coassoc_right(w):
    out = {}
    for (a, b), c in bar_coproduct(w).items():
        for (b1, b2), c2 in bar_coproduct(b).items():
            out[(a, b1, b2)] = out.get((a, b1, b2), 0) + c * c2
    return out


def test_coassociativity():
    for w in _corpus(3, 3, EVEN):
        if len(w) <= 3:
            assert _coassoc_left(w) == _coassoc_right(w)


def _sign_total(w, p):
    return -1 if _eps_prefix(w, p)[-1] else 1


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(PARITIES), st.data())
def test_leibniz(p, data):
    corpus = _corpus(3, 2, p)
    a = data.draw(st.sampled_from(corpus))
    b = data.draw(st.sampled_from(corpus))
    lhs = bar_differential(bar_shuffle(a, b, p), p)
    rhs = bar_shuffle(bar_differential({a: 1}, p), {b: 1}, p)
    add_into(rhs, bar_shuffle({a: 1}, bar_differential({b: 1}, p), p), _sign_total(a, p))
    assert lhs == rhs


def test_shuffle_commutative_and_associative():
    rnd = random.Random(3)
    for p in PARITIES:
        small = _corpus(3, 1, p) + [w for w in _corpus(3, 2, p) if len(w) == 1]
        for a, b in itertools.product(small, repeat=2):
            odd = _sign_total(a, p) == -1 and _sign_total(b, p) == -1
            sign = -1 if odd else 1
            ab, ba = bar_shuffle(a, b, p), bar_shuffle(b, a, p)
            assert ab == {k: sign * c for k, c in ba.items()}
        for _ in range(40):
            a, b, c = (rnd.choice(small) for _ in range(3))
            left = bar_shuffle(bar_shuffle(a, b, p), {c: 1}, p)
            right = bar_shuffle({a: 1}, bar_shuffle(b, c, p), p)
            assert left == right


# --------------------------------------------------------- 4T + shuffle


def test_relation_rows_shape():
    for p in PARITIES:
        for kind, row in relation_rows(4, 2, p):
            assert len(row) == (4 if kind == "4T" else 2)


def test_kernel_dims():
    for p in PARITIES:
        for k in (1, 2, 3):
            assert chord_relation_kernel(2, k, p)[0] == 1
        assert chord_relation_kernel(3, 2, p)[0] == 7
        assert chord_relation_kernel(3, 3, p)[0] == 15


def test_order3_example_in_kernel():
    for p in PARITIES:
        x = order3_example(p)
        assert len(x) == 5
        assert in_relation_kernel(x, p)


def test_kernel_words_are_bar_cocycles():
    for p in PARITIES:
        for x in chord_relation_kernel(3, 2, p)[1]:
            # chord words are closed under delta_1; delta_2 lands on products
            dx = bar_differential(x, p)
            assert all(len(w) == 1 for w in dx)


def test_indecomposables():
    # both numbers are recorded: the full kernel and the part not
    # generated by shuffles of lower-order kernel elements
    assert [shuffle_indecomposables_dim(3, k, EVEN) for k in (1, 2, 3)] == [3, 1, 2]
    assert [shuffle_indecomposables_dim(3, k, ODD) for k in (1, 2, 3)] == [3, 4, 2]


# --------------------------------------------------------------- cocycles


def test_mu123_closed():
    for p in PARITIES:
        x, c = mu123(p)
        assert abs(c) == 1
        closed, witness = verify_cocycle(x, p)
        assert closed and witness == {}


def test_chord_alone_not_closed():
    for p in PARITIES:
        closed, witness = verify_cocycle(chord_word([(1, 2), (1, 3)], 3, p), p)
        assert not closed
        (w,) = witness
        assert len(w) == 1 and len(w[0][3]) == 2


def test_single_chord_closed():
    for p in PARITIES:
        assert verify_cocycle(chord_word([(1, 2)], 2, p), p)[0]
