"""The diagram algebra D(m) and its normalized bar complex B(D(m)).

Basis elements of D(m) are canonical keys (see :mod:`diagcomplex.diagram`);
elements are dicts ``key -> Fraction``.  Bar words are tuples of nonempty
canonical keys.

Sign conventions (the ones that make ``d`` a degree-one derivation with
``d o d = 0``):

* odd parity: to contract edge ``u -> v`` delete the free endpoint (the head
  when both are free); the sign is ``(-1)^(position of the deleted vertex
  among free vertices)``, times ``-1`` when the edge points away from it;
* even parity: the sign is ``(-1)^(position of the edge)``.

The bar differential is ``delta = delta_1 + delta_2`` with
``delta_1 = sum (-1)^eps(i-1) [..|d a_i|..]`` and
``delta_2 = sum (-1)^eps(i) [..|a_i a_(i+1)|..]``, ``eps(i) = sum_{j<=i}(|a_j|+1)``;
outer faces vanish because every factor is nonempty.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .arnold import chord_normal_form
from .diagram import (Diagram, Parity, canonicalize, diagram_from_key,
                      key_bytes, tripod)
from .errors import InfeasibleGrading
from .lincomb import add_into, add_term
from .linalg import SparseMatrix, cohomology_dim, rref


@dataclass(frozen=True)
class Grading:
    degree: int
    order: int
    defect: int
    p: int = 1

    @property
    def q(self):
        return self.degree

    @property
    def total(self):
        return self.degree - self.p


def _as_diagram(x):
    return diagram_from_key(x) if isinstance(x, tuple) else x


def grading_D(d, n):
    d = _as_diagram(d)
    E, V = len(d.edges), d.nfree
    return Grading(degree=(n - 1) * E - n * V, order=E - V, defect=E - 2 * V - 1)


def counts_from_grading(r, s):
    """(V_free, E) of a braid diagram with order ``r`` and defect ``s``."""
    return r - s - 1, 2 * r - s - 1


def degree_parity(key, parity):
    """|Gamma| mod 2: free vertices for odd n, edges for even n."""
    _, m, nfree, edges = key
    return (nfree if parity is Parity.ODD else len(edges)) % 2


def basis_element(d, parity):
    """Express an oriented diagram as ``{key: +-1}`` (empty when zero)."""
    sk = canonicalize(d, parity)
    return {sk.key: Fraction(sk.sign)} if sk.sign else {}


# ------------------------------------------------------------- differential


def _contract(d, idx, parity):
    """Contract edge ``idx``; returns (sign, Diagram) or None for a chord."""
    u, v = d.edges[idx]
    if u < d.m and v < d.m:
        return None
    if parity is Parity.ODD:
        if v >= d.m:
            gone, keep, sign = v, u, 1
        else:
            gone, keep, sign = u, v, -1
        sign *= -1 if (gone - d.m) % 2 else 1
    else:
        gone, keep = (v, u) if v >= d.m else (u, v)
        sign = -1 if idx % 2 else 1

    def ren(x):
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = tuple((ren(a), ren(b)) for k, (a, b) in enumerate(d.edges) if k != idx)
    return sign, Diagram(d.m, d.nfree - 1, edges)


def contraction_terms(d, parity):
    """All ``(sign, diagram)`` terms of the differential of one oriented diagram."""
    parity = Parity.parse(parity)
    out = []
    for idx in range(len(d.edges)):
        t = _contract(d, idx, parity)
        if t is not None:
            out.append(t)
    return out


def differential_D(x, parity):
    parity = Parity.parse(parity)
    if isinstance(x, Diagram):
        x = basis_element(x, parity)
    out = {}
    for key, c in x.items():
        for sign, g in contraction_terms(diagram_from_key(key), parity):
            if any(a == b for a, b in g.edges):
                continue
            sk = canonicalize(g, parity)
            if sk.sign:
                add_term(out, sk.key, c * sign * sk.sign)
    return out


# ------------------------------------------------------------------ product


def superpose(a, b):
    """Oriented superposition: b's free vertices and edges come after a's."""
    if a.m != b.m:
        raise ValueError("diagrams on different numbers of strands")
    shift = a.nfree

    def ren(x):
        return x if x < b.m else x + shift

    edges = a.edges + tuple((ren(u), ren(v)) for u, v in b.edges)
    return Diagram(a.m, a.nfree + b.nfree, edges)


@lru_cache(maxsize=None)
def _product_keys(ka, kb, parity):
    sk = canonicalize(superpose(diagram_from_key(ka), diagram_from_key(kb)), parity)
    return sk.key, sk.sign


def product_D(a, b, parity):
    """Product of two elements (diagrams or linear combinations)."""
    parity = Parity.parse(parity)
    if isinstance(a, Diagram):
        a = basis_element(a, parity)
    if isinstance(b, Diagram):
        b = basis_element(b, parity)
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key, sign = _product_keys(ka, kb, parity)
            if sign:
                add_term(out, key, ca * cb * sign)
    return out


# -------------------------------------------------------------- enumeration


def _edge_subsets(nverts, m, E):
    """Edge sets of size E with every free vertex of valence >= 3."""
    pairs = [(u, v) for v in range(nverts) for u in range(v)]
    val = [0] * nverts
    chosen = []

    def deficit():
        return sum(max(0, 3 - val[f]) for f in range(m, nverts))

    def rec(i):
        left = E - len(chosen)
        if left == 0:
            if deficit() == 0:
                yield tuple(chosen)
            return
        if len(pairs) - i < left or deficit() > 2 * left:
            return
        for k in range(i, len(pairs)):
            if len(pairs) - k < left:
                break
            u, v = pairs[k]
            chosen.append((u, v))
            val[u] += 1
            val[v] += 1
            yield from rec(k + 1)
            val[u] -= 1
            val[v] -= 1
            chosen.pop()

    yield from rec(0)


@lru_cache(maxsize=None)
def _enumerate_D(m, r, s, parity, allow_vacuum):
    V, E = counts_from_grading(r, s)
    if V < 0 or E < 0:
        return ()
    found = {}
    for edges in _edge_subsets(m + V, m, E):
        d = Diagram(m, V, edges)
        vals = d.valences()
        # symmetry breaking: free valences non-increasing
        if any(vals[f] < vals[f + 1] for f in range(m, m + V - 1)):
            continue
        if not allow_vacuum and d.has_vacuum_component():
            continue
        sk = canonicalize(d, parity)
        if sk.sign:
            found[sk.key] = True
    return tuple(sorted(found, key=key_bytes))


def enumerate_D(m, r, s, parity, allow_vacuum=False):
    """Canonical basis of D(m) in order ``r`` and defect ``s``.

    Components without segment vertices are excluded unless
    ``allow_vacuum`` is set.
    """
    V, E = counts_from_grading(r, s)
    if V < 0 or E < 0:
        raise InfeasibleGrading(f"(r, s) = ({r}, {s}) gives V_free={V}, E={E}", r=r, s=s)
    return list(_enumerate_D(m, r, s, Parity.parse(parity), allow_vacuum))


# ------------------------------------------------------- projection to H*(Conf)


def project_chords(d, parity):
    """The algebra map to the Arnold ring; diagrams with free vertices go to 0."""
    parity = Parity.parse(parity)
    if isinstance(d, dict):
        out = {}
        for key, c in d.items():
            add_into(out, project_chords(diagram_from_key(key), parity), c)
        return out
    d = _as_diagram(d)
    if d.nfree:
        return {}
    return chord_normal_form([(u + 1, v + 1) for u, v in d.edges], parity)


# --------------------------------------------------------------- bar complex


def bar_grading(word, n):
    p = len(word)
    gs = [grading_D(k, n) for k in word]
    q = sum(g.degree for g in gs)
    r = sum(g.order for g in gs)
    s = sum(g.defect for g in gs)
    if q - p != (n - 2) * r + s:
        raise AssertionError("bar grading identity violated")
    return Grading(degree=q, order=r, defect=s, p=p)


def _eps_prefix(word, parity):
    """eps(i) mod 2 for i = 0..p."""
    out = [0]
    for k in word:
        out.append((out[-1] + degree_parity(k, parity) + 1) % 2)
    return out


def bar_differential(x, parity):
    parity = Parity.parse(parity)
    if isinstance(x, tuple):
        x = {x: Fraction(1)}
    out = {}
    for word, c in x.items():
        eps = _eps_prefix(word, parity)
        for i, k in enumerate(word):
            sign = -1 if eps[i] else 1
            for k2, c2 in differential_D({k: Fraction(1)}, parity).items():
                add_term(out, word[:i] + (k2,) + word[i + 1:], c * sign * c2)
        for i in range(len(word) - 1):
            sign = -1 if eps[i + 1] else 1
            key, s2 = _product_keys(word[i], word[i + 1], parity)
            if s2:
                add_term(out, word[:i] + (key,) + word[i + 2:], c * sign * s2)
    return out


def delta1(x, parity):
    parity = Parity.parse(parity)
    out = {}
    for word, c in x.items():
        eps = _eps_prefix(word, parity)
        for i, k in enumerate(word):
            sign = -1 if eps[i] else 1
            for k2, c2 in differential_D({k: Fraction(1)}, parity).items():
                add_term(out, word[:i] + (k2,) + word[i + 1:], c * sign * c2)
    return out


def delta2(x, parity):
    parity = Parity.parse(parity)
    out = {}
    for word, c in x.items():
        eps = _eps_prefix(word, parity)
        for i in range(len(word) - 1):
            sign = -1 if eps[i + 1] else 1
            key, s2 = _product_keys(word[i], word[i + 1], parity)
            if s2:
                add_term(out, word[:i] + (key,) + word[i + 2:], c * sign * s2)
    return out


def _shuffles(p, q):
    """Positions taken by the first word in each (p, q)-shuffle."""
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, p + q - left + 1):
            for rest in rec(i + 1, left - 1):
                yield (i,) + rest
    return rec(0, p)


def shuffle_sign(a_par, b_par, a_pos, total):
    """Koszul sign of interleaving with the given suspended parities."""
    sign = 1
    a_set = set(a_pos)
    seen_b = []
    ia = ib = 0
    for pos in range(total):
        if pos in a_set:
            # every b element already placed has jumped over this a element
            if a_par[ia] and sum(seen_b) % 2:
                sign = -sign
            ia += 1
        else:
            seen_b.append(b_par[ib])
            ib += 1
    return sign


def bar_shuffle(a, b, parity):
    """Graded-commutative shuffle product of two bar elements."""
    parity = Parity.parse(parity)
    if isinstance(a, tuple):
        a = {a: Fraction(1)}
    if isinstance(b, tuple):
        b = {b: Fraction(1)}
    out = {}
    for wa, ca in a.items():
        pa = [(degree_parity(k, parity) + 1) % 2 for k in wa]
        for wb, cb in b.items():
            pb = [(degree_parity(k, parity) + 1) % 2 for k in wb]
            total = len(wa) + len(wb)
            for pos in _shuffles(len(wa), len(wb)):
                sign = shuffle_sign(pa, pb, pos, total)
                word, ia, ib = [], 0, 0
                ps = set(pos)
                for t in range(total):
                    if t in ps:
                        word.append(wa[ia])
                        ia += 1
                    else:
                        word.append(wb[ib])
                        ib += 1
                add_term(out, tuple(word), ca * cb * sign)
    return out


def bar_coproduct(x):
    """Deconcatenation; returns ``{(left, right): coeff}`` with () the unit."""
    if isinstance(x, tuple):
        x = {x: Fraction(1)}
    out = {}
    for word, c in x.items():
        for i in range(len(word) + 1):
            add_term(out, (word[:i], word[i:]), c)
    return out


def _defect_range(r):
    return range(-r - 1, r)


def _bar_feasible(r, s):
    return (r == 0 and s == 0) or (r >= 1 and -2 * r <= s <= r - 1)


@lru_cache(maxsize=None)
def _enumerate_bar(m, r, s, parity, allow_vacuum=False):
    if r == 0:
        return ((),) if s == 0 else ()
    if not _bar_feasible(r, s):
        return ()
    words = []
    for r1 in range(1, r + 1):
        for s1 in _defect_range(r1):
            firsts = _enumerate_D(m, r1, s1, parity, allow_vacuum)
            if not firsts:
                continue
            rests = _enumerate_bar(m, r - r1, s - s1, parity, allow_vacuum)
            for f in firsts:
                for w in rests:
                    words.append((f,) + w)
    return tuple(sorted(words, key=key_bytes))


def enumerate_bar(m, r, s, parity, allow_vacuum=False):
    """Basis of B(D(m)) in order ``r`` and defect ``s``."""
    if not _bar_feasible(r, s):
        raise InfeasibleGrading(f"no bar words in (r, s) = ({r}, {s})", r=r, s=s)
    return list(_enumerate_bar(m, r, s, Parity.parse(parity), allow_vacuum))


def matrix_of(fn, source, target):
    """Matrix of a linear map between enumerated bases (columns = source)."""
    index = {k: i for i, k in enumerate(target)}
    M = SparseMatrix(len(target), len(source))
    for j, k in enumerate(source):
        for k2, c in fn({k: Fraction(1)}).items():
            if k2 not in index:
                raise KeyError(f"image term {k2!r} outside the target basis")
            M[index[k2], j] = c
    return M


def bar_differential_matrix(m, r, s, parity, allow_vacuum=False):
    parity = Parity.parse(parity)
    src = _enumerate_bar(m, r, s, parity, allow_vacuum)
    tgt = _enumerate_bar(m, r, s + 1, parity, allow_vacuum)
    return matrix_of(lambda x: bar_differential(x, parity), src, tgt), src, tgt


def bar_cohomology_dim(m, r, s, parity, allow_vacuum=False):
    """dim H^(r,s) of B(D(m)) in the (order, defect) grading."""
    if not _bar_feasible(r, s):
        raise InfeasibleGrading(f"no bar words in (r, s) = ({r}, {s})", r=r, s=s)
    parity = Parity.parse(parity)
    d_in, _, _ = bar_differential_matrix(m, r, s - 1, parity, allow_vacuum)
    d_out, _, _ = bar_differential_matrix(m, r, s, parity, allow_vacuum)
    return cohomology_dim(d_in, d_out)


def D_differential_matrix(m, r, s, parity, allow_vacuum=False):
    parity = Parity.parse(parity)
    src = _enumerate_D(m, r, s, parity, allow_vacuum)
    tgt = _enumerate_D(m, r, s + 1, parity, allow_vacuum)
    return matrix_of(lambda x: differential_D(x, parity), src, tgt), src, tgt


def D_cohomology_dim(m, r, s, parity, allow_vacuum=False):
    """dim H^(r,s) of D(m) itself."""
    parity = Parity.parse(parity)
    d_in, _, _ = D_differential_matrix(m, r, s - 1, parity, allow_vacuum)
    d_out, _, _ = D_differential_matrix(m, r, s, parity, allow_vacuum)
    return cohomology_dim(d_in, d_out)


# ----------------------------------------------------- chord words and 4T


def chord_key(i, j, m):
    """Key of the single chord between 1-based labels ``i < j``."""
    if not i < j:
        raise ValueError("use i < j")
    return ("braid", m, 0, ((i - 1, j - 1),))


def chord_letter(i, j, m, parity):
    """(sign, key) for Gamma_ij with either index order."""
    parity = Parity.parse(parity)
    if i < j:
        return 1, chord_key(i, j, m)
    return parity.sign, chord_key(j, i, m)


def chord_word(pairs, m, parity):
    """Bar element [Gamma_{i1 j1} | ... ] as a one-term linear combination."""
    sign, keys = 1, []
    for i, j in pairs:
        s, k = chord_letter(i, j, m, parity)
        sign *= s
        keys.append(k)
    return {tuple(keys): Fraction(sign)}


def chord_pairs(m):
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]


def chord_word_basis(m, k):
    return [tuple(w) for w in product(chord_pairs(m), repeat=k)]


def relation_rows(m, k, parity):
    """4T and shuffle rows as dicts over chord-pair words (pairs i<j)."""
    parity = Parity.parse(parity)
    sgn = parity.sign

    def letter(i, j):
        return (1, (i, j)) if i < j else (sgn, (j, i))

    def word(prefix, x, y, suffix):
        sx, lx = letter(*x)
        sy, ly = letter(*y)
        return sx * sy, prefix + (lx, ly) + suffix

    rows = []
    idx = range(1, m + 1)
    for t in range(k - 1):
        for ctx in product(chord_pairs(m), repeat=k - 2):
            prefix, suffix = tuple(ctx[:t]), tuple(ctx[t:])
            for i in idx:
                for j in idx:
                    for l in idx:
                        if len({i, j, l}) < 3:
                            continue
                        row = {}
                        for c, (x, y) in ((1, ((i, j), (j, l))), (-sgn, ((j, l), (i, j))),
                                          (1, ((i, j), (i, l))), (-sgn, ((i, l), (i, j)))):
                            s, w = word(prefix, x, y, suffix)
                            add_term(row, w, Fraction(c * s))
                        rows.append(("4T", row))
            for i, j in chord_pairs(m):
                for a, b in chord_pairs(m):
                    if len({i, j, a, b}) < 4:
                        continue
                    row = {}
                    s1, w1 = word(prefix, (i, j), (a, b), suffix)
                    s2, w2 = word(prefix, (a, b), (i, j), suffix)
                    add_term(row, w1, Fraction(s1))
                    add_term(row, w2, Fraction(-sgn * s2))
                    rows.append(("shuffle", row))
    return rows


def chord_relation_kernel(m, k, parity):
    """Kernel of the 4T + shuffle pairing on chord words of length ``k``.

    Returns ``(dim, basis)`` with basis vectors as bar-word combinations.
    """
    parity = Parity.parse(parity)
    basis = chord_word_basis(m, k)
    index = {w: i for i, w in enumerate(basis)}
    rows = relation_rows(m, k, parity)
    R = SparseMatrix(len(rows), len(basis))
    for r, (_, row) in enumerate(rows):
        for w, c in row.items():
            R[r, index[w]] = c
    _, kernel = rref(R)
    out = []
    for vec in kernel:
        x = {}
        for w, c in zip(basis, vec):
            if c:
                add_into(x, chord_word(w, m, parity), c)
        out.append(x)
    return len(kernel), out


def pairs_of_word(word):
    """Inverse of :func:`chord_word` on chord-only bar words (pairs i<j)."""
    out = []
    for key in word:
        _, m, nfree, edges = key
        if nfree or len(edges) != 1:
            return None
        u, v = edges[0]
        out.append((u + 1, v + 1))
    return tuple(out)


def in_relation_kernel(x, parity):
    """True when a chord-only combination pairs to zero with every row."""
    parity = Parity.parse(parity)
    coeffs = {}
    for word, c in x.items():
        pw = pairs_of_word(word)
        if pw is None:
            return False
        add_term(coeffs, pw, c)
    if not coeffs:
        return True
    k = len(next(iter(coeffs)))
    m = next(iter(x))[0][1]
    for _, row in relation_rows(m, k, parity):
        if sum(coeffs.get(w, 0) * c for w, c in row.items()):
            return False
    return True


def chord_part(x):
    """Restrict a bar element to words whose factors are single chords."""
    return {w: c for w, c in x.items() if pairs_of_word(w) is not None}


# ---------------------------------------------------------------- cocycles


def verify_cocycle(x, parity):
    """``(True, {})`` if closed, else ``(False, witness)`` with witness = delta x."""
    dx = bar_differential(x, parity)
    return (not dx), dx


def solve_tripod_coefficient(chord_terms, parity, m=3, legs=(1, 2, 3)):
    """Find c with delta(chord_terms + c [tripod]) = 0; None if impossible."""
    parity = Parity.parse(parity)
    t = canonicalize(tripod(m, legs), parity)
    tword = {(t.key,): Fraction(t.sign)}
    a = bar_differential(chord_terms, parity)
    b = bar_differential(tword, parity)
    c = None
    for key, v in b.items():
        c = -a.get(key, 0) / v
        break
    if c is None:
        return None, tword
    residue = dict(a)
    add_into(residue, b, c)
    if residue:
        return None, tword
    return c, tword


def mu123(parity, m=3):
    """The triple-linking cocycle: three chord words plus a tripod term.

    Chord part ``[G12|G13] - [G12|G23] + [G13|G23]``; the tripod coefficient
    is solved from closedness.  Returns ``(element, tripod_coefficient)``.
    """
    parity = Parity.parse(parity)
    chords = {}
    add_into(chords, chord_word([(1, 2), (1, 3)], m, parity))
    add_into(chords, chord_word([(1, 2), (2, 3)], m, parity), -1)
    add_into(chords, chord_word([(1, 3), (2, 3)], m, parity))
    c, tword = solve_tripod_coefficient(chords, parity, m)
    if c is None:
        raise ArithmeticError("no tripod coefficient closes the chord part")
    out = dict(chords)
    add_into(out, tword, c)
    return out, c


def order3_example(parity, m=3):
    """LLM - LLR + LMR - LRR + MRR with L=G12, M=G13, R=G23."""
    L, M, R = (1, 2), (1, 3), (2, 3)
    out = {}
    for c, w in ((1, [L, L, M]), (-1, [L, L, R]), (1, [L, M, R]),
                 (-1, [L, R, R]), (1, [M, R, R])):
        add_into(out, chord_word(w, m, parity), c)
    return out


def shuffle_indecomposables_dim(m, k, parity):
    """dim of the order-k kernel modulo shuffles of lower-order kernel elements."""
    parity = Parity.parse(parity)
    dim, basis = chord_relation_kernel(m, k, parity)
    lower = {j: chord_relation_kernel(m, j, parity)[1] for j in range(1, k)}
    products = []
    for j in range(1, k):
        for a in lower[j]:
            for b in lower[k - j]:
                products.append(bar_shuffle(a, b, parity))
    words = sorted({w for x in basis + products for w in x}, key=key_bytes)
    index = {w: i for i, w in enumerate(words)}
    M = SparseMatrix(len(words), len(products))
    for j, x in enumerate(products):
        for w, c in x.items():
            M[index[w], j] = c
    return dim - (rref(M)[0] if products else 0)
