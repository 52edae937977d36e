"""The cohomology ring of the configuration space of m points in R^n.

Generators ``alpha_ij`` (written as pairs ``(i, j)`` with 1-based labels)
have degree n-1 and obey

    alpha_ij^2 = 0,  alpha_ji = (-1)^n alpha_ij,
    alpha_ij alpha_kl = (-1)^(n-1) alpha_kl alpha_ij,
    alpha_ij alpha_jk + alpha_jk alpha_ki + alpha_ki alpha_ij = 0.

Normal forms use the basis of monomials with ``i < j`` in every factor and
strictly increasing left indices, which only needs the three-term relation
in the shape ``alpha_ij alpha_ik = alpha_ij alpha_jk - alpha_ik alpha_jk``
for ``i < j < k``.
"""

from fractions import Fraction

from .diagram import Parity
from .lincomb import add_term
from .linalg import SparseMatrix, rank


def _sort_monomial(gens, parity):
    """Sort generators by (i, j); return (sign, tuple) or (0, None) on a square."""
    gens = list(gens)
    swap = -1 if parity is Parity.EVEN else 1   # (-1)^(n-1)
    sign = 1
    for a in range(1, len(gens)):   # insertion sort, one sign per swap
        b = a
        while b > 0 and gens[b - 1] > gens[b]:
            gens[b - 1], gens[b] = gens[b], gens[b - 1]
            sign *= swap
            b -= 1
    for x, y in zip(gens, gens[1:]):
        if x == y:
            return 0, None
    return sign, tuple(gens)


def chord_normal_form(word, parity):
    """Reduce a product of generators to the increasing-left-index basis."""
    parity = Parity.parse(parity)
    sign = 1
    gens = []
    for i, j in word:
        if i == j:
            raise ValueError("alpha_ii is not a generator")
        if i > j:
            i, j = j, i
            sign *= parity.sign
        gens.append((i, j))
    out = {}
    stack = [(Fraction(sign), gens)]
    while stack:
        c, g = stack.pop()
        s, mono = _sort_monomial(g, parity)
        if not s:
            continue
        c *= s
        clash = None
        for a in range(len(mono) - 1):
            if mono[a][0] == mono[a + 1][0]:
                clash = a
                break
        if clash is None:
            add_term(out, mono, c)
            continue
        (i, j), (_, k) = mono[clash], mono[clash + 1]
        pre, post = list(mono[:clash]), list(mono[clash + 2:])
        stack.append((c, pre + [(i, j), (j, k)] + post))
        stack.append((-c, pre + [(i, k), (j, k)] + post))
    return out


def poincare_dims(m, n):
    """Coefficients of prod_{j<m} (1 + j t^(n-1)), indexed by degree."""
    coeffs = [1]
    for j in range(1, m):
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d] += c
            nxt[d + 1] += j * c
        coeffs = nxt
    out = [0] * ((len(coeffs) - 1) * (n - 1) + 1)
    for w, c in enumerate(coeffs):
        out[w * (n - 1)] = c
    return out


def pbw_basis(m, weight):
    """All normal-form monomials with ``weight`` generators."""
    out = []

    def rec(start, acc):
        if len(acc) == weight:
            out.append(tuple(acc))
            return
        for i in range(start, m + 1):
            for j in range(i + 1, m + 1):
                rec(i + 1, acc + [(i, j)])

    rec(1, [])
    return out


# ------------------------------------------------ bar complex of the ring


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def arnold_bar_basis(m, weight, length):
    """Words of ``length`` nonempty normal-form monomials, total ``weight``."""
    out = []
    for comp in _compositions(weight, length):
        words = [()]
        for w in comp:
            words = [x + (mono,) for x in words for mono in pbw_basis(m, w)]
        out += words
    return out


def arnold_bar_differential(x, parity):
    """Merge adjacent factors; sign ``(-1)^eps(i)`` with |a| = (n-1) * weight."""
    parity = Parity.parse(parity)
    out = {}
    for word, c in x.items():
        eps = 0
        for i in range(len(word) - 1):
            # suspended degree of a factor: (n-1)|a| + 1
            wt = len(word[i]) if parity is Parity.EVEN else 0
            eps = (eps + wt + 1) % 2
            prod = chord_normal_form(list(word[i]) + list(word[i + 1]), parity)
            for mono, c2 in prod.items():
                new = word[:i] + (mono,) + word[i + 2:]
                add_term(out, new, c * c2 * (-1 if eps else 1))
    return out


def arnold_bar_cohomology(m, weight, parity):
    """``{length: dim}`` of the bar construction's cohomology at a weight."""
    parity = Parity.parse(parity)
    bases = {p: arnold_bar_basis(m, weight, p) for p in range(0, weight + 2)}

    def matrix(p):
        src, tgt = bases.get(p, []), bases.get(p - 1, [])
        index = {w: i for i, w in enumerate(tgt)}
        M = SparseMatrix(len(tgt), len(src))
        for j, w in enumerate(src):
            for w2, c in arnold_bar_differential({w: Fraction(1)}, parity).items():
                M[index[w2], j] = c
        return M

    dims = {}
    for p in range(1, weight + 1):
        out_rank = rank(matrix(p)) if p > 1 else 0
        in_rank = rank(matrix(p + 1))
        dims[p] = len(bases[p]) - out_rank - in_rank
    return dims
