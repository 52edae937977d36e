"""The link diagram complex LD(m).

Elements are dicts ``link key -> Fraction``.  The parity argument of every
function here is the orientation parity of the link side, i.e. the parity
of ``n + 1`` when the braid side lives in dimension ``n``.

Differential conventions:

* odd type: the arc ``a -> b`` between consecutive segment vertices is
  contracted like an edge pointing at ``b``: ``b`` is deleted with sign
  ``(-1)^pos(b)``.  An edge is contracted by deleting its free endpoint
  (the head if both are free), with sign ``(-1)^pos`` of the deleted vertex,
  times ``-1`` when the edge points away from it;
* even type: the odd objects are the segment vertices (by id) followed by
  the edges.  Contracting edge ``i`` carries ``(-1)^(V_seg + i)`` and
  contracting an arc deletes its later vertex ``b`` with ``(-1)^rank(b)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .diagram import (LinkDiagram, Parity, canonicalize_link, is_tree_like,
                      key_bytes, link_from_key, perm_sign)
from .errors import InfeasibleGrading
from .lincomb import add_into, add_term
from .linalg import SparseMatrix, rref


@dataclass(frozen=True)
class LDGrading:
    order: int
    defect: int
    degree: int


def _as_link(x):
    return link_from_key(x) if isinstance(x, tuple) else x


def grading_LD(d, n):
    d = _as_link(d)
    E, Vf, Vs = len(d.edges), d.nfree, d.nseg
    r = E - Vf
    s = 2 * E - 3 * Vf - Vs
    return LDGrading(order=r, defect=s, degree=(n - 2) * r + s)


def link_basis_element(d, parity):
    sk = canonicalize_link(d, parity)
    return {sk.key: Fraction(sk.sign)} if sk.sign else {}


def _signed(d, parity):
    if any(u == v for u, v in d.edges):
        return None
    sk = canonicalize_link(d, parity)
    return sk if sk.sign else None


# ------------------------------------------------------------- differential


def _delete_merge(d, gone, keep, skip_edge=None):
    """Merge vertex ``gone`` into ``keep`` and renumber."""
    def ren(x):
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = tuple((ren(a), ren(b)) for k, (a, b) in enumerate(d.edges) if k != skip_edge)
    strands = tuple(tuple(ren(v) for v in s if v != gone) for s in d.strands)
    return LinkDiagram(d.m, strands, d.nverts - 1, edges)


def contraction_terms_LD(d, parity):
    """``(sign, diagram)`` for every arc and non-chord edge contraction."""
    parity = Parity.parse(parity)
    segs = set(d.seg_vertices)
    seg_rank = {v: i for i, v in enumerate(sorted(segs))}
    out = []
    for s in d.strands:
        for a, b in zip(s, s[1:]):
            if parity is Parity.ODD:
                sign = -1 if b % 2 else 1
            else:
                sign = -1 if seg_rank[b] % 2 else 1
            out.append((sign, _delete_merge(d, b, a)))
    for idx, (u, v) in enumerate(d.edges):
        if u in segs and v in segs:
            continue
        if v not in segs:
            gone, keep, dsign = v, u, 1
        else:
            gone, keep, dsign = u, v, -1
        if parity is Parity.ODD:
            sign = dsign * (-1 if gone % 2 else 1)
        else:
            sign = -1 if (len(segs) + idx) % 2 else 1
        out.append((sign, _delete_merge(d, gone, keep, skip_edge=idx)))
    return out


def differential_LD(x, parity):
    parity = Parity.parse(parity)
    if isinstance(x, LinkDiagram):
        x = link_basis_element(x, parity)
    out = {}
    for key, c in x.items():
        for sign, g in contraction_terms_LD(link_from_key(key), parity):
            sk = _signed(g, parity)
            if sk is not None:
                add_term(out, sk.key, c * sign * sk.sign)
    return out


# -------------------------------------------------------- product, coproduct


def orientation_weight(d, parity):
    """Number of odd orientation objects, mod 2 (the degree parity)."""
    d = _as_link(d)
    if Parity.parse(parity) is Parity.ODD:
        return d.nverts % 2
    return (d.nseg + len(d.edges)) % 2


def _interleavings(p, q):
    for pos in combinations(range(p + q), p):
        yield pos


def shuffle_diagrams(a, b):
    """All per-strand interleavings of b's segment vertices with a's.

    b's vertex ids are raised by ``a.nverts``; only strand lists vary.
    """
    if a.m != b.m:
        raise ValueError("diagrams on different numbers of strands")
    shift = a.nverts
    bstr = [tuple(v + shift for v in s) for s in b.strands]
    edges = a.edges + tuple((u + shift, v + shift) for u, v in b.edges)
    per_strand = []
    for sa, sb in zip(a.strands, bstr):
        opts = []
        for pos in _interleavings(len(sa), len(sb)):
            ps, ia, ib, merged = set(pos), 0, 0, []
            for t in range(len(sa) + len(sb)):
                if t in ps:
                    merged.append(sa[ia])
                    ia += 1
                else:
                    merged.append(sb[ib])
                    ib += 1
            opts.append(tuple(merged))
        per_strand.append(opts)

    def rec(i, acc):
        if i == len(per_strand):
            yield LinkDiagram(a.m, tuple(acc), a.nverts + b.nverts, edges)
            return
        for o in per_strand[i]:
            yield from rec(i + 1, acc + [o])

    yield from rec(0, [])


@lru_cache(maxsize=None)
def _shuffle_keys(ka, kb, parity):
    a, b = link_from_key(ka), link_from_key(kb)
    # even type: move b's segment vertices in front of a's edges
    base = -1 if parity is Parity.EVEN and (b.nseg * len(a.edges)) % 2 else 1
    out = {}
    for g in shuffle_diagrams(a, b):
        sk = _signed(g, parity)
        if sk is not None:
            add_term(out, sk.key, Fraction(base * sk.sign))
    return tuple(out.items())


def shuffle_product_LD(a, b, parity):
    parity = Parity.parse(parity)
    if isinstance(a, LinkDiagram):
        a = link_basis_element(a, parity)
    if isinstance(b, LinkDiagram):
        b = link_basis_element(b, parity)
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            for k, c in _shuffle_keys(ka, kb, parity):
                add_term(out, k, ca * cb * c)
    return out


def empty_link(m):
    return LinkDiagram(m, tuple(() for _ in range(m)), 0, ())


def sub_diagram(d, vertices):
    """Restriction of ``d`` to a union of components, ids compacted."""
    vs = sorted(vertices)
    ren = {v: i for i, v in enumerate(vs)}
    edges = tuple((ren[u], ren[v]) for u, v in d.edges if u in ren)
    strands = tuple(tuple(ren[v] for v in s if v in ren) for s in d.strands)
    return LinkDiagram(d.m, strands, len(vs), edges)


def _cut_sign(d, left, parity):
    """Sign of moving the odd objects of ``left`` in front of the rest."""
    if parity is Parity.ODD:
        order = sorted(range(d.nverts), key=lambda v: (v not in left, v))
        return perm_sign(order)
    segs = sorted(d.seg_vertices)
    objs = [("s", v) for v in segs] + [("e", k) for k in range(len(d.edges))]

    def side(o):
        if o[0] == "s":
            return o[1] not in left
        return d.edges[o[1]][0] not in left

    def kind(o):
        return 0 if o[0] == "s" else 1

    idx = {o: i for i, o in enumerate(objs)}
    target = sorted(objs, key=lambda o: (side(o), kind(o), idx[o]))
    return perm_sign([idx[o] for o in target])


def coproduct_LD(x, parity):
    """Cuts into a left and a right part along every strand at once.

    Each component goes wholly to one side and on every strand the left
    vertices precede the right ones.  Returns ``{(left_key, right_key): c}``.
    """
    parity = Parity.parse(parity)
    if isinstance(x, LinkDiagram):
        x = link_basis_element(x, parity)
    out = {}
    for key, c in x.items():
        d = link_from_key(key)
        comps = d.components()
        for k in range(len(comps) + 1):
            for pick in combinations(range(len(comps)), k):
                left = set(v for i in pick for v in comps[i])
                if not all(_prefix_closed(s, left) for s in d.strands):
                    continue
                right = set(range(d.nverts)) - left
                sl = canonicalize_link(sub_diagram(d, left), parity)
                sr = canonicalize_link(sub_diagram(d, right), parity)
                sign = _cut_sign(d, left, parity) * sl.sign * sr.sign
                if sign:
                    add_term(out, (sl.key, sr.key), c * sign)
    return out


def _prefix_closed(strand, left):
    seen_right = False
    for v in strand:
        if v in left and seen_right:
            return False
        if v not in left:
            seen_right = True
    return True


# -------------------------------------------------------------- enumeration


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _link_edge_sets(nseg, nfree, E):
    nverts = nseg + nfree
    pairs = [(u, v) for v in range(nverts) for u in range(v)]
    need = [1] * nseg + [3] * nfree
    val = [0] * nverts
    chosen = []

    def deficit():
        return sum(max(0, need[v] - val[v]) for v in range(nverts))

    def rec(i):
        left = E - len(chosen)
        if left == 0:
            if deficit() == 0:
                yield tuple(chosen)
            return
        if deficit() > 2 * left:
            return
        for k in range(i, len(pairs) - left + 1):
            u, v = pairs[k]
            chosen.append((u, v))
            val[u] += 1
            val[v] += 1
            yield from rec(k + 1)
            val[u] -= 1
            val[v] -= 1
            chosen.pop()

    yield from rec(0)


def is_forest(d):
    return is_tree_like(d.nverts, d.edges) if d.edges else True


def _forest(d):
    for comp in d.components():
        cs = set(comp)
        ne = sum(1 for u, v in d.edges if u in cs)
        if ne != len(comp) - 1:
            return False
    return True


def condition_two(d):
    """Every single-strand component has a foreign vertex inside its span."""
    pos = d.strand_of()
    for comp in d.components():
        cs = set(comp)
        strands = {pos[v][0] for v in comp if v in pos}
        if len(strands) != 1:
            continue
        (i,) = strands
        places = [pos[v][1] for v in comp if v in pos]
        lo, hi = min(places), max(places)
        if not any(v not in cs for v in d.strands[i][lo + 1:hi]):
            return False
    return True


def in_forest_subspace(d):
    d = _as_link(d)
    return _forest(d) and condition_two(d)


def link_counts(r, s, vseg):
    return 2 * r - s - vseg, 3 * r - s - vseg


@lru_cache(maxsize=None)
def _enumerate_LD(m, r, s, parity, forest_only, allow_vacuum):
    found = {}
    for vseg in range(0, 2 * r - s + 1):
        nfree, E = link_counts(r, s, vseg)
        if nfree < 0 or E < 0:
            continue
        for lengths in _compositions(vseg, m):
            strands, pos = [], 0
            for k in lengths:
                strands.append(tuple(range(pos, pos + k)))
                pos += k
            strands = tuple(strands)
            for edges in _link_edge_sets(vseg, nfree, E):
                d = LinkDiagram(m, strands, vseg + nfree, edges)
                vals = d.valences()
                if any(vals[f] < vals[f + 1] for f in range(vseg, vseg + nfree - 1)):
                    continue
                if not allow_vacuum and d.has_vacuum_component():
                    continue
                if forest_only and not in_forest_subspace(d):
                    continue
                sk = canonicalize_link(d, parity)
                if sk.sign:
                    found[sk.key] = True
    return tuple(sorted(found, key=key_bytes))


def enumerate_LD(m, r, s, parity, forest_only=False, allow_vacuum=False):
    """Canonical basis of LD(m) (or its forest subspace) at order r, defect s."""
    if r < 0 or s < 0 or s > 2 * r:
        raise InfeasibleGrading(f"no link diagrams at (r, s) = ({r}, {s})", r=r, s=s)
    return list(_enumerate_LD(m, r, s, Parity.parse(parity), forest_only, allow_vacuum))


def LD_differential_matrix(m, r, s, parity, forest_only=False):
    """Matrix of d from (r, s) (optionally forests only) to all of (r, s+1)."""
    parity = Parity.parse(parity)
    src = _enumerate_LD(m, r, s, parity, forest_only, False)
    tgt = _enumerate_LD(m, r, s + 1, parity, False, False)
    index = {k: i for i, k in enumerate(tgt)}
    M = SparseMatrix(len(tgt), len(src))
    for j, k in enumerate(src):
        for k2, c in differential_LD({k: Fraction(1)}, parity).items():
            M[index[k2], j] = c
    return M, src, tgt


def _kernel_combos(M, src):
    _, kernel = rref(M)
    out = []
    for vec in kernel:
        out.append({k: c for k, c in zip(src, vec) if c})
    return out


def defect0_cocycles(m, k, parity, forest_only=True):
    """Basis of the defect-zero cocycles of order ``k``."""
    M, src, _ = LD_differential_matrix(m, k, 0, parity, forest_only)
    return _kernel_combos(M, src)


# ----------------------------------------------------------------------- STU


@dataclass(frozen=True)
class STURow:
    """One STU instance: a defect-one diagram with a bivalent segment
    vertex, and the signed keys of its three defect-zero resolutions."""
    site: tuple
    S: tuple
    T: tuple
    U: tuple
    signs: tuple


def _bivalent_sites(d):
    vals = d.valences()
    return [v for v in d.seg_vertices if vals[v] == 2]


def _resolve(d, v):
    """The S, T and U diagrams whose contraction yields ``d`` at ``v``."""
    (e1, a), (e2, b) = [(k, (y if x == v else x)) for k, (x, y) in enumerate(d.edges)
                        if v in (x, y)]
    i, p = d.strand_of()[v]
    new = d.nverts
    rest = tuple(e for k, e in enumerate(d.edges) if k not in (e1, e2))
    # S: v keeps one edge to a new free vertex joined to a and b
    S = LinkDiagram(d.m, d.strands, new + 1, rest + ((v, new), (new, a), (new, b)))

    def split(first, second):
        strands = list(d.strands)
        s = list(strands[i])
        s[p:p + 1] = [v, new]
        strands[i] = tuple(s)
        return LinkDiagram(d.m, tuple(strands), new + 1, rest + ((v, first), (new, second)))

    return S, split(a, b), split(b, a)


def stu_rows(m, k, parity, forest_only=False):
    """STU rows for order ``k``; signs read off the differential."""
    parity = Parity.parse(parity)
    rows = []
    for key in _enumerate_LD(m, k, 1, parity, False, False):
        d = link_from_key(key)
        vals = d.valences()
        segs = set(d.seg_vertices)
        if any(vals[v] > (2 if v in segs else 3) for v in range(d.nverts)):
            continue
        for v in _bivalent_sites(d):
            keys, signs = [], []
            for g in _resolve(d, v):
                sk = _signed(g, parity)
                if sk is None:
                    keys.append(None)
                    signs.append(0)
                    continue
                c = differential_LD({sk.key: Fraction(1)}, parity).get(key, 0)
                keys.append(sk.key)
                signs.append(c)
            rows.append(STURow(site=(key, v), S=keys[0], T=keys[1], U=keys[2],
                               signs=tuple(signs)))
    return rows


def stu_pair_check(x, row):
    """Signed sum of the coefficients of ``x`` on the row's three diagrams."""
    total = Fraction(0)
    seen = set()
    for key, sign in zip((row.S, row.T, row.U), row.signs):
        if key is None or key in seen:
            continue
        seen.add(key)
        total += x.get(key, 0) * sign
    return total


def stu_kernel(m, k, parity, forest_only=True):
    """Kernel of the STU rows over the defect-zero basis at order ``k``."""
    parity = Parity.parse(parity)
    src = _enumerate_LD(m, k, 0, parity, forest_only, False)
    index = {key: j for j, key in enumerate(src)}
    rows = stu_rows(m, k, parity)
    M = SparseMatrix(len(rows), len(src))
    for r, row in enumerate(rows):
        seen = set()
        for key, sign in zip((row.S, row.T, row.U), row.signs):
            if key is None or key in seen or key not in index:
                continue
            seen.add(key)
            M[r, index[key]] = sign
    return _kernel_combos(M, src)


# ----------------------------------------------------------- leaf shuffles


def leaf_shuffles(d):
    """Diagrams obtained by permuting each component's own leaves along
    every strand (the other components' positions stay fixed)."""
    comp_of = {}
    for ci, comp in enumerate(d.components()):
        for v in comp:
            comp_of[v] = ci
    per_strand = []
    for s in d.strands:
        groups = {}
        for p, v in enumerate(s):
            groups.setdefault(comp_of[v], []).append(p)
        per_strand.append(groups)

    def strand_options(s, groups):
        opts = [list(s)]
        for ci, places in groups.items():
            new = []
            for base in opts:
                verts = [base[p] for p in places]
                for perm in permutations(verts):
                    b = list(base)
                    for p, v in zip(places, perm):
                        b[p] = v
                    new.append(b)
            opts = new
        return [tuple(o) for o in opts]

    choices = [strand_options(s, g) for s, g in zip(d.strands, per_strand)]

    def rec(i, acc):
        if i == len(choices):
            yield LinkDiagram(d.m, tuple(acc), d.nverts, d.edges)
            return
        for o in choices[i]:
            yield from rec(i + 1, acc + [o])

    yield from rec(0, [])


def check_leaf_shuffles(x, parity):
    """True when every leaf shuffle of a forest term has the same |coefficient|."""
    parity = Parity.parse(parity)
    for key, c in x.items():
        d = link_from_key(key)
        if not _forest(d):
            continue
        for g in leaf_shuffles(d):
            sk = _signed(g, parity)
            if sk is None:
                continue
            if abs(x.get(sk.key, 0)) != abs(c):
                return False
    return True
