"""The map from link diagrams to the bar complex of braid diagrams.

``parity`` arguments are link-side orientation parities (the parity of
``n + 1``); the braid side uses the flipped parity.

For a good diagram and one admissible order of its components, the
orientation is rewritten component by component (segment vertices first,
in strand order), each component is converted between the odd and even
orientation types by the tree correspondence, its arcs are collapsed, and
the collapsed components form one bar word.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .braid import bar_differential, bar_grading, bar_shuffle, enumerate_bar
from .diagram import (Diagram, Parity, canonicalize, key_bytes,
                      link_from_key, odd_to_even, even_to_odd, perm_sign,
                      segments_first)
from .lincomb import add_into, add_term
from .link import (LinkDiagram, _enumerate_LD, defect0_cocycles, grading_LD,
                   link_basis_element, shuffle_product_LD)
from .linalg import SparseMatrix, rank


@dataclass(frozen=True)
class ComponentPoset:
    components: tuple
    relations: frozenset


@dataclass(frozen=True)
class OrderViolating:
    cycle: tuple


def _component_index(d):
    comps = tuple(tuple(c) for c in d.components())
    where = {v: i for i, c in enumerate(comps) for v in c}
    return comps, where


def component_order_check(d):
    """The precedence relation between components, or a witness cycle."""
    d = link_from_key(d) if isinstance(d, tuple) else d
    comps, where = _component_index(d)
    rel = set()
    for s in d.strands:
        for i, a in enumerate(s):
            for b in s[i + 1:]:
                if where[a] != where[b]:
                    rel.add((where[a], where[b]))
    succ = {i: sorted(j for a, j in rel if a == i) for i in range(len(comps))}
    state, stack = {}, []

    def dfs(u):
        state[u] = 1
        stack.append(u)
        for v in succ[u]:
            if state.get(v) == 1:
                return tuple(stack[stack.index(v):])
            if v not in state:
                found = dfs(v)
                if found:
                    return found
        stack.pop()
        state[u] = 2
        return None

    for u in range(len(comps)):
        if u not in state:
            cyc = dfs(u)
            if cyc:
                return OrderViolating(cyc)
    return ComponentPoset(comps, frozenset(rel))


def linear_extensions(poset, sort_key=None):
    n = len(poset.components)
    preds = {i: {a for a, b in poset.relations if b == i} for i in range(n)}
    sort_key = sort_key or (lambda i: i)

    def rec(done, acc):
        if len(acc) == n:
            yield tuple(acc)
            return
        for i in sorted((i for i in range(n) if i not in done and preds[i] <= done),
                        key=sort_key):
            yield from rec(done | {i}, acc + [i])

    yield from rec(frozenset(), [])


def _is_tree(vertices, edges):
    return len(edges) == len(vertices) - 1


def _collapse(d, comp_vertices, objs, parity):
    """Collapse one component whose orientation objects are listed in ``objs``.

    For odd link type ``objs`` is the vertex order; for even link type it is
    the component's edge order (segment vertices implicitly first, in strand
    order).  Returns ``(sign, coeff, Diagram)`` or None.
    """
    pos = d.strand_of()
    cs = set(comp_vertices)
    eidx = [k for k, (u, v) in enumerate(d.edges) if u in cs]
    edges = [d.edges[k] for k in eidx]
    if not _is_tree(comp_vertices, edges):
        return None
    coeff = Fraction(1)
    for i in range(d.m):
        coeff /= factorial(sum(1 for v in comp_vertices if v in pos and pos[v][0] == i))

    def target(v):
        return pos[v][0] if v in pos else None

    for u, v in edges:
        if target(u) is not None and target(u) == target(v):
            return None
    if parity is Parity.ODD:
        eorder, sign = odd_to_even(list(objs), edges)
        frees = [v for v in objs if v not in pos]
        lab = {v: d.m + i for i, v in enumerate(frees)}
        lab.update({v: pos[v][0] for v in comp_vertices if v in pos})
        out = tuple((lab[edges[k][0]], lab[edges[k][1]]) for k in eorder)
        return sign, coeff, Diagram(d.m, len(frees), out)
    local = {k: i for i, k in enumerate(eidx)}
    order = [local[k] for k in objs]
    vorder, directed, s1 = even_to_odd(order, edges)
    seg_rank = {v: pos[v] for v in comp_vertices if v in pos}
    vorder, s2 = segments_first(vorder, seg_rank)
    frees = [v for v in vorder if v not in pos]
    lab = {v: d.m + i for i, v in enumerate(frees)}
    lab.update({v: pos[v][0] for v in comp_vertices if v in pos})
    out = tuple((lab[u], lab[v]) for u, v in directed)
    return s1 * s2, coeff, Diagram(d.m, len(frees), out)


def phi_connected(d, parity):
    """Image of a one-component diagram: ``(coeff, SignedKey)`` or None."""
    parity = Parity.parse(parity)
    d = link_from_key(d) if isinstance(d, tuple) else d
    comps = d.components()
    if len(comps) != 1:
        raise ValueError("phi_connected needs a connected diagram")
    res = _phi_terms(d, parity)
    if not res:
        return None
    ((word, c),) = res.items()
    return c, word[0]


def _relabel(d, comps, ext, parity):
    """Sign of regrouping the orientation objects component by component,
    plus the per-component object lists."""
    pos = d.strand_of()
    per = []
    if parity is Parity.ODD:
        order = []
        for ci in ext:
            c = comps[ci]
            segs = sorted((v for v in c if v in pos), key=pos.get)
            frees = sorted(v for v in c if v not in pos)
            per.append(segs + frees)
            order += segs + frees
        return perm_sign(order), per
    segs_all = sorted(pos)
    objs = [("s", v) for v in segs_all] + [("e", k) for k in range(len(d.edges))]
    idx = {o: i for i, o in enumerate(objs)}
    target = []
    for ci in ext:
        cs = set(comps[ci])
        segs = sorted((v for v in cs if v in pos), key=pos.get)
        eds = [k for k, (u, v) in enumerate(d.edges) if u in cs]
        per.append(eds)
        target += [("s", v) for v in segs] + [("e", k) for k in eds]
    return perm_sign([idx[o] for o in target]), per


def _component_factor(d, comp, parity):
    """Per-component normalization that makes the map commute with the
    differentials under this package's sign conventions: ``(-1)^V_free``
    for odd link type, ``(-1)^(V_free choose 2)`` for even link type."""
    pos = d.strand_of()
    vf = sum(1 for v in comp if v not in pos)
    e = vf if parity is Parity.ODD else vf * (vf - 1) // 2
    return -1 if e % 2 else 1


def _phi_terms(d, parity):
    braid_parity = parity.flip()
    check = component_order_check(d)
    if isinstance(check, OrderViolating):
        return {}
    comps = check.components
    out = {}
    for ext in linear_extensions(check):
        sign, per = _relabel(d, comps, ext, parity)
        coeff = Fraction(sign)
        word = []
        for ci, objs in zip(ext, per):
            res = _collapse(d, comps[ci], objs, parity)
            if res is None:
                return {}
            s, c, g = res
            s *= _component_factor(d, comps[ci], parity)
            sk = canonicalize(g, braid_parity)
            if not sk.sign:
                return {}
            coeff *= s * c * sk.sign
            word.append(sk.key)
        add_term(out, tuple(word), coeff)
    return out


def phi(x, parity):
    """Apply the map to a link diagram or a combination of link keys."""
    parity = Parity.parse(parity)
    if isinstance(x, LinkDiagram):
        x = link_basis_element(x, parity)
    out = {}
    for key, c in x.items():
        add_into(out, _phi_terms(link_from_key(key), parity), c)
    return out


# -------------------------------------------------------------- harnesses


@dataclass
class Report:
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)

    def to_dict(self):
        return {"passed": self.passed, "checked": self.checked,
                "failures": [repr(f) for f in self.failures]}


def verify_phi_chain_map(m, k, parity, cocycles=None):
    """Check that phi sends defect-zero forest cocycles to bar cocycles."""
    parity = Parity.parse(parity)
    if cocycles is None:
        cocycles = defect0_cocycles(m, k, parity, forest_only=True)
    rep = Report(True)
    for g in cocycles:
        rep.checked += 1
        dphi = bar_differential(phi(g, parity), parity.flip())
        if dphi:
            rep.passed = False
            rep.failures.append({"cocycle": g, "witness": dphi})
    return rep


def verify_phi_gradings(m, r, parity, n=None):
    """phi preserves order, defect and total degree on every diagram of order r."""
    parity = Parity.parse(parity)
    if n is None:
        n = 2 if parity is Parity.ODD else 3
    rep = Report(True)
    for s in range(0, 2 * r):
        for key in _enumerate_LD(m, r, s, parity, False, False):
            g = grading_LD(key, n)
            for word in phi({key: Fraction(1)}, parity):
                rep.checked += 1
                b = bar_grading(word, n)
                if (b.order, b.defect, b.total) != (g.order, g.defect, g.degree):
                    rep.passed = False
                    rep.failures.append({"diagram": key, "word": word})
    return rep


def verify_phi_multiplicative(samples, parity):
    """phi(a . b) == phi(a) * phi(b) on every pair drawn from ``samples``."""
    parity = Parity.parse(parity)
    rep = Report(True)
    for a in samples:
        for b in samples:
            rep.checked += 1
            lhs = phi(shuffle_product_LD({a: 1}, {b: 1}, parity), parity)
            rhs = bar_shuffle(phi({a: Fraction(1)}, parity), phi({b: Fraction(1)}, parity),
                              parity.flip())
            diff = dict(lhs)
            add_into(diff, rhs, -1)
            if diff:
                rep.passed = False
                rep.failures.append({"a": a, "b": b, "difference": diff})
    return rep


def image_in_cohomology_dim(m, k, parity):
    """dim of the span of phi(Z^{0,k}) in bar cohomology at (k, 0)."""
    parity = Parity.parse(parity)
    bp = parity.flip()
    cocycles = defect0_cocycles(m, k, parity, forest_only=True)
    images = [phi(g, parity) for g in cocycles]
    from .braid import _enumerate_bar, bar_differential
    target = _enumerate_bar(m, k, 0, bp, False)
    index = {w: i for i, w in enumerate(target)}
    boundaries = [bar_differential({w: Fraction(1)}, bp)
                  for w in _enumerate_bar(m, k, -1, bp, False)]

    def mat(cols):
        M = SparseMatrix(len(target), len(cols))
        for j, col in enumerate(cols):
            for w, c in col.items():
                M[index[w], j] = c
        return M

    return rank(mat(boundaries + images)) - rank(mat(boundaries))
