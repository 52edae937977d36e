"""Diagram data model, orientation signs and canonical forms.

Two species of diagram live here.

``Diagram`` (braid species): ``m`` segment vertices ``0..m-1`` and free
vertices ``m..m+nfree-1``.  Orientation data is carried implicitly by the
stored order:

* odd parity: free vertices are ordered by index (segment vertices are
  fixed in front) and each edge ``(u, v)`` points from ``u`` to ``v``;
* even parity: edges are ordered as stored.

``LinkDiagram`` (link species): vertices ``0..nverts-1``; ``strands[i]``
lists the segment vertices on strand ``i`` in strand order, every other
vertex is free.  Orientation:

* odd type: all vertices ordered by id, edges directed as stored;
* even type: one joint order of the odd objects, namely segment vertices
  by id followed by edges as stored.

Canonical representatives have sorted edges pointing from the lower to the
higher label, so a canonical key plus a sign identifies a signed basis
element.  The parity passed to link functions is the parity of the ambient
dimension of the link, i.e. one more than that of the braid side.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product

from .errors import (DuplicateSegmentLabel, FreeValenceTooLow,
                     MalformedOrientation, NotATree, SegmentValenceZero,
                     SelfLoop)


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, n):
        return cls.EVEN if n % 2 == 0 else cls.ODD

    @classmethod
    def parse(cls, value):
        if isinstance(value, Parity):
            return value
        if isinstance(value, int):
            return cls.of(value)
        try:
            return cls(str(value).lower())
        except ValueError:
            raise MalformedOrientation(f"unknown parity {value!r}") from None

    def flip(self):
        return Parity.ODD if self is Parity.EVEN else Parity.EVEN

    @property
    def sign(self):
        """(-1)^n for a dimension of this parity."""
        return 1 if self is Parity.EVEN else -1


def perm_sign(seq):
    """Sign of the permutation that sorts ``seq`` (distinct items)."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    seen = [False] * len(seq)
    sign = 1
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class SignedKey:
    key: tuple
    sign: int


def key_bytes(key):
    """Deterministic byte encoding of a canonical key (used for ordering)."""
    return repr(key).encode()


# ---------------------------------------------------------------- braid side


@dataclass(frozen=True)
class Diagram:
    m: int
    nfree: int
    edges: tuple

    @property
    def nverts(self):
        return self.m + self.nfree

    def is_free(self, v):
        return v >= self.m

    def valences(self):
        val = [0] * self.nverts
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return val

    def chords(self):
        return [e for e in self.edges if e[0] < self.m and e[1] < self.m]

    def check(self):
        if self.m < 1:
            raise MalformedOrientation("m must be at least 1")
        for u, v in self.edges:
            if not (0 <= u < self.nverts and 0 <= v < self.nverts):
                raise MalformedOrientation(f"edge {(u, v)} out of range")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {vertex_name(self, u)}")
        val = self.valences()
        for f in range(self.m, self.nverts):
            if val[f] < 3:
                raise FreeValenceTooLow(
                    f"free vertex {vertex_name(self, f)} has valence {val[f]}",
                    vertex=vertex_name(self, f), valence=val[f])
        return self

    def has_vacuum_component(self):
        """True when some component contains no segment vertex."""
        comp = _components(self.nverts, self.edges)
        return any(all(v >= self.m for v in c) for c in comp)


def empty_diagram(m):
    return Diagram(m, 0, ())


def vertex_name(d, v):
    return f"s{v + 1}" if v < d.m else f"f{v - d.m + 1}"


def chord(i, j, m):
    """Single chord between 1-based segment labels ``i`` and ``j`` (i -> j)."""
    return Diagram(m, 0, ((i - 1, j - 1),))


def tripod(m=3, legs=(1, 2, 3)):
    return Diagram(m, 1, tuple((m, s - 1) for s in legs))


def _components(nverts, edges):
    parent = list(range(nverts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in range(nverts):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def _refine_classes(free, adj, fixed_label):
    """Partition free vertices by an iterated neighbourhood invariant."""
    color = {v: (len(adj[v]), tuple(sorted(fixed_label[u] for u in adj[v] if u in fixed_label)))
             for v in free}
    for _ in range(3):
        new = {v: (color[v], tuple(sorted(repr(color[u]) for u in adj[v] if u in color)))
               for v in free}
        remap = {c: repr(c) for c in set(new.values())}
        color = {v: remap[new[v]] for v in free}
    classes = {}
    for v in free:
        classes.setdefault(color[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def _labelings(classes, start):
    """Yield dicts free-vertex -> new label, block by block."""
    blocks = []
    pos = start
    for cls in classes:
        blocks.append((cls, list(range(pos, pos + len(cls)))))
        pos += len(cls)
    perms = [list(permutations(cls)) for cls, _ in blocks]
    for choice in product(*perms):
        lab = {}
        for (cls, labels), perm in zip(blocks, choice):
            for v, l in zip(perm, labels):
                lab[v] = l
        yield lab


def _best_labelings(nverts, fixed_label, free, edges):
    """Minimise the sorted relabelled edge list over admissible labelings.

    ``fixed_label`` maps non-permutable vertices to their labels.  Returns
    the minimal edge tuple and all labelings attaining it.
    """
    adj = {v: [] for v in range(nverts)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    classes = _refine_classes(free, adj, fixed_label)
    best, winners = None, []
    for lab in _labelings(classes, len(fixed_label)):
        full = dict(fixed_label)
        full.update(lab)
        rel = tuple(sorted(tuple(sorted((full[u], full[v]))) for u, v in edges))
        if best is None or rel < best:
            best, winners = rel, [full]
        elif rel == best:
            winners.append(full)
    return best, winners


def _has_multi_edge(edges):
    seen = set()
    for u, v in edges:
        e = (min(u, v), max(u, v))
        if e in seen:
            return True
        seen.add(e)
    return False


def _braid_sign(d, full, parity):
    if parity is Parity.ODD:
        s = perm_sign([full[f] for f in range(d.m, d.nverts)])
        for u, v in d.edges:
            if full[u] > full[v]:
                s = -s
        return s
    rel = [tuple(sorted((full[u], full[v]))) for u, v in d.edges]
    return perm_sign(rel)


def canonicalize(d, parity):
    """Signed canonical key of an oriented braid diagram."""
    parity = Parity.parse(parity)
    for u, v in d.edges:
        if u == v:
            raise SelfLoop("self-loop")
    fixed = {s: s for s in range(d.m)}
    free = list(range(d.m, d.nverts))
    best, winners = _best_labelings(d.nverts, fixed, free, d.edges)
    key = ("braid", d.m, d.nfree, best)
    if _has_multi_edge(d.edges):
        return SignedKey(key, 0)
    signs = {_braid_sign(d, w, parity) for w in winners}
    if len(signs) > 1:
        return SignedKey(key, 0)
    return SignedKey(key, signs.pop())


def diagram_from_key(key):
    tag, m, nfree, edges = key
    if tag != "braid":
        raise ValueError("not a braid key")
    return Diagram(m, nfree, edges)


def is_tree_like(nverts, edges, vertices=None):
    """Edges form one connected acyclic graph on the touched vertices."""
    touched = sorted({x for e in edges for x in e}) if vertices is None else sorted(vertices)
    if not edges:
        return len(touched) <= 1
    if len(edges) != len(touched) - 1:
        return False
    comps = [c for c in _components(nverts, edges) if any(v in touched for v in c)]
    return len(comps) == 1


# ----------------------------------------------------------------- link side


@dataclass(frozen=True)
class LinkDiagram:
    m: int
    strands: tuple
    nverts: int
    edges: tuple

    @property
    def seg_vertices(self):
        return [v for s in self.strands for v in s]

    @property
    def free_vertices(self):
        segs = set(self.seg_vertices)
        return [v for v in range(self.nverts) if v not in segs]

    @property
    def nseg(self):
        return sum(len(s) for s in self.strands)

    @property
    def nfree(self):
        return self.nverts - self.nseg

    def strand_of(self):
        """Map segment vertex -> (strand, position)."""
        return {v: (i, p) for i, s in enumerate(self.strands) for p, v in enumerate(s)}

    def valences(self):
        val = [0] * self.nverts
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return val

    def is_chord(self, e):
        pos = self.strand_of()
        return e[0] in pos and e[1] in pos

    def check(self):
        if len(self.strands) != self.m:
            raise MalformedOrientation("need one vertex list per strand")
        segs = self.seg_vertices
        if len(set(segs)) != len(segs):
            raise DuplicateSegmentLabel("a segment vertex appears twice")
        for v in segs:
            if not 0 <= v < self.nverts:
                raise MalformedOrientation(f"vertex {v} out of range")
        for u, v in self.edges:
            if not (0 <= u < self.nverts and 0 <= v < self.nverts):
                raise MalformedOrientation(f"edge {(u, v)} out of range")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
        val = self.valences()
        segset = set(segs)
        for v in range(self.nverts):
            if v in segset and val[v] < 1:
                raise SegmentValenceZero(f"segment vertex {v} has no edge", vertex=v)
            if v not in segset and val[v] < 3:
                raise FreeValenceTooLow(f"free vertex {v} has valence {val[v]}",
                                        vertex=v, valence=val[v])
        return self

    def components(self):
        return _components(self.nverts, self.edges)

    def has_vacuum_component(self):
        segset = set(self.seg_vertices)
        return any(not (set(c) & segset) for c in self.components())


def _link_sign(d, full, parity):
    if parity is Parity.ODD:
        s = perm_sign([full[v] for v in range(d.nverts)])
        for u, v in d.edges:
            if full[u] > full[v]:
                s = -s
        return s
    segs = sorted(d.seg_vertices)
    s = perm_sign([full[v] for v in segs])
    rel = [tuple(sorted((full[u], full[v]))) for u, v in d.edges]
    return s * perm_sign(rel)


def canonicalize_link(d, parity):
    """Signed canonical key of an oriented link diagram."""
    parity = Parity.parse(parity)
    for u, v in d.edges:
        if u == v:
            raise SelfLoop("self-loop")
    fixed = {}
    for s in d.strands:
        for v in s:
            fixed[v] = len(fixed)
    free = d.free_vertices
    best, winners = _best_labelings(d.nverts, fixed, free, d.edges)
    key = ("link", d.m, tuple(len(s) for s in d.strands), d.nverts - len(fixed), best)
    if _has_multi_edge(d.edges):
        return SignedKey(key, 0)
    signs = {_link_sign(d, w, parity) for w in winners}
    if len(signs) > 1:
        return SignedKey(key, 0)
    return SignedKey(key, signs.pop())


def link_from_key(key):
    tag, m, lengths, nfree, edges = key
    if tag != "link":
        raise ValueError("not a link key")
    strands, pos = [], 0
    for k in lengths:
        strands.append(tuple(range(pos, pos + k)))
        pos += k
    return LinkDiagram(m, tuple(strands), pos + nfree, edges)


def components_and_grafts(d):
    """Components (vertex lists) and grafts (edge-index lists) of a link diagram.

    Grafts are the components left after every segment vertex is replaced by
    one univalent copy per incident edge.
    """
    comps = [c for c in d.components()]
    segset = set(d.seg_vertices)
    # blown-up graph: free vertices keep their id, each segment incidence is new
    nodes = d.nverts + 2 * len(d.edges)
    blown = []
    for k, (u, v) in enumerate(d.edges):
        a = d.nverts + 2 * k if u in segset else u
        b = d.nverts + 2 * k + 1 if v in segset else v
        blown.append((a, b))
    grafts = {}
    for c in _components(nodes, blown):
        cs = set(c)
        idx = [k for k, (a, b) in enumerate(blown) if a in cs]
        if idx:
            grafts[min(idx)] = idx
    return comps, [grafts[k] for k in sorted(grafts)]


# ------------------------------------------------- odd <-> even conversion


def _tree_bfs(vertices, edges, root):
    """Breadth-first order from ``root``; returns (vertex order, edge order,
    parent-edge map) with neighbours visited in increasing id order."""
    adj = {v: [] for v in vertices}
    for k, (u, v) in enumerate(edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    order, eorder, seen = [root], [], {root}
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for y, k in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                order.append(y)
                eorder.append(k)
    return order, eorder


def _check_tree(vertices, edges):
    vertices = list(vertices)
    if len(edges) != len(vertices) - 1 or not is_tree_like(
            max(vertices) + 1 if vertices else 0, edges, vertices):
        raise NotATree("the edges contain a cycle or are disconnected")


def odd_to_even(vertex_order, edges):
    """Convert an odd-type orientation of a tree to an even-type one.

    ``vertex_order`` lists the tree's vertices in orientation order and
    ``edges`` are directed pairs.  Returns ``(edge_order, sign)``: the even
    orientation lists edge indices, and the odd orientation equals ``sign``
    times the even one under the flow-preserving correspondence.
    """
    _check_tree(vertex_order, edges)
    if not edges:
        return [], 1
    root = vertex_order[0]
    order, eorder = _tree_bfs(vertex_order, edges, root)
    label = {v: i for i, v in enumerate(order)}
    # compare the given labelling with the flow-preserving one
    sign = perm_sign([label[v] for v in vertex_order])
    for u, v in edges:
        if label[u] > label[v]:
            sign = -sign
    # edge i of the even orientation points to vertex i+1 (0-based: order[i+1])
    by_target = {}
    for k, (u, v) in enumerate(edges):
        by_target[max(label[u], label[v])] = k
    return [by_target[i] for i in range(1, len(order))], sign


def even_to_odd(edge_order, edges):
    """Inverse of :func:`odd_to_even`.

    ``edges`` are undirected pairs and ``edge_order`` lists their indices
    in orientation order.  Returns ``(vertex_order, directed_edges, sign)``
    where ``directed_edges`` is aligned with ``edges``.
    """
    vertices = sorted({x for e in edges for x in e})
    _check_tree(vertices, edges)
    if not edges:
        return vertices, [], 1
    first = edges[edge_order[0]]
    root = min(first)
    order, eorder = _tree_bfs(vertices, edges, root)
    # flow-preserving edge order (BFS) versus the given one
    rank = {k: i for i, k in enumerate(edge_order)}
    sign = perm_sign([rank[k] for k in eorder])
    label = {v: i for i, v in enumerate(order)}
    directed = []
    for u, v in edges:
        directed.append((u, v) if label[u] < label[v] else (v, u))
    return order, directed, sign


def segments_first(order, seg_rank):
    """Reorder a vertex order so segment vertices come first by ``seg_rank``.

    Returns ``(new_order, sign)`` with ``sign`` the parity of the move.
    """
    segs = sorted((v for v in order if v in seg_rank), key=seg_rank.get)
    target = segs + [v for v in order if v not in seg_rank]
    pos = {v: i for i, v in enumerate(target)}
    return target, perm_sign([pos[v] for v in order])


def orientation_convert(d, to):
    """Apply the tree correspondence to a whole oriented diagram.

    ``to`` is the target type: ``Parity.EVEN`` reads ``d`` as odd type and
    returns an even-type diagram, ``Parity.ODD`` does the reverse.  Returns
    ``(diagram, sign)``; the returned diagram stores the converted
    orientation.  Segment vertices are moved to the front of the vertex
    order (in strand order) before the tree correspondence is applied.
    """
    to = Parity.parse(to)
    if isinstance(d, Diagram):
        if to is Parity.EVEN:
            vorder = sorted({x for e in d.edges for x in e})
            eorder, sign = odd_to_even(vorder, list(d.edges))
            return Diagram(d.m, d.nfree, tuple(d.edges[k] for k in eorder)), sign
        vorder, directed, sign = even_to_odd(list(range(len(d.edges))), list(d.edges))
        vorder, s2 = segments_first(vorder, {v: v for v in range(d.m)})
        relabel = {v: v for v in range(d.m)}
        frees = [v for v in vorder if v >= d.m]
        for i, f in enumerate(frees):
            relabel[f] = d.m + i
        edges = tuple((relabel[u], relabel[v]) for u, v in directed)
        return Diagram(d.m, d.nfree, edges), sign * s2
    if isinstance(d, LinkDiagram):
        seg_rank = {v: i for i, v in enumerate(d.seg_vertices)}
        if to is Parity.EVEN:
            vorder, s1 = segments_first(list(range(d.nverts)), seg_rank)
            eorder, s2 = odd_to_even(vorder, list(d.edges))
            relabel = {v: i for i, v in enumerate(vorder)}
            strands = tuple(tuple(relabel[v] for v in s) for s in d.strands)
            edges = tuple((relabel[d.edges[k][0]], relabel[d.edges[k][1]]) for k in eorder)
            return LinkDiagram(d.m, strands, d.nverts, edges), s1 * s2
        s1 = perm_sign([seg_rank[v] for v in sorted(seg_rank)])
        vorder, directed, s2 = even_to_odd(list(range(len(d.edges))), list(d.edges))
        vorder, s3 = segments_first(vorder, seg_rank)
        relabel = {v: i for i, v in enumerate(vorder)}
        strands = tuple(tuple(relabel[v] for v in s) for s in d.strands)
        edges = tuple((relabel[u], relabel[v]) for u, v in directed)
        return LinkDiagram(d.m, strands, d.nverts, edges), s1 * s2 * s3
    raise TypeError(type(d))


# --------------------------------------------------------------- interchange


def _parse_name(name):
    if not isinstance(name, str) or not name:
        raise MalformedOrientation(f"bad vertex name {name!r}")
    return name


def validate_diagram(raw):
    """Build a checked :class:`Diagram` from its JSON description."""
    if raw.get("species", "braid") != "braid":
        raise MalformedOrientation("species must be 'braid'")
    try:
        m = int(raw["m"])
        nfree = int(raw.get("free", 0))
        edges_raw = raw.get("edges", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedOrientation(f"missing or bad field: {exc}") from None
    seg_labels = raw.get("segment_labels")
    if seg_labels is not None and len(set(seg_labels)) != len(seg_labels):
        raise DuplicateSegmentLabel("segment labels must be distinct")
    index = {f"s{i + 1}": i for i in range(m)}
    index.update({f"f{j + 1}": m + j for j in range(nfree)})
    edges = []
    for e in edges_raw:
        if len(e) != 2:
            raise MalformedOrientation(f"edge {e!r} must have two ends")
        try:
            u, v = index[_parse_name(e[0])], index[_parse_name(e[1])]
        except KeyError as exc:
            raise MalformedOrientation(f"unknown vertex {exc}") from None
        edges.append((u, v))
    orient = raw.get("orientation", {"type": "odd"})
    otype = orient.get("type")
    if otype == "odd":
        order = orient.get("vertex_order")
        if order is not None:
            if sorted(order) != sorted(f"f{j + 1}" for j in range(nfree)):
                raise MalformedOrientation("vertex_order must list every free vertex once")
            # position in the order becomes the new free index
            relabel = {v: v for v in range(m)}
            for pos, name in enumerate(order):
                relabel[index[name]] = m + pos
            edges = [(relabel[u], relabel[v]) for u, v in edges]
    elif otype == "even":
        eorder = orient.get("edge_order")
        if eorder is not None:
            if sorted(eorder) != list(range(len(edges))):
                raise MalformedOrientation("edge_order must be a permutation of edge indices")
            edges = [edges[k] for k in eorder]
    else:
        raise MalformedOrientation("orientation type must be 'odd' or 'even'")
    return Diagram(m, nfree, tuple(edges)).check()


def validate_link_diagram(raw):
    """Build a checked :class:`LinkDiagram` from its JSON description."""
    if raw.get("species") != "link":
        raise MalformedOrientation("species must be 'link'")
    try:
        m = int(raw["m"])
        nfree = int(raw.get("free", 0))
        strands_raw = raw["strands"]
        edges_raw = raw.get("edges", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedOrientation(f"missing or bad field: {exc}") from None
    if len(strands_raw) != m:
        raise MalformedOrientation("need one vertex list per strand")
    seg_names = [_parse_name(x) for s in strands_raw for x in s]
    if len(set(seg_names)) != len(seg_names):
        raise DuplicateSegmentLabel("a segment vertex name is repeated")
    free_names = [f"f{j + 1}" for j in range(nfree)]
    if set(free_names) & set(seg_names):
        raise DuplicateSegmentLabel("free and segment vertex names clash")
    orient = raw.get("orientation", {"type": "odd"})
    otype = orient.get("type")
    all_names = seg_names + free_names
    if otype == "odd" and orient.get("vertex_order") is not None:
        order = orient["vertex_order"]
        if sorted(order) != sorted(all_names):
            raise MalformedOrientation("vertex_order must list every vertex once")
        names = list(order)
    elif otype == "even" and orient.get("segment_order") is not None:
        sorder = orient["segment_order"]
        if sorted(sorder) != sorted(seg_names):
            raise MalformedOrientation("segment_order must list every segment vertex once")
        names = list(sorder) + free_names
    elif otype in ("odd", "even"):
        names = all_names
    else:
        raise MalformedOrientation("orientation type must be 'odd' or 'even'")
    index = {x: i for i, x in enumerate(names)}
    strands = tuple(tuple(index[x] for x in s) for s in strands_raw)
    edges = []
    for e in edges_raw:
        if len(e) != 2:
            raise MalformedOrientation(f"edge {e!r} must have two ends")
        try:
            edges.append((index[e[0]], index[e[1]]))
        except KeyError as exc:
            raise MalformedOrientation(f"unknown vertex {exc}") from None
    if otype == "even" and orient.get("edge_order") is not None:
        eorder = orient["edge_order"]
        if sorted(eorder) != list(range(len(edges))):
            raise MalformedOrientation("edge_order must be a permutation of edge indices")
        edges = [edges[k] for k in eorder]
    return LinkDiagram(m, strands, len(names), tuple(edges)).check()


def diagram_to_json(d, parity):
    parity = Parity.parse(parity)
    edges = [[vertex_name(d, u), vertex_name(d, v)] for u, v in d.edges]
    if parity is Parity.ODD:
        orient = {"type": "odd", "vertex_order": [f"f{j + 1}" for j in range(d.nfree)]}
    else:
        orient = {"type": "even", "edge_order": list(range(len(d.edges)))}
    return {"species": "braid", "m": d.m, "free": d.nfree, "edges": edges,
            "orientation": orient}


def link_to_json(d, parity):
    parity = Parity.parse(parity)
    segs = d.strand_of()
    frees = d.free_vertices
    name = {}
    for v, (i, p) in segs.items():
        name[v] = f"v{i + 1}.{p + 1}"
    for j, f in enumerate(frees):
        name[f] = f"f{j + 1}"
    strands = [[name[v] for v in s] for s in d.strands]
    edges = [[name[u], name[v]] for u, v in d.edges]
    if parity is Parity.ODD:
        orient = {"type": "odd", "vertex_order": [name[v] for v in range(d.nverts)]}
    else:
        orient = {"type": "even", "segment_order": [name[v] for v in sorted(segs)],
                  "edge_order": list(range(len(d.edges)))}
    # free names must be f1..fk in id order for round-tripping
    return {"species": "link", "m": d.m, "free": len(frees), "strands": strands,
            "edges": edges, "orientation": orient}


def load_any(raw):
    if raw.get("species") == "link":
        return validate_link_diagram(raw)
    return validate_diagram(raw)


def to_dot(d):
    """Graphviz rendering: segment vertices as boxes grouped per strand."""
    lines = ["graph diagram {", "  rankdir=LR;"]
    if isinstance(d, Diagram):
        lines.append("  subgraph cluster_segments { label=\"segments\";")
        for s in range(d.m):
            lines.append(f"    s{s + 1} [shape=box];")
        lines.append("  }")
        for f in range(d.m, d.nverts):
            lines.append(f"  {vertex_name(d, f)} [shape=circle];")
        for u, v in d.edges:
            lines.append(f"  {vertex_name(d, u)} -- {vertex_name(d, v)};")
    else:
        name = {}
        for i, s in enumerate(d.strands):
            lines.append(f"  subgraph cluster_strand{i + 1} {{ label=\"strand {i + 1}\";")
            for p, v in enumerate(s):
                name[v] = f"v{i + 1}_{p + 1}"
                lines.append(f"    {name[v]} [shape=box];")
            for a, b in zip(s, s[1:]):
                lines.append(f"    {name[a]} -- {name[b]} [style=bold];")
            lines.append("  }")
        for j, f in enumerate(d.free_vertices):
            name[f] = f"f{j + 1}"
            lines.append(f"  {name[f]} [shape=circle];")
        for u, v in d.edges:
            lines.append(f"  {name[u]} -- {name[v]};")
    lines.append("}")
    return "\n".join(lines)
