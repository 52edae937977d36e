"""Chen iterated integrals of chord forms on planar loops, plus an
independent expansion oracle.

The forms are ``omega_ij = d theta_ij / 2 pi`` with ``theta_ij`` the angle of
``z_j - z_i``.  Loops are piecewise linear in time.  On each linear piece the
angle is known in closed form; it is interpolated by Chebyshev series, the
iterated integrals of the polynomial pieces are done exactly (polynomial
products and antiderivatives), and pieces are glued with Chen's
concatenation rule.  Pieces are bisected until the interpolant is below the
local tolerance.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import chebyshev as C

from .braid import in_relation_kernel, pairs_of_word
from .diagram import Parity
from .errors import CollisionDetected, NonChordTerm, NotInKernel, ToleranceNotMet, UsageError
from .lincomb import add_term

# ------------------------------------------------------------- braid words

_LETTER = re.compile(r"^([Aa])(?:(\d)(\d)|(\d+)_(\d+))(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    m: int
    letters: tuple  # ((i, j, eps), ...)

    def __str__(self):
        return " ".join(f"{'A' if e > 0 else 'a'}{i}{j}" for i, j, e in self.letters)


def parse_braid(text, m=None):
    """Parse ``"A12 A23 a12 a23"``; lowercase letters are inverses.

    ``A1_12`` spells a two-digit index and ``A12^3`` a power.
    """
    letters = []
    for tok in text.replace(",", " ").split():
        mt = _LETTER.match(tok)
        if not mt:
            raise UsageError(f"bad braid letter {tok!r}", token=tok)
        i, j = (int(mt.group(2)), int(mt.group(3))) if mt.group(2) else (
            int(mt.group(4)), int(mt.group(5)))
        if not 1 <= i < j:
            raise UsageError(f"letter {tok!r} needs 1 <= i < j", token=tok)
        eps = 1 if mt.group(1) == "A" else -1
        power = int(mt.group(6)) if mt.group(6) else 1
        if power < 0:
            eps, power = -eps, -power
        letters += [(i, j, eps)] * power
    need = max([j for _, j, _ in letters], default=1)
    if m is None:
        m = need
    elif m < need:
        raise UsageError(f"braid uses strand {need} but m = {m}", m=m)
    return BraidWord(m, tuple(letters))


# ------------------------------------------------------------------- loops


@dataclass
class PLLoop:
    """Configurations ``points[t][k] = (x, y)`` on a time grid; linear in between."""
    m: int
    points: np.ndarray  # shape (N+1, m, 2)

    @property
    def nsegments(self):
        return len(self.points) - 1

    def margin(self):
        """Smallest pairwise distance over every linear piece."""
        best = math.inf
        P = self.points
        for t in range(self.nsegments):
            for i in range(self.m):
                for j in range(i + 1, self.m):
                    a = P[t, j] - P[t, i]
                    b = (P[t + 1, j] - P[t + 1, i]) - a
                    bb = float(b @ b)
                    s = 0.0 if bb == 0 else min(1.0, max(0.0, -float(a @ b) / bb))
                    best = min(best, float(np.hypot(*(a + s * b))))
        return best


def base_configuration(m):
    return np.array([[float(k), 0.0] for k in range(1, m + 1)])


def _letter_path(i, j, eps, samples, height):
    """Positions of point j while it makes one loop around point i.

    It rises to ``height``, travels above the points in between, circles
    point i once, and retraces its way back.
    """
    xi, xj = float(i), float(j)
    go = [(xj, 0.0), (xj, height), (xi, height)]
    circle = []
    for k in range(1, samples + 1):
        ang = math.pi / 2 + 2 * math.pi * k / samples
        circle.append((xi + height * math.cos(ang), height * math.sin(ang)))
    path = go + circle + [(xj, height), (xj, 0.0)]
    if eps < 0:
        path = path[::-1]
    return path


def braid_to_loop(word, samples_per_letter=32, height=0.4):
    """Concatenate one keyhole loop per letter into a closed PL loop."""
    if isinstance(word, str):
        word = parse_braid(word)
    if samples_per_letter < 8:
        raise UsageError("samples_per_letter must be at least 8")
    base = base_configuration(word.m)
    frames = [base.copy()]
    for i, j, eps in word.letters:
        for x, y in _letter_path(i, j, eps, samples_per_letter, height)[1:]:
            cfg = base.copy()
            cfg[j - 1] = (x, y)
            frames.append(cfg)
    loop = PLLoop(word.m, np.array(frames))
    if word.letters:
        mg = loop.margin()
        if mg <= 0.5 * height:
            raise CollisionDetected(f"loop margin {mg:.3g} too small", margin=mg)
    return loop


def loop_from_json(raw):
    """``[[[x, y], ...], ...]``: one configuration per time step."""
    try:
        pts = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise UsageError("a loop is a list of configurations of [x, y] points") from None
    if pts.ndim != 3 or pts.shape[2] != 2 or len(pts) < 1:
        raise UsageError(f"loop array has shape {pts.shape}, want (N+1, m, 2)")
    if not np.allclose(pts[0], pts[-1]):
        raise UsageError("loop is not closed")
    loop = PLLoop(pts.shape[1], pts)
    if loop.nsegments and loop.m > 1:
        mg = loop.margin()
        if mg <= 1e-9:
            raise CollisionDetected(f"points collide (margin {mg:.3g})", margin=mg)
    return loop


def loop_to_json(loop):
    return loop.points.tolist()


# -------------------------------------------------------- iterated integrals


def _angle_fn(a, b):
    """Swept angle s -> angle(a + s b) - angle(a) on [0, 1], in turns."""
    def f(s):
        r = a[None, :] + np.asarray(s)[:, None] * b[None, :]
        cross = a[0] * r[:, 1] - a[1] * r[:, 0]
        dot = a[0] * r[:, 0] + a[1] * r[:, 1]
        return np.arctan2(cross, dot) / (2 * math.pi)
    return f


_MAX_DEPTH = 14


def _fit(f, deg):
    return C.Chebyshev.interpolate(f, deg, domain=[0, 1])


def _subword_integrals(polys, word):
    """S[(l, h)] = iterated integral of word[l:h] over [0, 1] for the given
    polynomial primitives."""
    p = len(word)
    out = {}
    for lo in range(p):
        acc = C.Chebyshev([1.0], domain=[0, 1])
        for hi in range(lo + 1, p + 1):
            if word[hi - 1] not in polys:
                # a letter that does not move on this piece kills the rest
                for h in range(hi, p + 1):
                    out[lo, h] = 0.0
                break
            dx = polys[word[hi - 1]].deriv()
            acc = (acc * dx).integ(lbnd=0)
            out[lo, hi] = float(acc(1.0))
    return out


def _piece(a_vecs, b_vecs, word, letters, s0, s1, tol, deg, depth):
    """Subword integrals over the time window [s0, s1] of one linear piece."""
    polys, polys2, err = {}, {}, 0.0
    for k in letters:
        a, b = a_vecs[k], b_vecs[k]
        a0 = a + s0 * b
        bw = (s1 - s0) * b
        f = _angle_fn(a0, bw)
        p1 = _fit(f, deg)
        p2 = _fit(f, 2 * deg)
        polys[k], polys2[k] = p1, p2
        xs = np.linspace(0, 1, 4 * deg + 1)
        err = max(err, float(np.max(np.abs(p1(xs) - f(xs)))))
    # below roundoff further splitting cannot help
    if err > max(tol, 1e-14) and depth < _MAX_DEPTH:
        mid = 0.5 * (s0 + s1)
        left, el = _piece(a_vecs, b_vecs, word, letters, s0, mid, tol / 2, deg, depth + 1)
        right, er = _piece(a_vecs, b_vecs, word, letters, mid, s1, tol / 2, deg, depth + 1)
        return _concat(left, right, len(word)), el + er
    S1 = _subword_integrals(polys, word)
    S2 = _subword_integrals(polys2, word)
    est = max(abs(S1[k] - S2[k]) for k in S1)
    return S2, max(est, err)


def _concat(S, T, p):
    """Chen's rule for subword integrals of two consecutive paths."""
    out = {}
    for lo in range(p):
        for hi in range(lo + 1, p + 1):
            v = S[lo, hi] + T[lo, hi]
            for mid in range(lo + 1, hi):
                v += S[lo, mid] * T[mid, hi]
            out[lo, hi] = v
    return out


def _normalize_pair(pair):
    i, j = pair
    return (i, j) if i < j else (j, i)


def iterated_integral(loop, word, tol=1e-6, deg=12):
    """Chen integral of ``omega_w1 ... omega_wp`` along ``loop``.

    Returns ``(value, err_bound)``; the first letter is integrated first.
    """
    word = [_normalize_pair(w) for w in word]
    p = len(word)
    if p == 0:
        return 1.0, 0.0
    for i, j in word:
        if not 1 <= i < j <= loop.m:
            raise UsageError(f"letter {(i, j)} outside 1..{loop.m}")
    letters = sorted(set(word))
    P = loop.points
    # total variation of the angle functions bounds error propagation
    tv, moving = 0.0, []
    for t in range(loop.nsegments):
        a_vecs, b_vecs, live = {}, {}, []
        for (i, j) in letters:
            a = P[t, j - 1] - P[t, i - 1]
            b = (P[t + 1, j - 1] - P[t + 1, i - 1]) - a
            a_vecs[i, j], b_vecs[i, j] = a, b
            if np.any(b != 0):
                live.append((i, j))
                tv += abs(float(_angle_fn(a, b)(np.array([1.0]))[0]))
        moving.append((a_vecs, b_vecs, live))
    amp = math.exp(tv) * max(1, p)
    local_tol = tol / (amp * max(1, loop.nsegments))
    total = {(lo, hi): 0.0 for lo in range(p) for hi in range(lo + 1, p + 1)}
    err = 0.0
    for a_vecs, b_vecs, live in moving:
        if not live:
            continue
        S, e = _piece(a_vecs, b_vecs, word, live, 0.0, 1.0, local_tol, deg, 0)
        total = _concat(total, S, p)
        err += e
    bound = err * amp
    if bound > tol:
        raise ToleranceNotMet(f"error bound {bound:.3g} exceeds tol {tol:.3g}",
                              bound=bound, tol=tol)
    return total[0, p], bound


def evaluate_chord_cocycle(x, loop, tol=1e-6):
    """Sum of coefficient times iterated integral over the words of ``x``.

    Returns ``(value, err_bound)``.
    """
    value, bound = 0.0, 0.0
    for w, c in x.items():
        pairs = pairs_of_word(w)
        if pairs is None:
            raise NonChordTerm("a factor has free vertices or several edges",
                               word=repr(w))
        v, e = iterated_integral(loop, pairs, tol / max(1, len(x)))
        value += float(c) * v
        bound += abs(float(c)) * e
    return value, bound


# --------------------------------------------------------- expansion oracle


def _mul(a, b, K):
    out = {}
    for u, x in a.items():
        for v, y in b.items():
            if len(u) + len(v) <= K:
                add_term(out, u + v, x * y)
    return out


def _exp_letter(pair, eps, K):
    out = {(): Fraction(1)}
    term = Fraction(1)
    for k in range(1, K + 1):
        term = term * eps / k
        out[(pair,) * k] = term
    return out


def braid_expansion(word, K):
    """Product of ``exp(eps B_ij)`` over the letters, truncated at degree K."""
    if isinstance(word, str):
        word = parse_braid(word)
    t = {(): Fraction(1)}
    for i, j, eps in word.letters:
        t = _mul(t, _exp_letter((i, j), eps, K), K)
    return t


def pair_cocycle_expansion(x, t, parity=Parity.EVEN):
    """Kronecker pairing of a kernel element with a truncated expansion."""
    if not in_relation_kernel(x, parity):
        raise NotInKernel("element does not satisfy the 4T and shuffle relations")
    total = Fraction(0)
    for w, c in x.items():
        total += c * t.get(pairs_of_word(w), 0)
    return total


def tensor_to_json(t):
    return [{"word": [f"B{i}{j}" for i, j in w], "coeff": str(c)}
            for w, c in sorted(t.items(), key=lambda kv: (len(kv[0]), kv[0]))]
