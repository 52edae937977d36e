"""Exact sparse linear algebra over the rationals.

Matrices are stored as dicts of rows, each row a dict ``col -> Fraction``
with zeros absent.  Elimination is plain Gauss-Jordan with the pivot rule
"leftmost column first, then smallest row index", so every result is a
deterministic function of the input entries.
"""

from fractions import Fraction

from .errors import NotAComplex


class SparseMatrix:
    """A ``rows x cols`` matrix with exact rational entries."""

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.data = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    def __setitem__(self, ij, value):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        value = Fraction(value)
        row = self.data.setdefault(i, {})
        if value:
            row[j] = value
        else:
            row.pop(j, None)
            if not row:
                del self.data[i]

    def __getitem__(self, ij):
        i, j = ij
        return self.data.get(i, {}).get(j, Fraction(0))

    def add(self, i, j, value):
        self[i, j] = self[i, j] + value

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        m = cls(len(rows), ncols)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v:
                    m[i, j] = v
        return m

    @classmethod
    def from_columns(cls, nrows, columns):
        """Build from a list of sparse column dicts ``row -> value``."""
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    m[i, j] = v
        return m

    def to_dense(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def entries(self):
        for i in sorted(self.data):
            for j in sorted(self.data[i]):
                yield i, j, self.data[i][j]

    def nnz(self):
        return sum(len(r) for r in self.data.values())

    def is_zero(self):
        return not self.data

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.rows, other.cols)
        for i, row in self.data.items():
            acc = {}
            for k, a in row.items():
                for j, b in other.data.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            for j, v in acc.items():
                if v:
                    out[i, j] = v
        return out

    def apply(self, vec):
        """Multiply by a sparse column vector given as ``col -> value``."""
        out = {}
        for i, row in self.data.items():
            s = sum((row[j] * v for j, v in vec.items() if j in row), Fraction(0))
            if s:
                out[i] = s
        return out

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[i, j, str(v)] for i, j, v in self.entries()]}

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _echelon(M):
    """Reduced row echelon form.  Returns ``(pivots, rows)`` where ``rows[c]``
    is the normalized pivot row for pivot column ``c``."""
    work = {i: dict(r) for i, r in M.data.items() if r}
    by_col = {}
    for i, r in work.items():
        for j in r:
            by_col.setdefault(j, set()).add(i)
    pivot_rows = {}
    for c in range(M.cols):
        cand = by_col.get(c)
        if not cand:
            continue
        p = min(cand)
        prow = work.pop(p)
        for j in prow:
            by_col[j].discard(p)
        inv = 1 / prow[c]
        prow = {j: v * inv for j, v in prow.items()}
        for i in sorted(by_col[c]):
            row = work[i]
            f = row[c]
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if nv:
                    if j not in row:
                        by_col.setdefault(j, set()).add(i)
                    row[j] = nv
                else:
                    row.pop(j, None)
                    by_col[j].discard(i)
            if not row:
                del work[i]
        pivot_rows[c] = prow
    # back-substitution to reduced form, processing later pivots first
    pivots = sorted(pivot_rows)
    for c in reversed(pivots):
        prow = pivot_rows[c]
        for c2 in pivots:
            if c2 >= c:
                break
            row = pivot_rows[c2]
            f = row.get(c)
            if f:
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
    return pivots, pivot_rows


def rref(M):
    """Return ``(rank, kernel_basis)``.

    Kernel vectors are dense lists of Fractions, one per free column, in
    increasing free-column order.
    """
    pivots, prows = _echelon(M)
    pivset = set(pivots)
    kernel = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for c in pivots:
            a = prows[c].get(f)
            if a:
                v[c] = -a
        kernel.append(v)
    return len(pivots), kernel


def rank(M):
    return len(_echelon(M)[0])


def row_space_basis(M):
    """Reduced row basis as a list of sparse dicts (pivot order)."""
    pivots, prows = _echelon(M)
    return [prows[c] for c in pivots]


def cohomology_dim(d_in, d_out):
    """``dim ker(d_out) - rank(d_in)`` for ``V -d_in-> W -d_out-> X``."""
    if d_in.rows != d_out.cols:
        raise ValueError("maps are not composable")
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out composed with d_in is nonzero")
    return (d_out.cols - rank(d_out)) - rank(d_in)
