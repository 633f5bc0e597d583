"""Dense exact linear algebra over the cyclotomic scalars.

Matrices are lists of rows; rows are lists of CycScalar.  Everything is
desk-scale Gaussian elimination -- no pivot strategy beyond "first nonzero".
"""

from __future__ import annotations

from .scalar import ONE, ZERO, CycScalar, cyc


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    mat = zeros(n, n)
    for i in range(n):
        mat[i][i] = ONE
    return mat


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik.is_zero():
                continue
            for j in range(cols):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def rref(matrix):
    """Reduced row echelon form.  Returns (rows, pivot_columns); zero rows are
    dropped."""
    mat = [list(row) for row in matrix]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if not mat[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(matrix):
    return len(rref(matrix)[0])


def reduce_against(row, basis_rows, pivots):
    """Reduce a row vector against an rref basis; returns the residue."""
    row = list(row)
    for brow, p in zip(basis_rows, pivots):
        c = row[p]
        if not c.is_zero():
            row = [x - c * y for x, y in zip(row, brow)]
    return row


def in_span(row, basis_rows, pivots):
    return all(x.is_zero() for x in reduce_against(row, basis_rows, pivots))


def solve_in_span(row, spanning_rows):
    """Express ``row`` as a combination of ``spanning_rows``; returns the
    coefficient list or None.  (Not unique if the rows are dependent.)"""
    if not spanning_rows:
        return None if any(not x.is_zero() for x in row) else []
    n = len(spanning_rows)
    # columns = spanning rows, rhs = row; eliminate on the transpose
    aug = [[spanning_rows[j][i] for j in range(n)] + [row[i]] for i in range(len(row))]
    reduced, pivots = rref(aug)
    coeffs = [ZERO] * n
    for rrow, p in zip(reduced, pivots):
        if p == n:
            return None  # inconsistent
        coeffs[p] = rrow[n]
    return coeffs


def nullspace(matrix):
    """Basis of the right nullspace, as row vectors."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    reduced, pivots = rref(matrix)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [ZERO] * ncols
        vec[free] = ONE
        for rrow, p in zip(reduced, pivots):
            vec[p] = -rrow[free]
        basis.append(vec)
    return basis


class SparseBasis:
    """An incrementally built, fully reduced basis of sparse vectors.

    Vectors are dicts key -> CycScalar.  Each inserted generator is tracked, so
    membership tests also yield coordinates in terms of the original
    generators.  Keys must be totally ordered (pivot = smallest key).
    """

    def __init__(self):
        self.rows = []  # list of (pivot, row_dict, comb_dict)
        self.tags = []

    @property
    def dim(self):
        return len(self.rows)

    @staticmethod
    def _axpy(target, coeff, source):
        for k, val in source.items():
            new = target.get(k, ZERO) + coeff * val
            if new.is_zero():
                target.pop(k, None)
            else:
                target[k] = new

    def residue(self, vec):
        """Reduce vec; returns (residue, coords) with
        vec = residue + sum(coords[tag] * generator_tag)."""
        res = {k: v for k, v in vec.items() if not v.is_zero()}
        comb = {}
        for pivot, row, crow in self.rows:
            c = res.get(pivot)
            if c is not None and not c.is_zero():
                self._axpy(res, -c, row)
                self._axpy(comb, c, crow)
        return res, comb

    def contains(self, vec):
        res, _ = self.residue(vec)
        return not res

    def coords(self, vec):
        """Coordinates over the original generators, or None if not in span."""
        res, comb = self.residue(vec)
        return None if res else comb

    def add(self, vec, tag=None):
        """Insert a generator; returns True if it enlarged the span."""
        if tag is None:
            tag = len(self.tags)
        res, comb = self.residue(vec)
        self.tags.append(tag)
        if not res:
            return False
        pivot = min(res)
        inv = res[pivot].inverse()
        row = {k: v * inv for k, v in res.items()}
        crow = {tag: inv}
        for t, v in comb.items():
            val = -v * inv
            if not val.is_zero():
                crow[t] = crow.get(t, ZERO) + val
        # eliminate the new pivot from the existing rows
        for i, (p, r, cr) in enumerate(self.rows):
            c = r.get(pivot)
            if c is not None and not c.is_zero():
                self._axpy(r, -c, row)
                self._axpy(cr, -c, crow)
        self.rows.append((pivot, row, crow))
        return True

    def basis_vectors(self):
        return [dict(row) for _, row, _ in self.rows]

    def pivots(self):
        return [pivot for pivot, _, _ in self.rows]


def mat_from(entries):
    """Coerce a nested list of int/Fraction/str/CycScalar entries."""
    return [[cyc(x) for x in row] for row in entries]


def is_zero_matrix(a):
    return all(x.is_zero() for row in a for x in row)
