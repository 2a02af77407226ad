"""Dense linear algebra over finite fields.

FFMatrix stores F_2 matrices bit-packed (one Python int per row, bit j is
column j) so row operations are single xors; matrices over any other field
keep tuple-of-int rows and go through the field's arithmetic methods.
Matrices are immutable from the caller's point of view: every operation
returns fresh values.
"""

from __future__ import annotations

from .fields import UniPoly, berlekamp_roots


class SingularMatrixError(Exception):
    """Raised when an inverse of a singular matrix is requested."""


class SpectrumNotSimpleError(Exception):
    """Raised when the characteristic polynomial does not split into
    distinct linear factors over the field."""


class FFMatrix:
    __slots__ = ("field", "nrows", "ncols", "_rows", "_packed")

    def __init__(self, field, nrows, ncols, rows, packed):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows
        self._packed = packed

    # Constructors -----------------------------------------------------------
    @classmethod
    def from_rows(cls, field, rows) -> "FFMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        if field.order == 2:
            packed = [sum((1 << j) for j, v in enumerate(r) if v & 1) for r in rows]
            return cls(field, nrows, ncols, packed, True)
        order = field.order
        out = []
        for r in rows:
            if any(not (0 <= v < order) for v in r):
                raise ValueError("entry out of field range")
            out.append(tuple(r))
        return cls(field, nrows, ncols, out, False)

    @classmethod
    def from_packed_rows(cls, field, rows, ncols) -> "FFMatrix":
        if field.order != 2:
            raise ValueError("packed rows require F_2")
        return cls(field, len(rows), ncols, list(rows), True)

    @classmethod
    def zeros(cls, field, nrows, ncols) -> "FFMatrix":
        if field.order == 2:
            return cls(field, nrows, ncols, [0] * nrows, True)
        return cls(field, nrows, ncols, [(0,) * ncols] * nrows, False)

    @classmethod
    def identity(cls, field, n) -> "FFMatrix":
        if field.order == 2:
            return cls(field, n, n, [1 << i for i in range(n)], True)
        rows = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        return cls(field, n, n, rows, False)

    @classmethod
    def diagonal(cls, field, entries) -> "FFMatrix":
        entries = list(entries)
        n = len(entries)
        return cls.from_rows(field, [[entries[i] if i == j else 0 for j in range(n)]
                                     for i in range(n)])

    # Element access ----------------------------------------------------------
    def at(self, i, j) -> int:
        if self._packed:
            return self._rows[i] >> j & 1
        return self._rows[i][j]

    def row(self, i) -> tuple:
        if self._packed:
            r = self._rows[i]
            return tuple(r >> j & 1 for j in range(self.ncols))
        return tuple(self._rows[i])

    def packed_row(self, i) -> int:
        if not self._packed:
            raise ValueError("matrix is not bit-packed")
        return self._rows[i]

    def rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.nrows)]

    def column(self, j) -> tuple:
        return tuple(self.at(i, j) for i in range(self.nrows))

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def is_zero(self) -> bool:
        if self._packed:
            return all(r == 0 for r in self._rows)
        return all(all(v == 0 for v in r) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FFMatrix):
            return NotImplemented
        return (self.field == other.field and self.nrows == other.nrows
                and self.ncols == other.ncols
                and self.rows() == other.rows())

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, tuple(self.rows())))

    def __repr__(self) -> str:
        return f"FFMatrix({self.nrows}x{self.ncols} over {self.field!r})"

    # Arithmetic ---------------------------------------------------------------
    def transpose(self) -> "FFMatrix":
        if self._packed:
            cols = [0] * self.ncols
            for i, r in enumerate(self._rows):
                while r:
                    lsb = r & -r
                    cols[lsb.bit_length() - 1] |= 1 << i
                    r ^= lsb
            return FFMatrix(self.field, self.ncols, self.nrows, cols, True)
        rows = [tuple(self._rows[i][j] for i in range(self.nrows))
                for j in range(self.ncols)]
        return FFMatrix(self.field, self.ncols, self.nrows, rows, False)

    def __add__(self, other: "FFMatrix") -> "FFMatrix":
        self._check_same_shape(other)
        if self._packed:
            return FFMatrix(self.field, self.nrows, self.ncols,
                            [a ^ b for a, b in zip(self._rows, other._rows)], True)
        f = self.field
        rows = [tuple(f.add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self._rows, other._rows)]
        return FFMatrix(f, self.nrows, self.ncols, rows, False)

    def __sub__(self, other: "FFMatrix") -> "FFMatrix":
        self._check_same_shape(other)
        if self._packed:
            return self + other
        f = self.field
        rows = [tuple(f.sub(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self._rows, other._rows)]
        return FFMatrix(f, self.nrows, self.ncols, rows, False)

    def _check_same_shape(self, other):
        if self.field != other.field or self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape or field mismatch")

    def scale(self, c: int) -> "FFMatrix":
        f = self.field
        if self._packed:
            return FFMatrix(f, self.nrows, self.ncols,
                            [r if c & 1 else 0 for r in self._rows], True)
        rows = [tuple(f.mul(c, v) for v in r) for r in self._rows]
        return FFMatrix(f, self.nrows, self.ncols, rows, False)

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        if self.field != other.field or self.ncols != other.nrows:
            raise ValueError("shape or field mismatch")
        f = self.field
        if self._packed:
            out = []
            brows = other._rows
            for r in self._rows:
                acc = 0
                rr = r
                while rr:
                    lsb = rr & -rr
                    acc ^= brows[lsb.bit_length() - 1]
                    rr ^= lsb
                out.append(acc)
            return FFMatrix(f, self.nrows, other.ncols, out, True)
        mul, add = f.mul, f.add
        bcols = other.ncols
        brows = other._rows
        out = []
        for ra in self._rows:
            acc = [0] * bcols
            for k, a in enumerate(ra):
                if a:
                    rb = brows[k]
                    for j in range(bcols):
                        b = rb[j]
                        if b:
                            acc[j] = add(acc[j], mul(a, b))
            out.append(tuple(acc))
        return FFMatrix(f, self.nrows, bcols, out, False)

    def mat_vec(self, v) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        f = self.field
        if self._packed:
            vmask = sum(1 << j for j, x in enumerate(v) if x & 1)
            out = []
            for r in self._rows:
                out.append(_parity(r & vmask))
            return tuple(out)
        mul, add = f.mul, f.add
        out = []
        for r in self._rows:
            acc = 0
            for a, x in zip(r, v):
                if a and x:
                    acc = add(acc, mul(a, x))
            out.append(acc)
        return tuple(out)

    def submatrix(self, row_idx, col_idx) -> "FFMatrix":
        row_idx, col_idx = list(row_idx), list(col_idx)
        if self._packed:
            rows = []
            for i in row_idx:
                r = self._rows[i]
                rows.append(sum((1 << jj) for jj, j in enumerate(col_idx) if r >> j & 1))
            return FFMatrix(self.field, len(row_idx), len(col_idx), rows, True)
        rows = [tuple(self._rows[i][j] for j in col_idx) for i in row_idx]
        return FFMatrix(self.field, len(row_idx), len(col_idx), rows, False)

    def hstack(self, other: "FFMatrix") -> "FFMatrix":
        if self.field != other.field or self.nrows != other.nrows:
            raise ValueError("shape or field mismatch")
        if self._packed:
            rows = [a | (b << self.ncols) for a, b in zip(self._rows, other._rows)]
            return FFMatrix(self.field, self.nrows, self.ncols + other.ncols, rows, True)
        rows = [ra + rb for ra, rb in zip(self._rows, other._rows)]
        return FFMatrix(self.field, self.nrows, self.ncols + other.ncols, rows, False)

    def vstack(self, other: "FFMatrix") -> "FFMatrix":
        if self.field != other.field or self.ncols != other.ncols:
            raise ValueError("shape or field mismatch")
        return FFMatrix(self.field, self.nrows + other.nrows, self.ncols,
                        list(self._rows) + list(other._rows), self._packed)

    # Serialization -------------------------------------------------------------
    def to_json_dict(self) -> dict:
        return {"field": self.field.descriptor(), "rows": self.nrows,
                "cols": self.ncols, "data": self.to_lists()}


def _parity(x: int) -> int:
    return x.bit_count() & 1


# ---------------------------------------------------------------------------
# Elimination.


def rref(M: FFMatrix) -> tuple[FFMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form; returns (R, rank, pivot column indices).

    Pivot rule: scan columns left to right, take the lowest-index unused
    row with a nonzero entry, so the output is deterministic.
    """
    if M._packed:
        rows = list(M._rows)
        pivots = []
        prow = 0
        for col in range(M.ncols):
            piv = None
            bit = 1 << col
            for i in range(prow, M.nrows):
                if rows[i] & bit:
                    piv = i
                    break
            if piv is None:
                continue
            rows[prow], rows[piv] = rows[piv], rows[prow]
            pr = rows[prow]
            for i in range(M.nrows):
                if i != prow and rows[i] & bit:
                    rows[i] ^= pr
            pivots.append(col)
            prow += 1
            if prow == M.nrows:
                break
        return FFMatrix(M.field, M.nrows, M.ncols, rows, True), len(pivots), tuple(pivots)
    f = M.field
    mul, sub, inv = f.mul, f.sub, f.inv
    rows = [list(r) for r in M._rows]
    pivots = []
    prow = 0
    for col in range(M.ncols):
        piv = None
        for i in range(prow, M.nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[prow], rows[piv] = rows[piv], rows[prow]
        pr = rows[prow]
        pinv = inv(pr[col])
        if pinv != 1:
            for j in range(col, M.ncols):
                if pr[j]:
                    pr[j] = mul(pr[j], pinv)
        for i in range(M.nrows):
            if i != prow:
                c = rows[i][col]
                if c:
                    ri = rows[i]
                    for j in range(col, M.ncols):
                        if pr[j]:
                            ri[j] = sub(ri[j], mul(c, pr[j]))
        pivots.append(col)
        prow += 1
        if prow == M.nrows:
            break
    out = FFMatrix(f, M.nrows, M.ncols, [tuple(r) for r in rows], False)
    return out, len(pivots), tuple(pivots)


def rank(M: FFMatrix) -> int:
    return rref(M)[1]


def nullspace_basis(M: FFMatrix) -> FFMatrix:
    """Basis of {x : Mx = 0} as matrix rows, in rref form.

    Row count is ncols - rank(M) (rank-nullity).
    """
    R, rk, pivots = rref(M)
    f = M.field
    n = M.ncols
    pivot_set = set(pivots)
    free_cols = [j for j in range(n) if j not in pivot_set]
    if M._packed:
        rows = []
        for j in free_cols:
            v = 1 << j
            for r, pc in enumerate(pivots):
                if R._rows[r] >> j & 1:
                    v |= 1 << pc
            rows.append(v)
        basis = FFMatrix(f, len(rows), n, rows, True)
    else:
        neg = f.neg
        rows = []
        for j in free_cols:
            v = [0] * n
            v[j] = 1
            for r, pc in enumerate(pivots):
                v[pc] = neg(R._rows[r][j])
            rows.append(tuple(v))
        basis = FFMatrix(f, len(rows), n, rows, False)
    out, out_rank, _ = rref(basis)
    assert out_rank == len(free_cols)
    assert out_rank + rk == n
    return out


def solve(A: FFMatrix, b) -> tuple | None:
    """Some x with Ax = b, or None when the system is inconsistent."""
    if len(b) != A.nrows:
        raise ValueError("length mismatch")
    f = A.field
    bcol = FFMatrix.from_rows(f, [[v] for v in b]) if A.nrows else FFMatrix.zeros(f, 0, 1)
    aug = A.hstack(bcol)
    R, rk, pivots = rref(aug)
    if pivots and pivots[-1] == A.ncols:
        return None
    x = [0] * A.ncols
    for r, pc in enumerate(pivots):
        x[pc] = R.at(r, A.ncols)
    return tuple(x)


def inverse(M: FFMatrix) -> FFMatrix:
    if M.nrows != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = M.nrows
    aug = M.hstack(FFMatrix.identity(M.field, n))
    R, rk, pivots = rref(aug)
    if rk < n or any(pc != i for i, pc in enumerate(pivots[:n])):
        raise SingularMatrixError("matrix is singular")
    return R.submatrix(range(n), range(n, 2 * n))


def full_rank_submatrix(M: FFMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Index sets (K, L) with |K| = |L| = rank(M) and M[K, L] invertible.

    K greedily collects independent rows (lowest index first); L is the
    pivot column set of the eliminated K-row submatrix, so the choice is
    deterministic.
    """
    K = []
    # Incremental echelon basis keyed by pivot position.  Reducing in
    # ascending pivot order is a complete reduction: each basis row's
    # lowest nonzero position is its pivot, so xors only touch higher bits.
    if M._packed:
        basis: dict[int, int] = {}  # pivot bit position -> reduced row
        for i in range(M.nrows):
            v = M._rows[i]
            for b in sorted(basis):
                if v >> b & 1:
                    v ^= basis[b]
            if v:
                basis[(v & -v).bit_length() - 1] = v
                K.append(i)
    else:
        f = M.field
        mul, sub, inv = f.mul, f.sub, f.inv
        gbasis: dict[int, list] = {}  # pivot column -> normalized reduced row
        for i in range(M.nrows):
            v = list(M._rows[i])
            for pc in sorted(gbasis):
                c = v[pc]
                if c:
                    row = gbasis[pc]
                    for j in range(pc, M.ncols):
                        if row[j]:
                            v[j] = sub(v[j], mul(c, row[j]))
            pc = next((j for j, val in enumerate(v) if val), None)
            if pc is not None:
                pinv = inv(v[pc])
                if pinv != 1:
                    v = [mul(pinv, val) for val in v]
                gbasis[pc] = v
                K.append(i)
    if not K:
        return (), ()
    sub_m = M.submatrix(K, range(M.ncols))
    _, rk, pivots = rref(sub_m)
    assert rk == len(K)
    return tuple(K), tuple(pivots)


# ---------------------------------------------------------------------------
# Characteristic polynomial and eigendecomposition.

_MINOR_EXPANSION_MAX = 8  # strictly below this dimension


def char_poly(M: FFMatrix) -> UniPoly:
    """det(XI - M): monic, degree = dimension.

    Cofactor expansion with memoization below dimension 8, similarity
    reduction to Hessenberg form (with pivot search) above.
    """
    if M.nrows != M.ncols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    if M.nrows < _MINOR_EXPANSION_MAX:
        return _char_poly_minors(M)
    return _char_poly_hessenberg(M)


def _char_poly_minors(M: FFMatrix) -> UniPoly:
    f = M.field
    n = M.nrows
    if n == 0:
        return UniPoly.one(f)
    a = M.to_lists()
    neg = f.neg
    entry = [[UniPoly(f, (neg(a[i][j]), 1) if i == j else (neg(a[i][j]),))
              for j in range(n)] for i in range(n)]
    cache: dict[int, UniPoly] = {}

    def rec(mask: int) -> UniPoly:
        if mask == 0:
            return UniPoly.one(f)
        got = cache.get(mask)
        if got is not None:
            return got
        col = n - bin(mask).count("1")
        acc = UniPoly.zero(f)
        idx = 0
        mm = mask
        while mm:
            lsb = mm & -mm
            i = lsb.bit_length() - 1
            e = entry[i][col]
            if not e.is_zero():
                term = e * rec(mask ^ lsb)
                acc = acc + term if idx % 2 == 0 else acc - term
            idx += 1
            mm ^= lsb
        cache[mask] = acc
        return acc

    return rec((1 << n) - 1)


def _char_poly_hessenberg(M: FFMatrix) -> UniPoly:
    f = M.field
    n = M.nrows
    mul, sub, add, inv = f.mul, f.sub, f.add, f.inv
    A = M.to_lists()
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if A[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            A[piv], A[j + 1] = A[j + 1], A[piv]
            for r in range(n):
                A[r][piv], A[r][j + 1] = A[r][j + 1], A[r][piv]
        pinv = inv(A[j + 1][j])
        for i in range(j + 2, n):
            c = A[i][j]
            if c:
                factor = mul(c, pinv)
                rowp = A[j + 1]
                rowi = A[i]
                for col in range(n):
                    if rowp[col]:
                        rowi[col] = sub(rowi[col], mul(factor, rowp[col]))
                for r in range(n):
                    if A[r][i]:
                        A[r][j + 1] = add(A[r][j + 1], mul(factor, A[r][i]))
    # char polys of leading principal submatrices of the Hessenberg form
    p = [UniPoly.one(f)]
    for k in range(1, n + 1):
        poly = UniPoly(f, (f.neg(A[k - 1][k - 1]), 1)) * p[k - 1]
        prod = 1
        for i in range(k - 2, -1, -1):
            prod = mul(prod, A[i + 1][i])
            if prod == 0:
                break
            coeff = mul(A[i][k - 1], prod)
            if coeff:
                poly = poly - p[i].scale(coeff)
        p.append(poly)
    return p[n]


def eigen_decompose(M: FFMatrix) -> list[tuple[int, tuple]]:
    """Eigenpairs (value, vector) of a square matrix whose spectrum is
    simple over its field.

    Eigenvalues are sorted by integer encoding; eigenvectors are scaled so
    the first nonzero entry is 1.  Raises SpectrumNotSimpleError when the
    characteristic polynomial has repeated or missing roots.
    """
    if M.nrows != M.ncols:
        raise ValueError("eigendecomposition of a non-square matrix")
    f = M.field
    n = M.nrows
    roots = berlekamp_roots(char_poly(M))
    if sum(roots.values()) < n or any(m > 1 for m in roots.values()):
        raise SpectrumNotSimpleError(
            f"spectrum not simple over field: {len(roots)} distinct roots, dim {n}")
    pairs = []
    for lam in sorted(roots):
        shifted = M - FFMatrix.diagonal(f, [lam] * n)
        ns = nullspace_basis(shifted)
        if ns.nrows != 1:
            raise SpectrumNotSimpleError("eigenspace dimension != 1")
        v = list(ns.row(0))
        lead = next(x for x in v if x)
        if lead != 1:
            li = f.inv(lead)
            v = [f.mul(li, x) for x in v]
        pairs.append((lam, tuple(v)))
    return pairs
