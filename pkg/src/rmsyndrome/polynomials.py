"""Reduced multivariate polynomials of bounded degree over F_p.

A monomial is an exponent tuple of length m with every exponent < p
(reduced: X^p = X on F_p points).  A MonomialIndex fixes the ordering of
all monomials of total degree <= t: graded by degree, descending
lexicographic within a degree, constant monomial at position 0.  Over F_2
this is the usual subset order: within degree d, supports appear in
itertools.combinations order.

MultilinearPoly is a coefficient vector aligned to an index; PolySpace is
a linear space of such polynomials whose basis matrix is kept in reduced
row echelon form, so equal spaces compare equal.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .fields import prime_field
from .linalg import FFMatrix, rref


def reduce_exponent(e: int, p: int) -> int:
    """Reduce an exponent with X^p = X: 0 stays 0, else into [1, p-1]."""
    if e <= 0:
        return 0
    return (e - 1) % (p - 1) + 1 if p > 2 else 1


class MonomialIndex:
    """All reduced monomials in m variables of total degree <= t over F_p."""

    __slots__ = ("m", "t", "p", "monomials", "position", "masks",
                 "_var_mul", "_parents", "_restrict_sources")

    def __init__(self, m: int, t: int, p: int = 2):
        if m < 0 or t < 0:
            raise ValueError("m and t must be nonnegative")
        self.m = m
        self.t = t
        self.p = p
        monos: list[tuple[int, ...]] = []
        for d in range(min(t, m * (p - 1)) + 1):
            monos.extend(self._degree_block(d))
        self.monomials = tuple(monos)
        self.position = {mono: i for i, mono in enumerate(monos)}
        if p == 2:
            self.masks = tuple(sum(1 << v for v, e in enumerate(mono) if e)
                               for mono in monos)
        else:
            self.masks = None
        self._var_mul: dict[int, tuple] = {}
        self._parents = None
        self._restrict_sources = None

    def _degree_block(self, d: int) -> list[tuple[int, ...]]:
        m, p = self.m, self.p
        if d == 0:
            return [(0,) * m]
        if p == 2:
            out = []
            for supp in combinations(range(m), d):
                e = [0] * m
                for v in supp:
                    e[v] = 1
                out.append(tuple(e))
            return out
        block: list[tuple[int, ...]] = []

        def gen(prefix, remaining, pos):
            if pos == m:
                if remaining == 0:
                    block.append(tuple(prefix))
                return
            top = min(p - 1, remaining)
            for e in range(top, -1, -1):  # descending lex
                if remaining - e <= (m - pos - 1) * (p - 1):
                    gen(prefix + [e], remaining - e, pos + 1)

        gen([], d, 0)
        return block

    @property
    def size(self) -> int:
        return len(self.monomials)

    def degree_of(self, i: int) -> int:
        return sum(self.monomials[i])

    def product_position(self, i: int, j: int) -> int:
        """Position of reduce(M_i * M_j); raises if past the degree bound."""
        ei, ej = self.monomials[i], self.monomials[j]
        prod = tuple(reduce_exponent(a + b, self.p) for a, b in zip(ei, ej))
        return self.position[prod]

    def var_mul(self, v: int) -> tuple:
        """Map position i to the position of reduce(M_i * X_v), or -1 when
        the product exceeds the degree bound."""
        got = self._var_mul.get(v)
        if got is not None:
            return got
        out = []
        for mono in self.monomials:
            e = list(mono)
            e[v] = reduce_exponent(e[v] + 1, self.p)
            out.append(self.position.get(tuple(e), -1))
        self._var_mul[v] = tuple(out)
        return self._var_mul[v]

    def parents(self) -> tuple:
        """For each non-constant monomial: (position of M / X_v, v) where v
        is the lowest variable with nonzero exponent.  Entry 0 is None."""
        if self._parents is None:
            out = [None]
            for mono in self.monomials[1:]:
                v = next(i for i, e in enumerate(mono) if e)
                par = list(mono)
                par[v] -= 1
                out.append((self.position[tuple(par)], v))
            self._parents = tuple(out)
        return self._parents

    def restrict_sources(self) -> tuple:
        """Positions of the monomials not involving the last variable, in
        the order of the (m-1)-variable index."""
        if self._restrict_sources is None:
            self._restrict_sources = tuple(
                i for i, mono in enumerate(self.monomials) if mono[-1] == 0)
        return self._restrict_sources

    def monomial_eval(self, i: int, point) -> int:
        field = prime_field(self.p)
        acc = 1
        for v, e in enumerate(self.monomials[i]):
            if e:
                acc = field.mul(acc, field.pow(point[v], e))
                if acc == 0:
                    return 0
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialIndex) and other.m == self.m
                and other.t == self.t and other.p == self.p)

    def __hash__(self):
        return hash((self.m, self.t, self.p))

    def __repr__(self) -> str:
        return f"MonomialIndex(m={self.m}, t={self.t}, p={self.p})"


@lru_cache(maxsize=None)
def monomial_index(m: int, t: int, p: int = 2) -> MonomialIndex:
    return MonomialIndex(m, t, p)


class MultilinearPoly:
    """A reduced polynomial as a coefficient vector over a MonomialIndex."""

    __slots__ = ("index", "coeffs")

    def __init__(self, index: MonomialIndex, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != index.size:
            raise ValueError("coefficient vector does not match the index")
        self.index = index
        self.coeffs = coeffs

    @classmethod
    def zero(cls, index) -> "MultilinearPoly":
        return cls(index, (0,) * index.size)

    @classmethod
    def constant(cls, index, c: int) -> "MultilinearPoly":
        v = [0] * index.size
        v[0] = c % index.p
        return cls(index, v)

    @classmethod
    def variable(cls, index, v: int) -> "MultilinearPoly":
        e = [0] * index.m
        e[v] = 1
        out = [0] * index.size
        out[index.position[tuple(e)]] = 1
        return cls(index, out)

    @classmethod
    def from_terms(cls, index, terms: dict) -> "MultilinearPoly":
        out = [0] * index.size
        for exps, c in terms.items():
            out[index.position[tuple(exps)]] = c % index.p
        return cls(index, out)

    @property
    def field(self):
        return prime_field(self.index.p)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def degree(self) -> int:
        degs = [self.index.degree_of(i) for i, c in enumerate(self.coeffs) if c]
        return max(degs) if degs else -1

    def evaluate(self, point) -> int:
        if len(point) != self.index.m:
            raise ValueError("point dimension mismatch")
        idx = self.index
        if idx.p == 2:
            xmask = 0
            for v, x in enumerate(point):
                if x & 1:
                    xmask |= 1 << v
            acc = 0
            masks = idx.masks
            for i, c in enumerate(self.coeffs):
                if c and masks[i] & ~xmask == 0:
                    acc ^= 1
            return acc
        f = self.field
        acc = 0
        for i, c in enumerate(self.coeffs):
            if c:
                acc = f.add(acc, f.mul(c, idx.monomial_eval(i, point)))
        return acc

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if other.index != self.index:
            raise ValueError("index mismatch")
        f = self.field
        return MultilinearPoly(self.index, (f.add(a, b) for a, b
                                            in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if other.index != self.index:
            raise ValueError("index mismatch")
        f = self.field
        return MultilinearPoly(self.index, (f.sub(a, b) for a, b
                                            in zip(self.coeffs, other.coeffs)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultilinearPoly)
                and other.index == self.index and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.index, self.coeffs))

    def packed(self) -> int:
        if self.index.p != 2:
            raise ValueError("packed form requires p = 2")
        return sum(1 << i for i, c in enumerate(self.coeffs) if c)

    @classmethod
    def from_packed(cls, index, packed: int) -> "MultilinearPoly":
        return cls(index, ((packed >> i) & 1 for i in range(index.size)))

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(self.index.monomials[i], c)
                for i, c in enumerate(self.coeffs) if c]

    def __repr__(self) -> str:
        return f"MultilinearPoly({self.terms()!r})"


def reduce_terms(terms: dict, index: MonomialIndex) -> MultilinearPoly:
    """Reduce a raw exponent-vector polynomial (exponents >= p allowed)
    using X^p = X; evaluation on F_p^m is unchanged."""
    p = index.p
    out = [0] * index.size
    for exps, c in terms.items():
        if len(exps) != index.m:
            raise ValueError("exponent vector length mismatch")
        red = tuple(reduce_exponent(e, p) for e in exps)
        if sum(red) > index.t:
            raise ValueError("reduced monomial exceeds the index degree bound")
        pos = index.position[red]
        out[pos] = (out[pos] + c) % p
    return MultilinearPoly(index, out)


# ---------------------------------------------------------------------------
# Affine substitution X -> M X + b.


def substitution_matrix(index: MonomialIndex, mat_rows, b) -> FFMatrix:
    """Matrix S whose row i is the coefficient vector of reduce(M_i(Mx+b)),
    so substitution acts on coefficient vectors as v -> v @ S."""
    p = index.p
    field = prime_field(p)
    m = index.m
    parents = index.parents()
    var_maps = [index.var_mul(v) for v in range(m)]
    if p == 2:
        rows = [0] * index.size
        rows[0] = 1  # constant monomial -> 1
        for i in range(1, index.size):
            pp, v = parents[i]
            src = rows[pp]
            acc = src if b[v] & 1 else 0
            mrow = mat_rows[v]
            for u in range(m):
                if mrow[u] & 1:
                    vm = var_maps[u]
                    s = src
                    while s:
                        lsb = s & -s
                        acc ^= 1 << vm[lsb.bit_length() - 1]
                        s ^= lsb
            rows[i] = acc
        return FFMatrix.from_packed_rows(field, rows, index.size)
    add, mul = field.add, field.mul
    rows = [None] * index.size
    first = [0] * index.size
    first[0] = 1
    rows[0] = first
    for i in range(1, index.size):
        pp, v = parents[i]
        src = rows[pp]
        bv = b[v] % p
        acc = [mul(bv, c) if c else 0 for c in src] if bv else [0] * index.size
        mrow = mat_rows[v]
        for u in range(m):
            cu = mrow[u] % p
            if cu:
                vm = var_maps[u]
                for s_pos, c in enumerate(src):
                    if c:
                        tgt = vm[s_pos]
                        acc[tgt] = add(acc[tgt], mul(cu, c))
        rows[i] = acc
    return FFMatrix.from_rows(field, rows)


def affine_substitute(P: MultilinearPoly, mat, b) -> MultilinearPoly:
    """reduce(P(Mx + b)) for an invertible matrix M (rows as sequences)."""
    idx = P.index
    mat_rows = mat.rows() if isinstance(mat, FFMatrix) else [tuple(r) for r in mat]
    _check_invertible(mat_rows, idx.p)
    S = substitution_matrix(idx, mat_rows, tuple(b))
    if idx.p == 2:
        acc = 0
        for i, c in enumerate(P.coeffs):
            if c:
                acc ^= S.packed_row(i)
        return MultilinearPoly.from_packed(idx, acc)
    f = prime_field(idx.p)
    acc = [0] * idx.size
    for i, c in enumerate(P.coeffs):
        if c:
            row = S.row(i)
            for j in range(idx.size):
                if row[j]:
                    acc[j] = f.add(acc[j], f.mul(c, row[j]))
    return MultilinearPoly(idx, acc)


def _check_invertible(mat_rows, p):
    from .linalg import rank
    field = prime_field(p)
    M = FFMatrix.from_rows(field, mat_rows)
    if M.nrows != M.ncols or rank(M) != M.nrows:
        raise ValueError("affine substitution requires an invertible matrix")


# ---------------------------------------------------------------------------
# Spaces of polynomials.


class PolySpace:
    """A linear space of reduced polynomials; basis rows kept in rref."""

    __slots__ = ("index", "basis", "pivots")

    def __init__(self, index: MonomialIndex, basis: FFMatrix, pivots=None):
        if basis.ncols != index.size:
            raise ValueError("basis width does not match the index")
        if pivots is None:
            basis, _, pivots = rref(basis)
            basis = _drop_zero_rows(basis)
        self.index = index
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def from_matrix(cls, index, mat: FFMatrix) -> "PolySpace":
        R, rk, pivots = rref(mat)
        rows = R._rows[:rk]
        return cls(index, FFMatrix(mat.field, rk, mat.ncols, rows, R._packed), pivots)

    @classmethod
    def from_polys(cls, index, polys) -> "PolySpace":
        field = prime_field(index.p)
        mat = FFMatrix.from_rows(field, [list(P.coeffs) for P in polys])
        return cls.from_matrix(index, mat)

    @classmethod
    def full(cls, index) -> "PolySpace":
        field = prime_field(index.p)
        return cls(index, FFMatrix.identity(field, index.size),
                   tuple(range(index.size)))

    @classmethod
    def empty(cls, index) -> "PolySpace":
        field = prime_field(index.p)
        return cls(index, FFMatrix.zeros(field, 0, index.size), ())

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def codim(self) -> int:
        return self.index.size - self.basis.nrows

    def polys(self) -> list[MultilinearPoly]:
        return [MultilinearPoly(self.index, self.basis.row(i))
                for i in range(self.basis.nrows)]

    def reduce_vector(self, vec):
        """Remainder of a coefficient vector modulo the space (rref basis).

        Accepts and returns a packed int for p = 2, else a tuple.
        """
        if self.index.p == 2:
            v = vec
            rows = self.basis._rows
            for r, pc in enumerate(self.pivots):
                if v >> pc & 1:
                    v ^= rows[r]
            return v
        f = prime_field(self.index.p)
        v = list(vec)
        for r, pc in enumerate(self.pivots):
            c = v[pc]
            if c:
                row = self.basis._rows[r]
                for j in range(pc, self.index.size):
                    if row[j]:
                        v[j] = f.sub(v[j], f.mul(c, row[j]))
        return tuple(v)

    def contains_vec(self, vec) -> bool:
        red = self.reduce_vector(vec)
        return red == 0 if self.index.p == 2 else all(c == 0 for c in red)

    def contains(self, P: MultilinearPoly) -> bool:
        if P.index != self.index:
            raise ValueError("index mismatch")
        return self.contains_vec(P.packed() if self.index.p == 2 else P.coeffs)

    def affine_image(self, mat, b) -> "PolySpace":
        """The space {reduce(P(Mx + b)) : P in this space}."""
        mat_rows = mat.rows() if isinstance(mat, FFMatrix) else [tuple(r) for r in mat]
        _check_invertible(mat_rows, self.index.p)
        S = substitution_matrix(self.index, mat_rows, tuple(b))
        return PolySpace.from_matrix(self.index, self.basis @ S)

    def restrict_last_zero(self) -> "PolySpace":
        """Substitute X_m = 0 into every basis element and re-basis over
        m-1 variables.

        When this space is the full vanishing space of a point set with
        linearly independent tensor powers, the result is the full
        vanishing space of the points whose last coordinate is zero (with
        that coordinate dropped); that containment is semantic and not
        checked here.  Valid over any prime field.
        """
        idx = self.index
        if idx.m == 0:
            raise ValueError("no variable left to restrict")
        target = monomial_index(idx.m - 1, idx.t, idx.p)
        sources = idx.restrict_sources()
        field = prime_field(idx.p)
        if idx.p == 2:
            tgt_of = [-1] * idx.size
            for jj, s in enumerate(sources):
                tgt_of[s] = jj
            rows = []
            for r in self.basis._rows:
                acc = 0
                while r:
                    lsb = r & -r
                    t = tgt_of[lsb.bit_length() - 1]
                    if t >= 0:
                        acc |= 1 << t
                    r ^= lsb
                rows.append(acc)
            mat = FFMatrix.from_packed_rows(field, rows, target.size)
        else:
            rows = [[row[s] for s in sources] for row in self.basis._rows]
            mat = FFMatrix.from_rows(field, rows)
        return PolySpace.from_matrix(target, mat)

    def restrict_last_const(self, c: int) -> "PolySpace":
        """Substitute X_m = c: translate by c along the last variable,
        then restrict to zero."""
        idx = self.index
        if c % idx.p == 0:
            return self.restrict_last_zero()
        field = prime_field(idx.p)
        ident = FFMatrix.identity(field, idx.m)
        b = [0] * idx.m
        b[-1] = c % idx.p
        return self.affine_image(ident, b).restrict_last_zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolySpace) and other.index == self.index
                and other.basis == self.basis)

    def __hash__(self):
        return hash((self.index, self.basis))

    def __repr__(self) -> str:
        return (f"PolySpace(m={self.index.m}, t={self.index.t}, "
                f"p={self.index.p}, dim={self.dim})")


def _drop_zero_rows(mat: FFMatrix) -> FFMatrix:
    if mat._packed:
        rows = [r for r in mat._rows if r]
    else:
        rows = [r for r in mat._rows if any(r)]
    return FFMatrix(mat.field, len(rows), mat.ncols, rows, mat._packed)


def codim(V: PolySpace) -> int:
    """Ambient index size minus basis dimension."""
    return V.codim


# ---------------------------------------------------------------------------
# Serialization (JSON-friendly structures).


def poly_to_obj(P: MultilinearPoly) -> list:
    return [[list(e), c] for e, c in P.terms()]


def poly_from_obj(obj, index: MonomialIndex) -> MultilinearPoly:
    return reduce_terms({tuple(e): c for e, c in obj}, index)


def space_to_obj(V: PolySpace) -> list:
    return [poly_to_obj(P) for P in V.polys()]
