"""Tensor-decomposition syndrome decoder (finite-field Jennrich method).

The syndrome is reshaped into the 3-tensor with entries
T[i, j, k] = sum_e M_i(e) M_j(e) M''_k(e) over the error set, where M_i,
M_j range over monomials of degree <= r and M''_k over degree <= 1.  Two
random (or derandomized) weightings of the degree-1 axis flatten T into
matrices S^a, S^b over an extension field; the eigenvectors of
S^a[K,L] (S^b[K,L])^{-1} on a full-rank minor recover the tensor-power
columns, and linear solves against the constant slice read the error
coordinates back off.

Failure modes (repeated eigenvalues, rank mismatch, vectors that do not
normalize into the base field) trigger a resample in randomized mode and
are reported as decoding failures in derandomized mode.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import (CodeParams, DecodingFailure, ErrorSet, Syndrome,
                   solve_error_magnitudes, syndrome_from_errors, tensor_power)
from .fields import extension_field, find_primitive_element
from .linalg import (FFMatrix, SingularMatrixError, SpectrumNotSimpleError,
                     eigen_decompose, full_rank_submatrix, inverse, rank)
from .polynomials import monomial_index


class _RetryableFailure(Exception):
    """Internal: the drawn flattening vectors were unlucky."""


@dataclass(frozen=True)
class Tensor3:
    """Syndrome reshaped as a 3-tensor, stored as its degree-1-axis slices
    (each an |M_r| x |M_r| matrix over the base field)."""

    params: CodeParams
    slices: tuple[FFMatrix, ...]

    @property
    def side(self) -> int:
        return self.slices[0].nrows

    def entry(self, i: int, j: int, k: int) -> int:
        return self.slices[k].at(i, j)


def tensor_from_syndrome(S: Syndrome) -> Tensor3:
    """Reshape a degree <= 2r+1 syndrome into the 3-tensor; the entry at
    (M_i, M_j, M''_k) is the syndrome entry of reduce(M_i M_j M''_k)."""
    params = S.params
    m, r, p = params.m, params.r, params.p
    idx_r = monomial_index(m, r, p)
    sidx = params.syndrome_index
    s = idx_r.size
    pairpos = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(i, s):
            ei = idx_r.monomials[i]
            ej = idx_r.monomials[j]
            prod = tuple(_red(a + b, p) for a, b in zip(ei, ej))
            pos = sidx.position[prod]
            pairpos[i][j] = pos
            pairpos[j][i] = pos
    f = params.field
    entries = S.entries
    slices = []
    slices.append(FFMatrix.from_rows(
        f, [[entries[pairpos[i][j]] for j in range(s)] for i in range(s)]))
    for v in range(m):
        vmap = sidx.var_mul(v)
        slices.append(FFMatrix.from_rows(
            f, [[entries[vmap[pairpos[i][j]]] for j in range(s)] for i in range(s)]))
    return Tensor3(params, tuple(slices))


def _red(e: int, p: int) -> int:
    if e <= 0:
        return 0
    return (e - 1) % (p - 1) + 1 if p > 2 else 1


@dataclass(frozen=True)
class FlatteningPair:
    """Weighting vectors a, b over the extension field, with the induced
    flattenings S^a = sum_k a[k] T[:, :, k] and likewise S^b."""

    ext: object
    a: tuple[int, ...]
    b: tuple[int, ...]

    def flatten(self, T: Tensor3) -> tuple[FFMatrix, FFMatrix]:
        return _flatten(T, self.ext, self.a), _flatten(T, self.ext, self.b)


def _flatten(T: Tensor3, F, weights) -> FFMatrix:
    s = T.side
    p = T.params.p
    rows = [[0] * s for _ in range(s)]
    if p == 2:
        for k, sl in enumerate(T.slices):
            w = weights[k]
            if not w:
                continue
            for i in range(s):
                rk = sl.packed_row(i)
                row = rows[i]
                while rk:
                    lsb = rk & -rk
                    row[lsb.bit_length() - 1] ^= w
                    rk ^= lsb
    else:
        add, mul = F.add, F.mul
        for k, sl in enumerate(T.slices):
            w = weights[k]
            if not w:
                continue
            for i in range(s):
                srow = sl._rows[i]
                row = rows[i]
                for j in range(s):
                    c = srow[j]
                    if c:
                        row[j] = add(row[j], mul(w, c))
    return FFMatrix.from_rows(F, rows)


def derandomized_flattening_vectors(F, alpha: int, m: int) -> tuple[tuple, tuple]:
    """The fixed weighting vectors a = (1, a, a^2, ..., a^m) and
    b = (a^{3m}, a^{3m+2}, ..., a^{5m}) for a primitive element a.

    For a primitive element of F_{2^D} with D > 6m these satisfy the
    distinctness conditions for every error set: the discriminating
    polynomials have degree <= 6m with F_2 coefficients, so they cannot
    vanish at an element whose minimal polynomial has degree D.
    """
    a = tuple(F.pow(alpha, i) for i in range(m + 1))
    b = tuple(F.pow(alpha, 3 * m + 2 * i) for i in range(m + 1))
    return a, b


def check_flattening_conditions(F, a, b, E: ErrorSet) -> bool:
    """Test-only: do the weights separate the error set?  True iff the 2t
    values <a, e^{<=1}>, <b, e^{<=1}> are nonzero and pairwise distinct and
    the ratios a_i / b_i are pairwise distinct."""
    avals, bvals = _weight_values(F, a, b, E)
    t = len(avals)
    allv = avals + bvals
    if any(v == 0 for v in allv) or len(set(allv)) < 2 * t:
        return False
    ratios = {F.mul(ai, F.inv(bi)) for ai, bi in zip(avals, bvals)}
    return len(ratios) == t


def _weight_values(F, a, b, E: ErrorSet):
    p = E.params.p
    avals, bvals = [], []
    for e in E.points:
        x = tensor_power(e, 1, p)
        if p == 2:
            av = bv = 0
            for k, bit in enumerate(x):
                if bit:
                    av ^= a[k]
                    bv ^= b[k]
        else:
            av = bv = 0
            for k, c in enumerate(x):
                if c:
                    av = F.add(av, F.mul(c, a[k]))
                    bv = F.add(bv, F.mul(c, b[k]))
        avals.append(av)
        bvals.append(bv)
    return avals, bvals


def decompose(S: Syndrome, mode: str = "randomized", rng=None,
              ext_degree: int | None = None, max_retries: int = 16,
              recover_full_x: bool = False) -> ErrorSet:
    """Recover the error locations from a syndrome.

    mode "randomized" draws the weighting vectors from the given rng and
    retries on unlucky draws; "derandomized" (F_2 only) uses the fixed
    primitive-element vectors and is bit-reproducible.  ext_degree defaults
    to 10m.  The recovered set is verified against the syndrome before it
    is returned; an unverifiable set raises DecodingFailure, which on a
    valid syndrome signals an error set without independent tensor powers.
    """
    params = S.params
    m = params.m
    T = tensor_from_syndrome(S)
    D = ext_degree if ext_degree is not None else 10 * m
    F = extension_field(params.p, D)
    if mode == "randomized":
        if rng is None:
            raise ValueError("randomized mode needs an rng")
        last = "no attempt made"
        for _ in range(max_retries):
            a = tuple(F.random_element(rng) for _ in range(m + 1))
            b = tuple(F.random_element(rng) for _ in range(m + 1))
            try:
                return _attempt(S, T, F, a, b, recover_full_x)
            except _RetryableFailure as exc:
                last = str(exc)
        raise DecodingFailure(
            f"decomposition failed after {max_retries} flattening draws: {last}")
    if mode == "derandomized":
        if params.p != 2:
            raise ValueError("derandomized flattening vectors are defined over F_2")
        alpha = find_primitive_element(F)
        a, b = derandomized_flattening_vectors(F, alpha, m)
        try:
            return _attempt(S, T, F, a, b, recover_full_x)
        except _RetryableFailure as exc:
            raise DecodingFailure(
                f"derandomized decomposition failed: {exc} "
                "(error set without independent tensor powers, or the "
                "extension degree is too small for the guarantee)") from exc
    raise ValueError(f"unknown mode {mode!r}")


def _attempt(S: Syndrome, T: Tensor3, F, a, b, recover_full_x: bool) -> ErrorSet:
    params = T.params
    m, p = params.m, params.p
    Sa = _flatten(T, F, a)
    Sb = _flatten(T, F, b)
    ta, tb = rank(Sa), rank(Sb)
    if ta != tb:
        raise _RetryableFailure(f"rank mismatch between flattenings ({ta} vs {tb})")
    t = ta
    if t == 0:
        if not S.is_zero():
            raise _RetryableFailure("zero flattening of a nonzero syndrome")
        return ErrorSet(params, ())
    K, L = full_rank_submatrix(Sa)
    try:
        M = Sa.submatrix(K, L) @ inverse(Sb.submatrix(K, L))
    except SingularMatrixError:
        raise _RetryableFailure("singular minor in the second flattening")
    try:
        pairs = eigen_decompose(M)
    except SpectrumNotSimpleError as exc:
        raise _RetryableFailure(str(exc))
    # columns of the eigenvector matrix are the tensor-power columns at
    # rows K, each scaled by an unknown field element
    XK = FFMatrix.from_rows(F, [list(v) for _, v in pairs]).transpose()
    try:
        XK_inv = inverse(XK)
    except SingularMatrixError:
        raise _RetryableFailure("eigenvector matrix singular")
    slice0 = T.slices[0]
    idx_r = monomial_index(m, params.r, p)

    def solve_row(i: int) -> tuple:
        rhs = tuple(slice0.at(krow, i) for krow in K)
        return XK_inv.mat_vec(rhs)

    u0 = solve_row(0)
    if any(v == 0 for v in u0):
        raise _RetryableFailure("zero scale on the constant row")
    scale_inv = tuple(F.inv(v) for v in u0)
    coords = []
    for v in range(1, m + 1):
        uv = solve_row(v)
        row = tuple(F.mul(x, si) for x, si in zip(uv, scale_inv))
        if any(not F.is_base(x) for x in row):
            raise _RetryableFailure("recovered coordinate outside the base field")
        coords.append(row)
    points = tuple(tuple(coords[v][j] for v in range(m)) for j in range(t))
    if len(set(points)) != t:
        raise _RetryableFailure("recovered points collide")
    if recover_full_x:
        for i in range(idx_r.size):
            ui = solve_row(i)
            expect_row = tuple(F.mul(x, si) for x, si in zip(ui, scale_inv))
            for j, e in enumerate(points):
                if expect_row[j] != idx_r.monomial_eval(i, e):
                    raise _RetryableFailure("full tensor-power recovery mismatch")
    try:
        E = ErrorSet(params, points)
    except ValueError as exc:
        raise _RetryableFailure(f"invalid point set: {exc}")
    if not _verify_against_syndrome(S, E):
        raise _RetryableFailure("recovered set does not reproduce the syndrome")
    return E


def _verify_against_syndrome(S: Syndrome, E: ErrorSet) -> bool:
    if S.params.p == 2:
        return syndrome_from_errors(E) == S
    mags = solve_error_magnitudes(S, E)
    return mags is not None and all(v != 0 for v in mags)
