"""Polynomial-space syndrome decoder.

From the syndrome alone, space_roots recovers the linear space V of all
reduced polynomials of degree <= r+1 vanishing on the error set: a
polynomial A lies in V exactly when sum_M a_M s_{reduce(M M')} = 0 for
every monomial M' of degree <= r, because that system says the weighted
evaluations of A on the error set are orthogonal to the independent
tensor powers.

The error set is then the set of common zeroes of V.  find_roots isolates
one point at a time behind a random affine change of coordinates of
codimension ~ log2(t) (Valiant-Vazirani), reads it off with
find_unique_root, and repeats; det_find_roots instead recurses on the
last variable's value, pruning branches whose restricted space has
codimension zero.
"""

from __future__ import annotations

import math
import warnings

from .code import (CodeParams, DecodingFailure, ErrorSet, Syndrome,
                   solve_error_magnitudes, syndrome_from_errors,
                   syndrome_from_weighted_errors, tensor_power_matrix)
from .fields import prime_field
from .linalg import FFMatrix, inverse, nullspace_basis, rank
from .polynomials import PolySpace, monomial_index


class StructuralInconsistencyError(DecodingFailure):
    """A restricted space's codimension disagrees with the points found
    under it: the input space was not a full vanishing space of a set with
    independent tensor powers."""


class IsolationBoundWarning(UserWarning):
    """t exceeds the comfortable isolation-lemma hypothesis for this m."""


class PartialRecoveryWarning(UserWarning):
    """The iteration budget ran out before codim(V) points were found."""


def space_roots(S: Syndrome) -> PolySpace:
    """The space of all reduced polynomials of degree <= r+1 that vanish
    on the error set, computed from the syndrome alone.

    Nullspace of the |M_r| x |M_{r+1}| system whose (M', M) entry is the
    syndrome entry of reduce(M * M')."""
    params = S.params
    m, r, p = params.m, params.r, params.p
    idx_r = monomial_index(m, r, p)
    idx_rp1 = monomial_index(m, r + 1, p)
    sidx = params.syndrome_index
    entries = S.entries
    rows = []
    for i in range(idx_r.size):
        mi = idx_r.monomials[i]
        row = [0] * idx_rp1.size
        for j in range(idx_rp1.size):
            mj = idx_rp1.monomials[j]
            prod = tuple(_red(a + b, p) for a, b in zip(mi, mj))
            row[j] = entries[sidx.position[prod]]
        rows.append(row)
    mat = FFMatrix.from_rows(params.field, rows)
    return PolySpace.from_matrix(idx_rp1, nullspace_basis(mat))


def _red(e: int, p: int) -> int:
    if e <= 0:
        return 0
    return (e - 1) % (p - 1) + 1 if p > 2 else 1


def count_errors(V: PolySpace) -> int:
    """codim(V); equals the number of error points when V is their full
    vanishing space."""
    return V.codim


def find_unique_root(V: PolySpace) -> tuple | None:
    """If for every variable exactly one of X_j - a (a in F_p) lies in V,
    the point read off those constants; otherwise None.

    Recovers the point when V is the full vanishing space of a single
    point."""
    idx = V.index
    p = idx.p
    point = []
    for j in range(idx.m):
        var_exp = [0] * idx.m
        var_exp[j] = 1
        var_pos = idx.position[tuple(var_exp)]
        hit = None
        for a in range(p):
            if p == 2:
                vec = (1 << var_pos) | (a & 1)
            else:
                lst = [0] * idx.size
                lst[var_pos] = 1
                lst[0] = (-a) % p
                vec = tuple(lst)
            if V.contains_vec(vec):
                if hit is not None:
                    return None
                hit = a
        if hit is None:
            return None
        point.append(hit)
    return tuple(point)


# ---------------------------------------------------------------------------
# Valiant-Vazirani isolation.


def isolation_codim(t: int, m: int) -> int:
    """l = ceil(log2 t) + 1, clamped to [1, m-1]: the constraint count
    satisfies 2 <= 2^l / t < 4 before clamping."""
    if t < 1:
        raise ValueError("need t >= 1")
    l = max(1, math.ceil(math.log2(t)) + 1)
    return max(1, min(l, m - 1))


def vv_sample(m: int, t: int, rng, p: int = 2):
    """l uniformly random linearly independent constraint vectors and
    uniform constants; each point of a hidden t-set satisfies all
    constraints alone with probability >= 1/(7t) at comfortable sizes.

    When t exceeds p^{m/2}/100 the lemma hypothesis is not met; that is
    reported as a warning and sampling proceeds (the algorithm degrades
    gracefully and the decoders only need isolation often enough)."""
    if (100 * t) ** 2 > p ** m:
        warnings.warn(
            f"isolation bound hypothesis violated: t={t} > p^(m/2)/100 at m={m}",
            IsolationBoundWarning, stacklevel=2)
    l = isolation_codim(t, m)
    f = prime_field(p)
    while True:
        vecs = [tuple(rng.randrange(p) for _ in range(m)) for _ in range(l)]
        if rank(FFMatrix.from_rows(f, vecs)) == l:
            break
    consts = tuple(rng.randrange(p) for _ in range(l))
    return tuple(vecs), consts


def _isolation_affine_map(m: int, p: int, vecs, consts, rng):
    """An invertible affine change of coordinates x = M x' + b sending the
    coordinate subspace {last l coords = 0} onto the solution set of the
    sampled constraints <a_i, x> = b_i."""
    f = prime_field(p)
    l = len(vecs)
    while True:
        top = [tuple(rng.randrange(p) for _ in range(m)) for _ in range(m - l)]
        R = FFMatrix.from_rows(f, top + list(vecs))
        if rank(R) == m:
            break
    M = inverse(R)
    full = [0] * (m - l) + list(consts)
    b = M.mat_vec(full)
    return M, b


def find_roots(V: PolySpace, rng, max_iterations: int | None = None) -> ErrorSet:
    """All common zeroes of a full vanishing space, by repeated random
    isolation; finds the whole set with probability >= 0.99 within the
    default budget of 100 t log2(t) iterations.

    Terminates early once codim(V) distinct points are found; if the
    budget runs out first, the partial set is returned with a warning."""
    idx = V.index
    m, p = idx.m, idx.p
    params = CodeParams(m, idx.t - 1, p)
    t = V.codim
    if t == 0:
        return ErrorSet(params, ())
    direct = find_unique_root(V)
    if direct is not None:
        return ErrorSet(params, (direct,))
    l = isolation_codim(t, m)
    budget = max_iterations
    if budget is None:
        budget = math.ceil(100 * t * math.log2(t)) if t > 1 else 0
    basis_polys = V.polys()
    f = prime_field(p)
    found: set = set()
    for _ in range(budget):
        vecs, consts = vv_sample(m, t, rng, p)
        M, b = _isolation_affine_map(m, p, vecs, consts, rng)
        W = V.affine_image(M, b)
        for _ in range(l):
            W = W.restrict_last_zero()
        cand = find_unique_root(W)
        if cand is None:
            continue
        x = cand + (0,) * l
        e = tuple(f.add(mv, bv) for mv, bv in zip(M.mat_vec(x), b))
        if e in found:
            continue
        if any(P.evaluate(e) != 0 for P in basis_polys):
            continue  # possible only when V is not a full vanishing space
        found.add(e)
        if len(found) == t:
            break
    if len(found) < t:
        warnings.warn(
            f"isolation budget exhausted with {len(found)} of {t} roots found",
            PartialRecoveryWarning, stacklevel=2)
    return ErrorSet(params, tuple(found))


def det_find_roots(V: PolySpace) -> ErrorSet:
    """All common zeroes of a full vanishing space, deterministically, by
    recursing on the last variable's value and pruning codimension-zero
    branches.  Codimension counts are conserved down the tree on valid
    inputs; a mismatch raises StructuralInconsistencyError."""
    idx = V.index
    params = CodeParams(idx.m, idx.t - 1, idx.p)
    points = _det_rec(V, idx.m, idx.p)
    return ErrorSet(params, tuple(points))


def _det_rec(space: PolySpace, m_left: int, p: int) -> list[tuple]:
    t = space.codim
    if t == 0:
        return []
    if m_left == 0:
        if t != 1:
            raise StructuralInconsistencyError(
                "zero-variable space with codimension > 1")
        return [()]
    if t == 1:
        e = find_unique_root(space)
        if e is None:
            raise StructuralInconsistencyError(
                "codimension 1 but no unique read-off point")
        return [e]
    out: list[tuple] = []
    branch_total = 0
    for c in range(p):
        sub = space.restrict_last_const(c)
        tc = sub.codim
        if tc:
            sub_points = _det_rec(sub, m_left - 1, p)
            out.extend(q + (c,) for q in sub_points)
            branch_total += tc
    if branch_total != t:
        raise StructuralInconsistencyError(
            f"branch codimensions sum to {branch_total}, parent has {t}")
    return out


# ---------------------------------------------------------------------------
# End-to-end decoding.


def locate_and_correct(S: Syndrome, algorithm: str = "polyspace",
                       mode: str = "det", rng=None,
                       ext_degree: int | None = None) -> tuple[ErrorSet, Syndrome]:
    """Locate the error set and cancel it from the syndrome.

    Over F_2 the located tensor powers are subtracted directly; over odd
    fields the unknown error magnitudes are solved first (unique, since
    the tensor-power columns are independent).  A nonzero residual raises
    DecodingFailure."""
    E = run_decoder(S, algorithm, mode, rng, ext_degree)
    params = S.params
    if params.p == 2:
        residual = S - syndrome_from_errors(E)
    else:
        mags = solve_error_magnitudes(S, E)
        if mags is None:
            raise DecodingFailure("located set cannot explain the syndrome")
        residual = S - syndrome_from_weighted_errors(E, mags)
    if not residual.is_zero():
        raise DecodingFailure("nonzero residual after correction")
    return E, residual


def run_decoder(S: Syndrome, algorithm: str = "polyspace", mode: str = "det",
                rng=None, ext_degree: int | None = None) -> ErrorSet:
    """Dispatch to one of the decoders by name."""
    if algorithm == "polyspace":
        V = space_roots(S)
        if mode == "det":
            return det_find_roots(V)
        if mode == "rand":
            if rng is None:
                raise ValueError("randomized root finding needs an rng")
            return find_roots(V, rng)
        raise ValueError(f"polyspace mode must be rand or det, got {mode!r}")
    if algorithm == "jennrich":
        from .jennrich import decompose
        if mode == "rand":
            return decompose(S, "randomized", rng, ext_degree)
        if mode == "derand":
            return decompose(S, "derandomized", ext_degree=ext_degree)
        raise ValueError(f"jennrich mode must be rand or derand, got {mode!r}")
    raise ValueError(f"unknown algorithm {algorithm!r}")


def check_ur_preserved(E: ErrorSet, M, b) -> bool:
    """Test-only: does the invertible affine map x -> Mx + b preserve the
    rank of the tensor-power matrix of E (at the decoder's order r)?"""
    params = E.params
    f = params.field
    Mm = M if isinstance(M, FFMatrix) else FFMatrix.from_rows(f, M)
    if Mm.nrows != Mm.ncols or rank(Mm) != Mm.nrows:
        raise ValueError("affine map must be invertible")
    mapped = [tuple(f.add(x, bb) for x, bb in zip(Mm.mat_vec(e), b))
              for e in E.points]
    before = rank(tensor_power_matrix(E.points, params.r, params.p, params.m))
    after = rank(tensor_power_matrix(mapped, params.r, params.p, params.m))
    return before == after
