"""Linear algebra over the two scalar backends.

Exact computations run on numpy object arrays of ``fractions.Fraction``;
float computations on float64 arrays, with every zero decision governed by
a :class:`TolerancePolicy`. Rank decisions in float mode use singular
values relative to the largest one; residual and identity checks use a
10 * rank_tol band relative to the data scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np
import scipy.linalg

from .errors import InputError, NumericalAmbiguityError
from .scalars import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    Mode,
    TolerancePolicy,
    as_fraction,
    eye_array,
    to_float_array,
    zeros_array,
)

# ---------------------------------------------------------------------------
# zero tests


def residual_band(tol: TolerancePolicy) -> float:
    # shared threshold for "this identity should hold" checks in float mode
    return 10.0 * tol.rank_tol


def scale_of(*arrays: np.ndarray) -> float:
    s = 1.0
    for a in arrays:
        if a.size:
            s = max(s, float(np.max(np.abs(np.asarray(a, dtype=np.float64)))))
    return s


def is_zero_matrix(a: np.ndarray, mode: Mode, tol: TolerancePolicy, scale: float = 1.0) -> bool:
    if a.size == 0:
        return True
    if mode == EXACT:
        return all(x == 0 for x in a.reshape(-1))
    return float(np.max(np.abs(a))) <= residual_band(tol) * max(1.0, scale)


def is_zero_scalar(x: Any, mode: Mode, tol: TolerancePolicy, scale: float = 1.0) -> bool:
    if mode == EXACT:
        return x == 0
    return abs(float(x)) <= residual_band(tol) * max(1.0, scale)


# ---------------------------------------------------------------------------
# exact elimination core (lists of Fractions)


def _fraction_rows(a: np.ndarray) -> list[list[Fraction]]:
    return [[as_fraction(x) for x in row] for row in a]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (nonzero rows, pivot cols)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _exact_rank_nullspace(a: np.ndarray) -> tuple[int, list[list[Fraction]]]:
    nrows, ncols = a.shape
    rref, pivots = _rref(_fraction_rows(a))
    rank = len(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    null: list[list[Fraction]] = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rref[r][f]
        null.append(v)
    return rank, null


def exact_solve(a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Solve a @ x = b exactly (b a vector or matrix); None if inconsistent.

    For underdetermined systems returns one particular solution (free
    variables set to zero).
    """
    m, n = a.shape
    bb = b.reshape(m, -1)
    k = bb.shape[1]
    aug = [[as_fraction(x) for x in row_a] + [as_fraction(x) for x in row_b]
           for row_a, row_b in zip(a, bb)]
    rref, pivots = _rref(aug)
    for row in rref:
        if all(row[c] == 0 for c in range(n)) and any(row[n + j] != 0 for j in range(k)):
            return None
    x = zeros_array((n, k), EXACT)
    for r, p in enumerate(pivots):
        if p >= n:
            return None  # pivot in the rhs block: inconsistent
        for j in range(k):
            x[p, j] = rref[r][n + j]
    return x.reshape((n,) + b.shape[1:]) if b.ndim == 1 else x


def exact_inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    x = exact_solve(a, eye_array(n, EXACT))
    if x is None:
        raise InputError("matrix is singular; cannot invert")
    # exact_solve already found pivots for every column iff rank n
    if matrix_rank(a, EXACT, DEFAULT_TOL) != n:
        raise InputError("matrix is singular; cannot invert")
    return x


def exact_det(a: np.ndarray) -> Fraction:
    rows = _fraction_rows(a)
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def charpoly_exact(a: np.ndarray) -> tuple[Fraction, ...]:
    """Characteristic polynomial det(X*I - a), constant term first.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = a.shape[0]
    coeffs_high = [Fraction(1)]  # X^n downward
    m = eye_array(n, EXACT)
    for k in range(1, n + 1):
        am = a @ m
        c = -Fraction(sum(am[i, i] for i in range(n)), k)
        coeffs_high.append(as_fraction(c))
        m = am + c * eye_array(n, EXACT)
    return tuple(reversed(coeffs_high))


# ---------------------------------------------------------------------------
# float core


def _float_rank_nullspace(a: np.ndarray, tol: TolerancePolicy) -> tuple[int, np.ndarray]:
    af = np.asarray(a, dtype=np.float64)
    _, s, vt = np.linalg.svd(af)
    smax = float(s[0]) if s.size else 0.0
    rank = int(np.sum(s > tol.rank_tol * smax))
    return rank, vt[rank:]


def float_solve(a: np.ndarray, b: np.ndarray, tol: TolerancePolicy) -> Optional[np.ndarray]:
    """Least-squares solve with residual check; None if inconsistent."""
    af = np.asarray(a, dtype=np.float64)
    bb = np.asarray(b, dtype=np.float64).reshape(a.shape[0], -1)
    x, *_ = np.linalg.lstsq(af, bb, rcond=None)
    res = af @ x - bb
    band = residual_band(tol) * max(1.0, scale_of(af), scale_of(bb))
    if res.size and float(np.max(np.abs(res))) > band:
        return None
    return x.reshape((a.shape[1],) + b.shape[1:]) if b.ndim == 1 else x


# ---------------------------------------------------------------------------
# mode-dispatching API


def matrix_rank(a: np.ndarray, mode: Mode, tol: TolerancePolicy) -> int:
    if mode == EXACT:
        rank, _ = _exact_rank_nullspace(a)
        return rank
    rank, _ = _float_rank_nullspace(a, tol)
    return rank


def solve_linear(a: np.ndarray, b: np.ndarray, mode: Mode, tol: TolerancePolicy) -> Optional[np.ndarray]:
    if mode == EXACT:
        return exact_solve(a, b)
    return float_solve(a, b, tol)


def invert(a: np.ndarray, mode: Mode, tol: TolerancePolicy) -> np.ndarray:
    if mode == EXACT:
        return exact_inverse(a)
    return np.linalg.inv(np.asarray(a, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace given by a basis; rows of ``basis`` are the vectors."""

    ambient_dim: int
    basis: np.ndarray  # shape (dim, ambient_dim)
    mode: Mode

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def __repr__(self) -> str:  # keep test failures readable
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, mode={self.mode})"


def make_subspace(rows: Any, ambient_dim: int, mode: Mode,
                  tol: TolerancePolicy = DEFAULT_TOL, verify: bool = True) -> Subspace:
    arr = np.array(rows, dtype=object if mode == EXACT else np.float64)
    if arr.size == 0:
        arr = arr.reshape(0, ambient_dim)
    if arr.ndim != 2 or arr.shape[1] != ambient_dim:
        raise InputError(f"basis rows must have length {ambient_dim}")
    if verify and arr.shape[0] and matrix_rank(arr, mode, tol) != arr.shape[0]:
        raise InputError("basis vectors are linearly dependent at the active tolerance")
    return Subspace(ambient_dim, arr, mode)


def zero_subspace(ambient_dim: int, mode: Mode) -> Subspace:
    return Subspace(ambient_dim, zeros_array((0, ambient_dim), mode), mode)


def full_subspace(ambient_dim: int, mode: Mode) -> Subspace:
    return Subspace(ambient_dim, eye_array(ambient_dim, mode), mode)


def rank_and_nullspace(a: np.ndarray, mode: Mode, tol: TolerancePolicy = DEFAULT_TOL) -> tuple[int, Subspace]:
    """Rank and a nullspace basis; rank + nullity = column count."""
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise InputError("empty matrix has no rank/nullspace decomposition")
    n = a.shape[1]
    if mode == EXACT:
        rank, null = _exact_rank_nullspace(a)
        rows = np.array(null, dtype=object).reshape(len(null), n) if null else zeros_array((0, n), EXACT)
        return rank, Subspace(n, rows, EXACT)
    rank, null = _float_rank_nullspace(a, tol)
    return rank, Subspace(n, np.asarray(null, dtype=np.float64).reshape(-1, n), FLOAT)


def coords_in_rowbasis(vecs: np.ndarray, basis_rows: np.ndarray, mode: Mode,
                       tol: TolerancePolicy) -> Optional[np.ndarray]:
    """Coefficients X with X @ basis_rows = vecs, or None if not in the span."""
    v = np.atleast_2d(vecs)
    if basis_rows.shape[0] == 0:
        if is_zero_matrix(v, mode, tol, scale=scale_of(v) if mode == FLOAT else 1.0):
            out = zeros_array((v.shape[0], 0), mode)
            return out[0] if vecs.ndim == 1 else out
        return None
    x = solve_linear(basis_rows.T, v.T, mode, tol)
    if x is None:
        return None
    xt = x.T
    return xt[0] if vecs.ndim == 1 else xt


def in_rowspan(vec: np.ndarray, basis_rows: np.ndarray, mode: Mode, tol: TolerancePolicy) -> bool:
    return coords_in_rowbasis(vec, basis_rows, mode, tol) is not None


def subspace_contains(outer: Subspace, inner: Subspace, tol: TolerancePolicy) -> bool:
    if inner.dim == 0:
        return True
    return coords_in_rowbasis(inner.basis, outer.basis, outer.mode, tol) is not None


def subspaces_equal(a: Subspace, b: Subspace, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    if a.mode != b.mode or a.ambient_dim != b.ambient_dim or a.dim != b.dim:
        return False
    return subspace_contains(a, b, tol) and subspace_contains(b, a, tol)


def subspace_sum(parts: Sequence[Subspace], tol: TolerancePolicy = DEFAULT_TOL,
                 verify_direct: bool = True) -> Subspace:
    parts = [p for p in parts if p.dim > 0]
    if not parts:
        raise InputError("subspace_sum needs at least one nonzero part")
    mode = parts[0].mode
    n = parts[0].ambient_dim
    rows = np.concatenate([p.basis for p in parts], axis=0)
    if verify_direct and matrix_rank(rows, mode, DEFAULT_TOL if mode == EXACT else tol) != rows.shape[0]:
        raise InputError("subspace sum is not direct")
    return Subspace(n, rows, mode)


def orthocomplement(s: Subspace, gram: np.ndarray, tol: TolerancePolicy = DEFAULT_TOL) -> Subspace:
    """Orthogonal complement of s with respect to the inner product gram."""
    if s.dim == 0:
        return full_subspace(s.ambient_dim, s.mode)
    _, null = rank_and_nullspace(s.basis @ gram, s.mode, tol)
    return null


def restricted_gram(basis_rows: np.ndarray, gram: np.ndarray) -> np.ndarray:
    return basis_rows @ gram @ basis_rows.T


def restrict_operator(a: np.ndarray, basis_rows: np.ndarray, mode: Mode,
                      tol: TolerancePolicy) -> Optional[np.ndarray]:
    """Matrix of operator a on the invariant subspace spanned by basis_rows.

    Column convention on coordinates; None when the span is not invariant.
    """
    images = basis_rows @ a.T  # row i = a(basis_i)
    m = coords_in_rowbasis(images, basis_rows, mode, tol)
    if m is None:
        return None
    return m.T


def integer_scaled(m: np.ndarray) -> np.ndarray:
    """Exact matrix times the lcm of its denominators, as plain int entries.

    Scaling by a positive rational changes no span, kernel, or commutation
    constraint, and products of int matrices skip the gcd normalization
    that dominates Fraction arithmetic in hot loops. Convert results back
    with exact_array before any row reduction: a pivot division on raw int
    entries would fall through to floats.
    """
    flat = m.reshape(-1)
    lcm = 1
    for x in flat:
        d = x.denominator
        lcm = lcm * d // math.gcd(lcm, d)
    return np.array([int(x * lcm) for x in flat], dtype=object).reshape(m.shape)


def canonical_rows(rows: np.ndarray, mode: Mode, tol: TolerancePolicy) -> np.ndarray:
    """Canonical basis of the row span: exact RREF, or sign-fixed float rows."""
    if rows.shape[0] == 0:
        return rows
    if mode == EXACT:
        rref, _ = _rref(_fraction_rows(rows))
        return np.array(rref, dtype=object).reshape(len(rref), rows.shape[1])
    out = np.array(rows, dtype=np.float64)
    for i in range(out.shape[0]):
        norm = np.linalg.norm(out[i])
        if norm > 0:
            out[i] = out[i] / norm
            j = int(np.argmax(np.abs(out[i])))
            if out[i][j] < 0:
                out[i] = -out[i]
    return out


def support_indices(rows: np.ndarray, mode: Mode, tol: TolerancePolicy) -> tuple[int, ...]:
    if rows.shape[0] == 0:
        return ()
    if mode == EXACT:
        return tuple(j for j in range(rows.shape[1]) if any(rows[i, j] != 0 for i in range(rows.shape[0])))
    af = np.abs(np.asarray(rows, dtype=np.float64))
    cut = residual_band(tol) * max(1.0, float(af.max()))
    return tuple(j for j in range(rows.shape[1]) if float(af[:, j].max()) > cut)


# ---------------------------------------------------------------------------
# incremental span bases (used by span_closure and the commutant filter)


class _ExactEchelon:
    """Primitive integer echelon rows with mutually reduced pivots."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @staticmethod
    def _primitive(v: list[int]) -> list[int]:
        g = 0
        for x in v:
            g = math.gcd(g, x)
            if g == 1:
                return v
        if g <= 1:
            return v
        return [x // g for x in v]

    def _to_int(self, vec: Iterable[Any]) -> list[int]:
        fr = [as_fraction(x) for x in vec]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        return [int(f * den) for f in fr]

    def residual(self, vec: Iterable[Any]) -> list[int]:
        v = self._to_int(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                g = math.gcd(row[p], v[p])
                a, b = row[p] // g, v[p] // g
                v = [a * x - b * y for x, y in zip(v, row)]
        return self._primitive(v)

    def insert(self, vec: Iterable[Any]) -> bool:
        v = self.residual(vec)
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        # back-reduce existing rows at the new pivot column
        for k, row in enumerate(self.rows):
            if row[pivot] != 0:
                g = math.gcd(v[pivot], row[pivot])
                a, b = v[pivot] // g, row[pivot] // g
                self.rows[k] = self._primitive([a * x - b * y for x, y in zip(row, v)])
        ins = 0
        while ins < len(self.pivots) and self.pivots[ins] < pivot:
            ins += 1
        self.rows.insert(ins, v)
        self.pivots.insert(ins, pivot)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


class _FloatOrtho:
    """Orthonormal row store with a relative-residual novelty test."""

    def __init__(self, width: int, tol: TolerancePolicy):
        self.width = width
        self.tol = tol
        self.rows: list[np.ndarray] = []

    def insert(self, vec: Iterable[Any]) -> bool:
        v = np.asarray(list(vec), dtype=np.float64)
        norm0 = float(np.linalg.norm(v))
        if norm0 == 0.0:
            return False
        r = v.copy()
        for _ in range(2):  # two Gram-Schmidt passes for stability
            for q in self.rows:
                r = r - np.dot(r, q) * q
        res = float(np.linalg.norm(r))
        if res <= self.tol.rank_tol * max(1.0, norm0):
            return False
        self.rows.append(r / res)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def new_span_store(width: int, mode: Mode, tol: TolerancePolicy):
    return _ExactEchelon(width) if mode == EXACT else _FloatOrtho(width, tol)


def span_closure(seed: Sequence[np.ndarray], step: Callable[[np.ndarray], Sequence[np.ndarray]],
                 mode: Mode, tol: TolerancePolicy = DEFAULT_TOL) -> Subspace:
    """Smallest subspace of matrix space containing ``seed`` and closed under ``step``.

    ``step`` must be linear. Returns the accepted generators as subspace
    rows (each row one flattened matrix), so callers can reshape them back.
    """
    if not seed:
        raise InputError("span_closure needs at least one seed matrix")
    shape = seed[0].shape
    width = int(np.prod(shape))
    store = new_span_store(width, mode, tol)
    accepted: list[np.ndarray] = []
    work = list(seed)
    while work:
        m = work.pop(0)
        if m.shape != shape:
            raise InputError("span_closure matrices must share one shape")
        if store.insert(m.reshape(-1)):
            accepted.append(m)
            work.extend(step(m))
    if not accepted:
        return zero_subspace(width, mode)
    rows = np.stack([m.reshape(-1) for m in accepted])
    return Subspace(width, rows, mode)


# ---------------------------------------------------------------------------
# eigensplitting of self-adjoint operators


@dataclass(frozen=True, eq=False)
class EigenSplit:
    """Eigenvalue -> eigenspace pairs of a self-adjoint operator."""

    pairs: tuple[tuple[Any, Subspace], ...]
    promoted_to_float: bool


def _rational_roots_with_multiplicity(coeffs: Sequence[Fraction]) -> Optional[list[tuple[Fraction, int]]]:
    """All roots with multiplicity if every root is rational, else None."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ic = [int(c * den) for c in coeffs]
    while len(ic) > 1 and ic[-1] == 0:
        ic.pop()
    deg = len(ic) - 1
    if deg == 0:
        return []
    work = list(ic)
    roots: list[tuple[Fraction, int]] = []

    def divisors(n: int) -> list[int]:
        n = abs(n)
        out = [d for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0]
        return sorted(set(out + [n // d for d in out]))

    def deflate(poly: list[int], root: Fraction) -> Optional[list[int]]:
        # synthetic division by (X - root); None if remainder nonzero
        out: list[Fraction] = []
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * root + c
            out.append(acc)
        if out[-1] != 0:
            return None
        quotient = list(reversed(out[:-1]))  # constant first
        den_q = 1
        for q in quotient:
            den_q = den_q * q.denominator // math.gcd(den_q, q.denominator)
        return [int(q * den_q) for q in quotient]

    while len(work) > 1:
        # strip root zero
        if work[0] == 0:
            mult = 0
            while len(work) > 1 and work[0] == 0:
                work = work[1:]
                mult += 1
            roots.append((Fraction(0), mult))
            continue
        found = None
        for q in divisors(work[-1]):
            for p in divisors(work[0]):
                for sign in (1, -1):
                    cand = Fraction(sign * p, q)
                    nxt = deflate(work, cand)
                    if nxt is not None:
                        found = (cand, nxt)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            return None  # an irrational (or complex) root remains
        root, work = found
        mult = 1
        while True:
            nxt = deflate(work, root)
            if nxt is None:
                break
            work = nxt
            mult += 1
        roots.append((root, mult))
    return roots


def _exact_selfadjoint_eigensplit(p: np.ndarray, tol: TolerancePolicy) -> Optional[list[tuple[Fraction, Subspace]]]:
    n = p.shape[0]
    coeffs = charpoly_exact(p)
    roots = _rational_roots_with_multiplicity(list(coeffs))
    if roots is None or sum(m for _, m in roots) != n:
        return None
    pairs: list[tuple[Fraction, Subspace]] = []
    for root, mult in sorted(roots):
        shifted = p - root * eye_array(n, EXACT)
        _, null = rank_and_nullspace(shifted, EXACT, tol)
        if null.dim != mult:
            return None  # defective: input was not self-adjoint after all
        pairs.append((root, null))
    return pairs


def _float_selfadjoint_eigensplit(p: np.ndarray, gram: np.ndarray,
                                  tol: TolerancePolicy) -> list[tuple[float, Subspace]]:
    n = p.shape[0]
    pf = np.asarray(p, dtype=np.float64)
    gf = np.asarray(gram, dtype=np.float64)
    s = gf @ pf
    s = (s + s.T) / 2.0
    gsym = (gf + gf.T) / 2.0
    w, v = scipy.linalg.eigh(s, gsym)
    merge = tol.eigen_cluster_tol * max(1.0, float(np.max(np.abs(w))) if n else 1.0)
    groups: list[list[int]] = [[0]]
    for i in range(1, n):
        if w[i] - w[i - 1] <= merge:
            groups[-1].append(i)
        else:
            gap = w[i] - w[i - 1]
            if gap <= 10.0 * merge:
                raise NumericalAmbiguityError(
                    f"eigenvalue gap {gap:.3e} sits inside the ambiguity band near the "
                    f"cluster tolerance {merge:.3e}",
                    suggestion="tighten eigen_cluster_tol or rerun with a different seed",
                )
            groups.append([i])
    pairs: list[tuple[float, Subspace]] = []
    for grp in groups:
        val = float(np.mean(w[grp]))
        rows = v[:, grp].T.astype(np.float64)
        pairs.append((val, Subspace(n, rows, FLOAT)))
    return pairs


def selfadjoint_eigensplit(p: np.ndarray, gram: np.ndarray, mode: Mode,
                           tol: TolerancePolicy = DEFAULT_TOL) -> EigenSplit:
    """Eigensplit of a gram-self-adjoint operator (column convention).

    Exact mode factors the characteristic polynomial over the rationals for
    ambient dimension <= 5 and promotes to float otherwise or when an
    irrational eigenvalue shows up; the promotion is flagged.
    """
    n = p.shape[0]
    if mode == EXACT:
        if n <= 5:
            pairs = _exact_selfadjoint_eigensplit(p, tol)
            if pairs is not None:
                return EigenSplit(tuple(pairs), False)
        fpairs = _float_selfadjoint_eigensplit(to_float_array(p), to_float_array(gram), tol)
        return EigenSplit(tuple(fpairs), True)
    return EigenSplit(tuple(_float_selfadjoint_eigensplit(p, gram, tol)), False)


def symmetric_eigensplit(m: np.ndarray, mode: Mode, tol: TolerancePolicy = DEFAULT_TOL) -> EigenSplit:
    """Eigensplit of a plain symmetric matrix; rejects asymmetric input."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError("symmetric_eigensplit expects a square matrix")
    diff = m - m.T
    sc = scale_of(m) if mode == FLOAT else 1.0
    if not is_zero_matrix(diff, mode, tol, scale=sc):
        raise InputError("matrix is not symmetric")
    return selfadjoint_eigensplit(m, eye_array(m.shape[0], mode), mode, tol)
