"""Metric Lie algebras and their invariant connections.

Conventions, fixed once for the whole package:

* structure tensor ``c`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``;
* operators act on column coordinate vectors, so the matrix of ``ad_{e_i}``
  is ``c[i].T``;
* connection coefficient tensors follow the same layout as ``c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from .errors import InputError
from .linalg import (
    Subspace,
    exact_det,
    in_rowspan,
    invert,
    is_zero_matrix,
    residual_band,
    scale_of,
)
from .scalars import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    Mode,
    TolerancePolicy,
    array_for_mode,
    check_mode,
    eye_array,
    to_float_array,
    zeros_array,
)

LEVI_CIVITA = "levi_civita"
WEYL = "weyl"


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    """A Lie algebra with a chosen basis and a positive definite inner product."""

    bracket: np.ndarray  # (n, n, n)
    gram: np.ndarray  # (n, n)
    mode: Mode
    basis_names: tuple[str, ...]
    tol: TolerancePolicy

    @property
    def dim(self) -> int:
        return int(self.bracket.shape[0])

    def __repr__(self) -> str:
        return f"MetricLieAlgebra(dim={self.dim}, mode={self.mode})"


def bracket_table(n: int, entries: Mapping[tuple[int, int], Any], mode: Mode = EXACT) -> np.ndarray:
    """Structure tensor from a sparse table of brackets of basis vectors.

    ``entries[(i, j)]`` is the coordinate vector of ``[e_i, e_j]``, either a
    full length-n sequence or a dict {index: coefficient}; the antisymmetric
    counterpart is filled in automatically.
    """
    c = zeros_array((n, n, n), mode)
    for (i, j), vec in entries.items():
        if i == j:
            raise InputError("bracket of a basis vector with itself must be omitted")
        if isinstance(vec, Mapping):
            full = zeros_array((n,), mode)
            for k, val in vec.items():
                full[k] = array_for_mode([val], mode)[0]
            v = full
        else:
            v = array_for_mode(vec, mode)
        if v.shape != (n,):
            raise InputError(f"bracket entry ({i}, {j}) must be a length-{n} vector")
        c[i, j, :] = v
        c[j, i, :] = -v
    return c


def make_algebra(bracket: Any, gram: Any = None, mode: Mode = EXACT,
                 basis_names: Optional[Sequence[str]] = None,
                 tol: TolerancePolicy = DEFAULT_TOL, check: bool = True) -> MetricLieAlgebra:
    check_mode(mode)
    c = bracket if isinstance(bracket, np.ndarray) else array_for_mode(bracket, mode)
    if c.ndim != 3 or len(set(c.shape)) != 1:
        raise InputError("bracket tensor must have shape (n, n, n)")
    n = c.shape[0]
    if gram is None:
        g = eye_array(n, mode)
    else:
        g = gram if isinstance(gram, np.ndarray) else array_for_mode(gram, mode)
    if g.shape != (n, n):
        raise InputError(f"gram matrix must have shape ({n}, {n})")
    if basis_names is None:
        names = tuple(f"e{i}" for i in range(n))
    else:
        names = tuple(str(s) for s in basis_names)
        if len(names) != n:
            raise InputError(f"expected {n} basis names, got {len(names)}")
    alg = MetricLieAlgebra(c, g, mode, names, tol)
    if check:
        report = validate_algebra(alg)
        if not report.passed:
            raise InputError("invalid algebra data: " + "; ".join(report.failures()))
    return alg


def to_float_algebra(g: MetricLieAlgebra) -> MetricLieAlgebra:
    if g.mode == FLOAT:
        return g
    return MetricLieAlgebra(to_float_array(g.bracket), to_float_array(g.gram),
                            FLOAT, g.basis_names, g.tol)


def with_gram(g: MetricLieAlgebra, gram: Any) -> MetricLieAlgebra:
    new = gram if isinstance(gram, np.ndarray) else array_for_mode(gram, g.mode)
    if new.shape != (g.dim, g.dim):
        raise InputError("replacement gram has the wrong shape")
    return MetricLieAlgebra(g.bracket, new, g.mode, g.basis_names, g.tol)


def direct_sum_algebra(a: MetricLieAlgebra, b: MetricLieAlgebra) -> MetricLieAlgebra:
    """Orthogonal direct sum of two metric Lie algebras."""
    if a.mode != b.mode:
        raise InputError("direct sum requires matching scalar modes")
    n1, n2 = a.dim, b.dim
    n = n1 + n2
    c = zeros_array((n, n, n), a.mode)
    c[:n1, :n1, :n1] = a.bracket
    c[n1:, n1:, n1:] = b.bracket
    g = zeros_array((n, n), a.mode)
    g[:n1, :n1] = a.gram
    g[n1:, n1:] = b.gram
    left = a.basis_names
    right = tuple(nm + "'" if nm in left else nm for nm in b.basis_names)
    return MetricLieAlgebra(c, g, a.mode, left + right, a.tol)


def transform_algebra(g: MetricLieAlgebra, q: np.ndarray) -> MetricLieAlgebra:
    """Pull the algebra back along a new basis; row i of q is the new e_i.

    The result is isomorphic and isometric to the input, with gram
    q G q^T, so it has the same factor dimensions, holonomy dimension and
    every other invariant.
    """
    if q.shape != (g.dim, g.dim):
        raise InputError("change of basis matrix has the wrong shape")
    qinv = invert(q, g.mode, g.tol)
    n = g.dim
    c = zeros_array((n, n, n), g.mode)
    for i in range(n):
        for j in range(i + 1, n):
            v = bracket_vec(g, q[i], q[j]) @ qinv
            c[i, j, :] = v
            c[j, i, :] = -v
    return MetricLieAlgebra(c, q @ g.gram @ q.T, g.mode, g.basis_names, g.tol)


# ---------------------------------------------------------------------------
# bracket operations


def bracket_vec(g: MetricLieAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    t = np.tensordot(x, g.bracket, axes=(0, 0))  # t[j, k] = sum_i x_i c[i,j,k]
    return np.tensordot(y, t, axes=(0, 0))


def ad_matrix(g: MetricLieAlgebra, i: int) -> np.ndarray:
    return g.bracket[i].T


def ad_vec(g: MetricLieAlgebra, x: np.ndarray) -> np.ndarray:
    return np.tensordot(x, g.bracket, axes=(0, 0)).T


def inner(g: MetricLieAlgebra, x: np.ndarray, y: np.ndarray):
    return x @ g.gram @ y


def is_subalgebra(g: MetricLieAlgebra, s: Subspace) -> bool:
    rows = s.basis
    for i in range(rows.shape[0]):
        for j in range(i + 1, rows.shape[0]):
            if not in_rowspan(bracket_vec(g, rows[i], rows[j]), rows, g.mode, g.tol):
                return False
    return True


def is_ideal(g: MetricLieAlgebra, s: Subspace) -> bool:
    rows = s.basis
    for i in range(g.dim):
        basis_vec = eye_array(g.dim, g.mode)[i]
        for j in range(rows.shape[0]):
            if not in_rowspan(bracket_vec(g, basis_vec, rows[j]), rows, g.mode, g.tol):
                return False
    return True


def is_unimodular(g: MetricLieAlgebra) -> bool:
    sc = scale_of(g.bracket) if g.mode == FLOAT else 1.0
    for i in range(g.dim):
        trace = sum(g.bracket[i, j, j] for j in range(g.dim))
        if g.mode == EXACT:
            if trace != 0:
                return False
        elif abs(float(trace)) > residual_band(g.tol) * max(1.0, sc):
            return False
    return True


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    antisymmetry_violations: tuple[tuple[int, int], ...]
    jacobi_violations: tuple[tuple[int, int, int], ...]
    gram_symmetric: bool
    gram_positive_definite: bool

    @property
    def passed(self) -> bool:
        return (not self.antisymmetry_violations and not self.jacobi_violations
                and self.gram_symmetric and self.gram_positive_definite)

    def failures(self) -> list[str]:
        out = []
        if self.antisymmetry_violations:
            out.append(f"antisymmetry fails at pairs {list(self.antisymmetry_violations)}")
        if self.jacobi_violations:
            out.append(f"jacobi identity fails at triples {list(self.jacobi_violations)}")
        if not self.gram_symmetric:
            out.append("gram matrix is not symmetric")
        if not self.gram_positive_definite:
            out.append("gram matrix is not positive definite")
        return out

    def summary(self) -> str:
        if self.passed:
            return "valid metric Lie algebra"
        return "; ".join(self.failures())


def _is_positive_definite(gram: np.ndarray, mode: Mode, tol: TolerancePolicy) -> bool:
    n = gram.shape[0]
    if mode == EXACT:
        for k in range(1, n + 1):
            if exact_det(gram[:k, :k]) <= 0:
                return False
        return True
    w = np.linalg.eigvalsh(np.asarray(gram, dtype=np.float64))
    top = float(np.max(np.abs(w))) if n else 0.0
    return bool(n == 0 or w[0] > tol.rank_tol * max(1.0, top))


def validate_algebra(g: MetricLieAlgebra) -> ValidationReport:
    n = g.dim
    c = g.bracket
    sc = scale_of(c) if g.mode == FLOAT else 1.0
    anti = []
    for i in range(n):
        for j in range(i, n):
            if not is_zero_matrix(c[i, j, :] + c[j, i, :], g.mode, g.tol, scale=sc):
                anti.append((i, j))
    # T[i, j, k, m] = sum_l c[i, j, l] c[l, k, m]
    t = np.tensordot(c, c, axes=(2, 0))
    sc2 = sc * sc
    jac = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = t[i, j, k, :] + t[j, k, i, :] + t[k, i, j, :]
                if not is_zero_matrix(total, g.mode, g.tol, scale=max(1.0, sc2)):
                    jac.append((i, j, k))
    gram_sym = is_zero_matrix(g.gram - g.gram.T, g.mode, g.tol,
                              scale=scale_of(g.gram) if g.mode == FLOAT else 1.0)
    gram_pd = gram_sym and _is_positive_definite(g.gram, g.mode, g.tol)
    return ValidationReport(tuple(anti), tuple(jac), gram_sym, gram_pd)


# ---------------------------------------------------------------------------
# invariant connections


@dataclass(frozen=True, eq=False)
class InvariantConnection:
    """Left-invariant connection given by its coefficient tensor.

    ``coeffs[i, j, k]`` is the ``e_k`` component of the derivative of ``e_j``
    along ``e_i``.
    """

    coeffs: np.ndarray  # (n, n, n)
    kind: str
    mode: Mode

    @property
    def dim(self) -> int:
        return int(self.coeffs.shape[0])

    def operator(self, i: int) -> np.ndarray:
        return self.coeffs[i].T

    def derivative_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        t = np.tensordot(x, self.coeffs, axes=(0, 0))
        return np.tensordot(y, t, axes=(0, 0))

    def operator_vec(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(x, self.coeffs, axes=(0, 0)).T


def levi_civita(g: MetricLieAlgebra) -> InvariantConnection:
    """The unique torsion-free metric connection.

    Defined by 2<D_x y, z> = <[x,y],z> + <[z,x],y> - <[y,z],x> on
    left-invariant fields.
    """
    b = np.tensordot(g.bracket, g.gram, axes=(2, 0))  # b[i,j,z] = <[e_i,e_j], e_z>
    n = g.dim
    rhs = zeros_array((n, n, n), g.mode)
    for i in range(n):
        for j in range(n):
            for z in range(n):
                rhs[i, j, z] = b[i, j, z] + b[z, i, j] - b[j, z, i]
    ginv = invert(g.gram, g.mode, g.tol)
    half = array_for_mode(["1/2"] if g.mode == EXACT else [0.5], g.mode)[0]
    coeffs = np.tensordot(rhs, ginv, axes=(2, 0)) * half
    return InvariantConnection(coeffs, LEVI_CIVITA, g.mode)


def curvature_operator(g: MetricLieAlgebra, conn: InvariantConnection,
                       i: int, j: int) -> np.ndarray:
    """Matrix of R(e_i, e_j) = [D_i, D_j] - D_{[e_i, e_j]}."""
    a_i = conn.operator(i)
    a_j = conn.operator(j)
    mixed = conn.operator_vec(g.bracket[i, j, :])
    return a_i @ a_j - a_j @ a_i - mixed


def torsion_defect(g: MetricLieAlgebra, conn: InvariantConnection):
    """Largest component of D_x y - D_y x - [x, y] over basis pairs."""
    d = conn.coeffs - np.transpose(conn.coeffs, (1, 0, 2)) - g.bracket
    if g.mode == EXACT:
        return max((abs(x) for x in d.reshape(-1)), default=0)
    return float(np.max(np.abs(d))) if d.size else 0.0


def metric_defect(g: MetricLieAlgebra, conn: InvariantConnection):
    """Largest component of G A_i + A_i^T G over basis directions."""
    worst = None
    for i in range(g.dim):
        a = conn.operator(i)
        d = g.gram @ a + a.T @ g.gram
        m = max((abs(x) for x in d.reshape(-1)), default=0) if g.mode == EXACT \
            else float(np.max(np.abs(d)))
        worst = m if worst is None or m > worst else worst
    return worst if worst is not None else (0 if g.mode == EXACT else 0.0)
