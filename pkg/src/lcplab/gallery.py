"""Worked examples with their expected verdicts.

Four metric Lie algebras exercise every branch of the analysis: the
smallest solvable model, its product with a line, a five-dimensional
solvable algebra with an irrational rotation rate that forces float
mode, and a fourteen-dimensional semidirect sum with semisimple part.
Entries are cached and shared; treat them as read-only.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InputError
from .lattice import LatticeData, companion
from .lcp import LcpData, make_lcp_data
from .liealg import (MetricLieAlgebra, bracket_table, direct_sum_algebra,
                     make_algebra)
from .scalars import EXACT, FLOAT, Mode, as_fraction, zeros_array

__all__ = [
    "ExpectedVerdicts", "GalleryEntry", "semidirect_sum",
    "fundamental_example", "product_example",
    "strongly_irreducible_example", "sl_example", "all_entries",
    "QUARTIC", "expanding_rate", "rotation_rate",
]


@dataclass(frozen=True)
class ExpectedVerdicts:
    """Ground truth a test run is checked against."""

    mode: Mode
    unimodular: bool
    factor_dims: tuple[int, ...]
    factor_is_flat: tuple[bool, ...]
    holonomy_dim: Optional[int]
    decomposable: Optional[bool]
    principal_dim: Optional[int]
    q: Optional[int]
    dim_bound_satisfied: Optional[bool]
    touched_factors: Optional[tuple[int, ...]] = None


@dataclass(frozen=True, eq=False)
class GalleryEntry:
    name: str
    description: str
    algebra: MetricLieAlgebra
    lcp: Optional[LcpData]
    expected: ExpectedVerdicts
    lattice: Optional[LatticeData] = None
    note: Optional[str] = None


def semidirect_sum(h: MetricLieAlgebra, rep: Sequence[np.ndarray],
                   v_dim: int, v_gram: Optional[np.ndarray] = None,
                   v_names: Optional[Sequence[str]] = None,
                   check: bool = True) -> MetricLieAlgebra:
    """Abelian ideal of dimension v_dim extended by h acting through rep.

    rep[k] is the matrix by which the k-th basis element of h acts on the
    ideal. The map must be a Lie algebra homomorphism; an action twisted
    the wrong way round (an anti-homomorphism) fails the Jacobi identity
    in the extension and is rejected here by name, since the defect is
    invisible in any single rep matrix.
    """
    if v_dim < 1:
        raise InputError("ideal dimension must be positive")
    if len(rep) != h.dim:
        raise InputError(f"need one action matrix per basis element of h: "
                         f"got {len(rep)}, expected {h.dim}")
    mats = []
    for k, r in enumerate(rep):
        arr = np.array(r, dtype=object if h.mode is EXACT else np.float64)
        if arr.shape != (v_dim, v_dim):
            raise InputError(f"action matrix {k} has shape {arr.shape}, "
                             f"expected {(v_dim, v_dim)}")
        if h.mode is EXACT:
            conv = np.empty(arr.shape, dtype=object)
            for i in range(v_dim):
                for j in range(v_dim):
                    conv[i, j] = as_fraction(arr[i, j])
            arr = conv
        mats.append(arr)
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            commutator = mats[i] @ mats[j] - mats[j] @ mats[i]
            expected = zeros_array((v_dim, v_dim), h.mode)
            for k in range(h.dim):
                expected = expected + h.bracket[i, j, k] * mats[k]
            defect = commutator - expected
            bad = max((abs(float(x)) for x in defect.flat), default=0.0)
            if bad > (0.0 if h.mode is EXACT else 1e-12 * max(
                    1.0, max(abs(float(x)) for m in mats for x in m.flat))):
                ni, nj = h.basis_names[i], h.basis_names[j]
                raise InputError(
                    f"action is not a homomorphism: [rep({ni}), rep({nj})] "
                    f"differs from rep([{ni}, {nj}])")
    n = v_dim + h.dim
    c = zeros_array((n, n, n), h.mode)
    for k in range(h.dim):
        for j in range(v_dim):
            for m in range(v_dim):
                val = mats[k][m, j]
                c[v_dim + k, j, m] = val
                c[j, v_dim + k, m] = -val
    for i in range(h.dim):
        for j in range(h.dim):
            for k in range(h.dim):
                c[v_dim + i, v_dim + j, v_dim + k] = h.bracket[i, j, k]
    gram = zeros_array((n, n), h.mode)
    if v_gram is None:
        for i in range(v_dim):
            gram[i, i] = as_fraction(1) if h.mode is EXACT else 1.0
    else:
        vg = np.array(v_gram, dtype=object if h.mode is EXACT else np.float64)
        if vg.shape != (v_dim, v_dim):
            raise InputError("v_gram has the wrong shape")
        for i in range(v_dim):
            for j in range(v_dim):
                gram[i, j] = (as_fraction(vg[i, j]) if h.mode is EXACT
                              else float(vg[i, j]))
    gram[v_dim:, v_dim:] = h.gram
    if v_names is None:
        v_names = tuple(f"v{i}" for i in range(v_dim))
    names = tuple(v_names) + tuple(h.basis_names)
    return make_algebra(c, gram=gram, mode=h.mode, basis_names=names,
                        tol=h.tol, check=check)


def _line(name: str = "s") -> MetricLieAlgebra:
    c = bracket_table(1, {}, EXACT)
    return make_algebra(c, basis_names=(name,))


@functools.cache
def fundamental_example() -> GalleryEntry:
    """Plane semidirect line, weights +1 and -1: the smallest model."""
    c = bracket_table(3, {(2, 0): {0: 1}, (2, 1): {1: -1}}, EXACT)
    g = make_algebra(c, basis_names=("X", "Y", "T"))
    lcp = make_lcp_data(
        g,
        ideal_rows=[[1, 0, 0]],
        lee_covector=[0, 0, 1],
        complement_rows=[[0, 1, 0], [0, 0, 1]],
    )
    expected = ExpectedVerdicts(
        mode=EXACT, unimodular=True,
        factor_dims=(3,), factor_is_flat=(False,),
        holonomy_dim=3, decomposable=False,
        principal_dim=3, q=1, dim_bound_satisfied=True,
        touched_factors=(0,),
    )
    lattice = LatticeData(
        integer_matrix=np.array([[1, 1], [1, 2]], dtype=object),
        t0=math.log((3.0 + math.sqrt(5.0)) / 2.0),
        translation_parts=None,
    )
    return GalleryEntry(
        name="fundamental",
        description="three-dimensional solvable model with a parallel "
                    "degenerate line field",
        algebra=g, lcp=lcp, expected=expected, lattice=lattice)


@functools.cache
def product_example() -> GalleryEntry:
    """The fundamental model times a flat line."""
    base = fundamental_example().algebra
    g = direct_sum_algebra(base, _line())
    lcp = make_lcp_data(
        g,
        ideal_rows=[[1, 0, 0, 0]],
        lee_covector=[0, 0, 1, 0],
        complement_rows=[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    )
    expected = ExpectedVerdicts(
        mode=EXACT, unimodular=True,
        factor_dims=(1, 3), factor_is_flat=(True, False),
        holonomy_dim=3, decomposable=True,
        principal_dim=3, q=1, dim_bound_satisfied=True,
        touched_factors=(1,),
    )
    lattice = LatticeData(
        integer_matrix=np.array([[1, 1], [1, 2]], dtype=object),
        t0=math.log((3.0 + math.sqrt(5.0)) / 2.0),
        translation_parts=(1.0, math.sqrt(2.0)),
    )
    return GalleryEntry(
        name="product",
        description="fundamental model times a line; decomposable with a "
                    "one-dimensional flat complement",
        algebra=g, lcp=lcp, expected=expected, lattice=lattice,
        note="weakly reducible: the lattice is not a product of lattices, "
             "but its restriction to the three-dimensional factor is the "
             "fundamental entry's lattice and still acts properly "
             "discontinuously there")


QUARTIC = (1, -3, 3, -3, 1)
"""X^4 - 3X^3 + 3X^2 - 3X + 1, constant term first.

Splits over the reals into (X^2 - aX + 1)(X^2 - bX + 1) with
a = (3+sqrt 5)/2 and b = (3-sqrt 5)/2, so two reciprocal real roots and
one unit-circle pair. Irreducible over the integers.
"""


def expanding_rate() -> float:
    """log of the largest root of QUARTIC."""
    a = (3.0 + math.sqrt(5.0)) / 2.0
    return math.log((a + math.sqrt(a * a - 4.0)) / 2.0)


def rotation_rate() -> float:
    """Argument of the unit-circle root pair of QUARTIC."""
    return math.acos((3.0 - math.sqrt(5.0)) / 4.0)


@functools.cache
def strongly_irreducible_example() -> GalleryEntry:
    """Four-space semidirect line: one hyperbolic plane, one rotation plane.

    The weights ln(lambda) and the rotation rate are irrational, so the
    algebra only exists in float mode. The lattice matrix is the
    companion of QUARTIC.
    """
    a = expanding_rate()
    mu = rotation_rate()
    c = bracket_table(5, {
        (4, 0): {0: a},
        (4, 1): {1: -a},
        (4, 2): {3: mu},
        (4, 3): {2: -mu},
    }, FLOAT)
    g = make_algebra(c, mode=FLOAT, basis_names=("x1", "x2", "y1", "y2", "t"))
    lcp = make_lcp_data(
        g,
        ideal_rows=[[1.0, 0.0, 0.0, 0.0, 0.0]],
        lee_covector=[0.0, 0.0, 0.0, 0.0, a],
        complement_rows=[[0.0, 1.0, 0.0, 0.0, 0.0],
                         [0.0, 0.0, 1.0, 0.0, 0.0],
                         [0.0, 0.0, 0.0, 1.0, 0.0],
                         [0.0, 0.0, 0.0, 0.0, 1.0]],
    )
    expected = ExpectedVerdicts(
        mode=FLOAT, unimodular=True,
        factor_dims=(2, 3), factor_is_flat=(True, False),
        holonomy_dim=3, decomposable=True,
        principal_dim=3, q=1, dim_bound_satisfied=True,
        touched_factors=(1,),
    )
    lattice = LatticeData(
        integer_matrix=companion(QUARTIC),
        t0=a,
        translation_parts=None,
    )
    return GalleryEntry(
        name="strongly_irreducible",
        description="five-dimensional solvable model whose holonomy factor "
                    "carries the line field and whose flat factor is a "
                    "rotation plane",
        algebra=g, lcp=lcp, expected=expected, lattice=lattice,
        note="strongly irreducible: the expanding rate is the log of an "
             "algebraic unit of degree 4, while any three-dimensional model "
             "only realizes units of degree at most 2")


def _fr_eye(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = Fraction(1 if i == j else 0)
    return out


def _kron_object(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]),
                   dtype=object)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            block = np.empty(b.shape, dtype=object)
            for k in range(b.shape[0]):
                for m in range(b.shape[1]):
                    block[k, m] = as_fraction(a[i, j]) * as_fraction(b[k, m])
            out[i * b.shape[0]:(i + 1) * b.shape[0],
                j * b.shape[1]:(j + 1) * b.shape[1]] = block
    return out


def _sl_basis(d: int) -> tuple[list[np.ndarray], tuple[str, ...]]:
    """Traceless d x d matrices: elementary off-diagonal units, then
    consecutive diagonal differences."""
    mats: list[np.ndarray] = []
    names: list[str] = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            m = np.zeros((d, d), dtype=object)
            m[:] = Fraction(0)
            m[i, j] = Fraction(1)
            mats.append(m)
            names.append(f"E{i + 1}{j + 1}")
    for k in range(d - 1):
        m = np.zeros((d, d), dtype=object)
        m[:] = Fraction(0)
        m[k, k] = Fraction(1)
        m[k + 1, k + 1] = Fraction(-1)
        mats.append(m)
        names.append("H" if d == 2 else f"H{k + 1}")
    return mats, tuple(names)


def _traceless_coords(m: np.ndarray, d: int) -> list[Fraction]:
    """Coordinates of a traceless matrix in the _sl_basis order."""
    coords: list[Fraction] = []
    for i in range(d):
        for j in range(d):
            if i != j:
                coords.append(as_fraction(m[i, j]))
    partial = Fraction(0)
    for k in range(d - 1):
        partial += as_fraction(m[k, k])
        coords.append(partial)
    return coords


def _sl_with_line(d: int) -> MetricLieAlgebra:
    """sl(d) plus a central line b, with the trace form tr(M^T N)."""
    mats, names = _sl_basis(d)
    s = len(mats)
    n = s + 1
    c = zeros_array((n, n, n), EXACT)
    for i in range(s):
        for j in range(i + 1, s):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            coords = _traceless_coords(comm, d)
            for k in range(s):
                c[i, j, k] = coords[k]
                c[j, i, k] = -coords[k]
    gram = zeros_array((n, n), EXACT)
    for i in range(s):
        for j in range(s):
            acc = Fraction(0)
            for a in range(d):
                for bb in range(d):
                    acc += mats[i][a, bb] * mats[j][a, bb]
            gram[i, j] = acc
    gram[s, s] = Fraction(1)
    return make_algebra(c, gram=gram, basis_names=names + ("b",))


@functools.cache
def sl_example(d: int = 2, check: bool = True) -> GalleryEntry:
    """Semidirect sum with semisimple part sl(d), dimension 2(d^2+1)+d^2.

    The ideal is (d x d matrices + a line) tensor a plane. sl(d) moves a
    d x d matrix N to N M^T, which on row-flattened coordinates is
    kron(I, M): right multiplication by M itself would compose in the
    wrong order and fail the homomorphism check. The extra generator b
    scales the two plane coordinates by +1 and -1. For d = 2 the total
    dimension is 14.

    check=False skips the quadratic-time Jacobi validation of the output;
    the homomorphism precondition, which implies it for a semidirect sum
    over a valid h, is checked either way.
    """
    if d < 2:
        raise InputError("the construction needs d >= 2")
    n = d * d
    h = _sl_with_line(d)
    mats, _ = _sl_basis(d)
    i_d = _fr_eye(d)
    i_np1 = _fr_eye(n + 1)
    i2 = _fr_eye(2)
    pm = np.array([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]],
                  dtype=object)

    def act_on_block(m: np.ndarray) -> np.ndarray:
        # d x d matrices sit in the first n coordinates, the last is fixed
        out = np.empty((n + 1, n + 1), dtype=object)
        for i in range(n + 1):
            for j in range(n + 1):
                out[i, j] = Fraction(0)
        out[:n, :n] = _kron_object(i_d, m)
        return out

    rep = [_kron_object(act_on_block(m), i2) for m in mats]
    rep.append(_kron_object(i_np1, pm))
    v_names = tuple(f"w{i}{j}" for i in range(n + 1) for j in range(2))
    g = semidirect_sum(h, rep, v_dim=2 * (n + 1), v_names=v_names, check=check)
    dim = g.dim
    fixed = 2 * n  # the fixed (n+1)-th block vector tensor the +1 direction
    ideal = [[0] * dim]
    ideal[0][fixed] = 1
    theta = [0] * dim
    theta[dim - 1] = 1
    complement = []
    for i in range(dim):
        if i == fixed:
            continue
        row = [0] * dim
        row[i] = 1
        complement.append(row)
    lcp = make_lcp_data(g, ideal_rows=ideal, lee_covector=theta,
                        complement_rows=complement)
    expected = ExpectedVerdicts(
        mode=EXACT, unimodular=True,
        factor_dims=(dim,), factor_is_flat=(False,),
        holonomy_dim=None, decomposable=False,
        principal_dim=dim, q=1, dim_bound_satisfied=True,
        touched_factors=(0,),
    )
    return GalleryEntry(
        name=f"sl{d}_semidirect",
        description=f"{dim}-dimensional semidirect sum whose semisimple "
                    "part forces a single irreducible factor",
        algebra=g, lcp=lcp, expected=expected, lattice=None)


def all_entries() -> list[GalleryEntry]:
    return [fundamental_example(), product_example(),
            strongly_irreducible_example(), sl_example(2)]
