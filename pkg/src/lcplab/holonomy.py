"""Holonomy of the Levi-Civita connection and orthogonal decompositions.

The holonomy algebra of a left-invariant metric is the span of the
curvature operators, closed under commutator with the connection
operators. Splitting off the common kernel (the flat directions, kept as
one block) and then cutting the complement along eigenspaces of the
symmetric commutant yields the factors of the metric as an orthogonal
product; the factors are unique, pairwise inequivalent as holonomy
modules, and invariant under every connection operator.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InputError, NumericalAmbiguityError, TheoremViolationError
from .liealg import (
    InvariantConnection,
    MetricLieAlgebra,
    curvature_operator,
    inner,
    is_subalgebra,
    levi_civita,
    to_float_algebra,
)
from .linalg import (
    Subspace,
    canonical_rows,
    full_subspace,
    in_rowspan,
    integer_scaled,
    invert,
    is_zero_matrix,
    is_zero_scalar,
    matrix_rank,
    rank_and_nullspace,
    restrict_operator,
    restricted_gram,
    scale_of,
    selfadjoint_eigensplit,
    span_closure,
    subspace_sum,
    support_indices,
    zero_subspace,
)
from .scalars import (
    EXACT,
    FLOAT,
    Mode,
    TolerancePolicy,
    exact_array,
    eye_array,
    to_float_array,
    zeros_array,
)


@dataclass(frozen=True, eq=False)
class OperatorAlgebra:
    """A space of operators on coordinate space, given by a matrix basis."""

    ambient_dim: int
    basis: tuple[np.ndarray, ...]
    mode: Mode

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"OperatorAlgebra(dim={self.dim}, ambient={self.ambient_dim}, mode={self.mode})"


def holonomy_algebra(g: MetricLieAlgebra,
                     conn: Optional[InvariantConnection] = None) -> OperatorAlgebra:
    """Span of curvature operators, closed under bracketing with the connection."""
    if conn is None:
        conn = levi_civita(g)
    n = g.dim
    sc = scale_of(g.bracket, g.gram) if g.mode == FLOAT else 1.0
    seeds = []
    for i in range(n):
        for j in range(i + 1, n):
            r = curvature_operator(g, conn, i, j)
            if not is_zero_matrix(r, g.mode, g.tol, scale=max(1.0, sc * sc)):
                seeds.append(r)
    if not seeds:
        return OperatorAlgebra(n, (), g.mode)
    nabla = [conn.operator(k) for k in range(n)]
    if g.mode == EXACT:
        # int products are several times cheaper than Fractions and only
        # rescale the candidates, which span_closure does not care about
        nabla_int = [integer_scaled(a) for a in nabla]
        seeds = [exact_array(integer_scaled(r)) for r in seeds]

        def step(m: np.ndarray) -> list[np.ndarray]:
            mi = integer_scaled(m)
            return [exact_array(a @ mi - mi @ a) for a in nabla_int]
    else:
        def step(m: np.ndarray) -> list[np.ndarray]:
            return [a @ m - m @ a for a in nabla]
    span = span_closure(seeds, step, g.mode, g.tol)
    mats = tuple(span.basis[i].reshape(n, n) for i in range(span.dim))
    return OperatorAlgebra(n, mats, g.mode)


def common_kernel(ops: Sequence[np.ndarray], ambient_dim: int, mode: Mode,
                  tol: TolerancePolicy) -> Subspace:
    if not ops:
        return full_subspace(ambient_dim, mode)
    stacked = np.concatenate(list(ops), axis=0)
    _, null = rank_and_nullspace(stacked, mode, tol)
    return null


# ---------------------------------------------------------------------------
# symmetric commutant


def symmetric_commutant(ops: Sequence[np.ndarray], gram: np.ndarray, mode: Mode,
                        tol: TolerancePolicy) -> list[np.ndarray]:
    """Basis of the gram-self-adjoint operators commuting with every op.

    Starts from all self-adjoint operators and imposes one commutation
    constraint at a time, so the working basis only ever shrinks; the
    identity always survives.
    """
    n = gram.shape[0]
    ginv = invert(gram, mode, tol)
    basis: list[np.ndarray] = []
    for i in range(n):
        for j in range(i, n):
            s = zeros_array((n, n), mode)
            one = s[0, 0] + 1  # scalar one of the right kind
            s[i, j] = one
            s[j, i] = one
            basis.append(ginv @ s)
    for a in ops:
        if len(basis) <= 1:
            break
        if mode == EXACT:
            # rescaling a column rescales the matching nullspace coordinate,
            # so recombining the rescaled basis with the raw coordinates
            # lands on the same commutant subspace at a fraction of the cost
            ai = integer_scaled(a)
            work = [integer_scaled(p) for p in basis]
            cols = [exact_array((p @ ai - ai @ p).reshape(-1)) for p in work]
        else:
            work = basis
            cols = [(p @ a - a @ p).reshape(-1) for p in basis]
        k = np.stack(cols, axis=1)
        # a commutator that is zero at the scale of its inputs is no
        # constraint at all; without this cutoff pure roundoff noise would
        # read as a rank-one condition and eat a commutant direction
        sc = scale_of(a) * max(scale_of(p) for p in basis) if mode == FLOAT else 1.0
        if is_zero_matrix(k, mode, tol, scale=max(1.0, sc)):
            continue
        _, null = rank_and_nullspace(k, mode, tol)
        if null.dim == len(basis):
            continue
        new_basis = []
        if mode == EXACT:
            # a rescaled nullspace vector is still a nullspace vector, so
            # the recombination can run entirely over ints
            stacked = np.stack([p.reshape(-1) for p in work])
            for r in range(null.dim):
                coeffs = integer_scaled(null.basis[r])
                new_basis.append(exact_array((coeffs @ stacked).reshape(n, n)))
        else:
            for r in range(null.dim):
                coeffs = null.basis[r]
                combo = zeros_array((n, n), mode)
                for c, p in zip(coeffs, work):
                    combo = combo + c * p
                new_basis.append(combo)
        basis = new_basis
    return basis


def nabla_commutant(g: MetricLieAlgebra,
                    conn: Optional[InvariantConnection] = None) -> list[np.ndarray]:
    if conn is None:
        conn = levi_civita(g)
    ops = [conn.operator(k) for k in range(g.dim)]
    return symmetric_commutant(ops, g.gram, g.mode, g.tol)


def _is_scalar_matrix(p: np.ndarray, mode: Mode, tol: TolerancePolicy) -> bool:
    n = p.shape[0]
    trace = sum(p[i, i] for i in range(n))
    if mode == EXACT:
        lam = trace / n
        return all((p[i, j] == (lam if i == j else 0)) for i in range(n) for j in range(n))
    lam = float(trace) / n
    d = np.asarray(p, dtype=np.float64) - lam * np.eye(n)
    return is_zero_matrix(d, mode, tol, scale=scale_of(p))


# ---------------------------------------------------------------------------
# recursive splitting


class _PromoteToFloat(Exception):
    """Internal signal: an eigenvalue left the rationals, redo in float."""


def _candidates(comm: list[np.ndarray], mode: Mode, tol: TolerancePolicy,
                rng: random.Random, extra_attempts: int = 8):
    for p in comm:
        if not _is_scalar_matrix(p, mode, tol):
            yield p
    for _ in range(extra_attempts):
        combo = None
        for p in comm:
            c = rng.randint(-9, 9)
            term = c * p
            combo = term if combo is None else combo + term
        if combo is not None and not _is_scalar_matrix(combo, mode, tol):
            yield combo


def _split_blocks(ops: list[np.ndarray], gram: np.ndarray, mode: Mode,
                  tol: TolerancePolicy, rng: random.Random) -> list[Subspace]:
    """Decompose coordinate space into minimal invariant blocks of ``ops``.

    Requires the setting of the factor theory: the commutant restricted to
    a minimal block is scalar, so commutant dimension 1 means done.
    """
    n = gram.shape[0]
    comm = symmetric_commutant(ops, gram, mode, tol)
    if len(comm) <= 1:
        return [full_subspace(n, mode)]
    ambiguity: Optional[NumericalAmbiguityError] = None
    chosen = None
    for cand in _candidates(comm, mode, tol, rng):
        try:
            split = selfadjoint_eigensplit(cand, gram, mode, tol)
        except NumericalAmbiguityError as err:
            ambiguity = err
            continue
        if len(split.pairs) < 2:
            continue
        if split.promoted_to_float:
            raise _PromoteToFloat()
        chosen = split
        break
    if chosen is None:
        if ambiguity is not None:
            raise ambiguity
        raise NumericalAmbiguityError(
            "commutant has dimension >= 2 but no candidate produced a stable eigensplit",
            suggestion="rerun with a different seed or loosen eigen_cluster_tol",
        )
    blocks: list[Subspace] = []
    for _, eig in chosen.pairs:
        sub_ops = []
        for a in ops:
            ra = restrict_operator(a, eig.basis, mode, tol)
            if ra is None:
                raise TheoremViolationError(
                    "eigenspace of a commutant element is not invariant under the operators")
            sub_ops.append(ra)
        sub_gram = restricted_gram(eig.basis, gram)
        for inner_block in _split_blocks(sub_ops, sub_gram, mode, tol, rng):
            blocks.append(Subspace(n, inner_block.basis @ eig.basis, mode))
    return blocks


@dataclass(frozen=True, eq=False)
class DeRhamSplitting:
    """Orthogonal factors of the metric: one flat block, then irreducible ones."""

    factors: tuple[Subspace, ...]
    factor_is_flat: tuple[bool, ...]
    holonomy: OperatorAlgebra
    connection: InvariantConnection
    mode: Mode
    promoted_to_float: bool

    @property
    def flat_factor(self) -> Optional[Subspace]:
        return self.factors[0] if self.factor_is_flat and self.factor_is_flat[0] else None

    @property
    def holonomy_dim(self) -> int:
        return self.holonomy.dim

    @property
    def factor_dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    def __repr__(self) -> str:
        return (f"DeRhamSplitting(dims={self.factor_dims}, flat={self.factor_is_flat},"
                f" hol_dim={self.holonomy_dim}, mode={self.mode})")


def _sort_key(factor: Subspace, mode: Mode, tol: TolerancePolicy):
    rows = canonical_rows(factor.basis, mode, tol)
    supp = support_indices(rows, mode, tol)
    if mode == EXACT:
        body = tuple(tuple(x for x in row) for row in rows)
    else:
        body = tuple(tuple(round(float(x), 6) for x in row) for row in rows)
    return (-factor.dim, supp, body)


def _verify_splitting(g: MetricLieAlgebra, factors: list[Subspace],
                      flat_flags: list[bool], hol: OperatorAlgebra,
                      conn: InvariantConnection) -> None:
    n = g.dim
    total = sum(f.dim for f in factors)
    stacked = np.concatenate([f.basis for f in factors], axis=0)
    if total != n or matrix_rank(stacked, g.mode, g.tol) != n:
        raise TheoremViolationError("factors do not span the whole algebra")
    sc = scale_of(g.gram) if g.mode == FLOAT else 1.0
    for a in range(len(factors)):
        for b in range(a + 1, len(factors)):
            prods = factors[a].basis @ g.gram @ factors[b].basis.T
            if not is_zero_matrix(prods, g.mode, g.tol, scale=sc):
                raise TheoremViolationError("factors are not pairwise orthogonal")
    for f in factors:
        for h in hol.basis:
            if restrict_operator(h, f.basis, g.mode, g.tol) is None:
                raise TheoremViolationError("factor is not holonomy invariant")
        for k in range(n):
            if restrict_operator(conn.operator(k), f.basis, g.mode, g.tol) is None:
                raise TheoremViolationError(
                    "holonomy invariant factor is not connection invariant")


def de_rham_splitting(g: MetricLieAlgebra, seed: int = 0) -> DeRhamSplitting:
    """Factor the metric algebra into flat and irreducible orthogonal blocks.

    Exact inputs stay exact as long as every eigenvalue met along the way
    is rational; otherwise the whole computation is redone in floats and
    the result is flagged as promoted.
    """
    try:
        return _de_rham_splitting_in_mode(g, seed, promoted=False)
    except _PromoteToFloat:
        return _de_rham_splitting_in_mode(to_float_algebra(g), seed, promoted=True)


def _de_rham_splitting_in_mode(g: MetricLieAlgebra, seed: int, promoted: bool) -> DeRhamSplitting:
    n = g.dim
    conn = levi_civita(g)
    hol = holonomy_algebra(g, conn)
    rng = random.Random(seed)
    flat = common_kernel(hol.basis, n, g.mode, g.tol)
    factors: list[Subspace] = []
    flags: list[bool] = []
    if flat.dim == n:
        factors.append(full_subspace(n, g.mode))
        flags.append(True)
    else:
        if flat.dim > 0:
            factors.append(flat)
            flags.append(True)
        w = _orthocomplement_subspace(flat, g)
        sub_ops = []
        for h in hol.basis:
            rh = restrict_operator(h, w.basis, g.mode, g.tol)
            if rh is None:
                raise TheoremViolationError("holonomy does not preserve the curved block")
            sub_ops.append(rh)
        blocks = _split_blocks(sub_ops, restricted_gram(w.basis, g.gram), g.mode, g.tol, rng)
        for b in blocks:
            factors.append(Subspace(n, b.basis @ w.basis, g.mode))
            flags.append(False)
    head = [(f, fl) for f, fl in zip(factors, flags) if fl]
    tail = sorted(((f, fl) for f, fl in zip(factors, flags) if not fl),
                  key=lambda p: _sort_key(p[0], g.mode, g.tol))
    ordered = head + tail
    factors = [f for f, _ in ordered]
    flags = [fl for _, fl in ordered]
    _verify_splitting(g, factors, flags, hol, conn)
    return DeRhamSplitting(tuple(factors), tuple(flags), hol, conn, g.mode, promoted)


def _orthocomplement_subspace(s: Subspace, g: MetricLieAlgebra) -> Subspace:
    if s.dim == 0:
        return full_subspace(g.dim, g.mode)
    _, null = rank_and_nullspace(s.basis @ g.gram, g.mode, g.tol)
    return null


def verify_factor_subalgebras(g: MetricLieAlgebra, splitting: DeRhamSplitting,
                              strict: bool = True) -> list[bool]:
    """Check that every factor is closed under the bracket."""
    gg = g if splitting.mode == g.mode else to_float_algebra(g)
    out = []
    for f in splitting.factors:
        ok = is_subalgebra(gg, f)
        if strict and not ok:
            raise TheoremViolationError("a metric factor is not a subalgebra")
        out.append(ok)
    return out


# ---------------------------------------------------------------------------
# reducing pairs


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the orthogonal-pair test, one flag per condition."""

    orthogonal: bool
    complementary: bool
    s1_subalgebra: bool
    s2_subalgebra: bool
    cross_s1: bool  # <[x1, x2], x1> vanishes for x1 in S1, x2 in S2
    cross_s2: bool  # <[x1, x2], x2> vanishes for x1 in S1, x2 in S2

    @property
    def passed(self) -> bool:
        return (self.orthogonal and self.complementary and self.s1_subalgebra
                and self.s2_subalgebra and self.cross_s1 and self.cross_s2)


@dataclass(frozen=True, eq=False)
class ReducingPair:
    s1: Subspace
    s2: Subspace
    mode: Mode


def _cross_vanishes(g: MetricLieAlgebra, linear_rows: np.ndarray,
                    quad_rows: np.ndarray) -> bool:
    """True when <[a, y], y> = 0 for all a in the linear span, y in the quadratic span.

    The form is quadratic in y, so vanishing on basis vectors and pairwise
    sums is equivalent to vanishing identically; both are covered by the
    polarized values below.
    """
    from .liealg import bracket_vec

    sc = scale_of(g.bracket, g.gram) if g.mode == FLOAT else 1.0
    for a_idx in range(linear_rows.shape[0]):
        a = linear_rows[a_idx]
        for i in range(quad_rows.shape[0]):
            for j in range(i, quad_rows.shape[0]):
                u, v = quad_rows[i], quad_rows[j]
                val = inner(g, bracket_vec(g, a, u), v) + inner(g, bracket_vec(g, a, v), u)
                if not is_zero_scalar(val, g.mode, g.tol, scale=max(1.0, sc * sc)):
                    return False
    return True


def check_reducing_pair(g: MetricLieAlgebra, s1: Subspace, s2: Subspace) -> ConditionReport:
    if s1.mode != g.mode or s2.mode != g.mode:
        raise InputError("pair and algebra must use the same scalar mode")
    sc = scale_of(g.gram) if g.mode == FLOAT else 1.0
    prods = s1.basis @ g.gram @ s2.basis.T if s1.dim and s2.dim else None
    orthogonal = prods is None or is_zero_matrix(prods, g.mode, g.tol, scale=sc)
    stacked = np.concatenate([s1.basis, s2.basis], axis=0)
    complementary = (s1.dim + s2.dim == g.dim
                     and (stacked.shape[0] == 0
                          or matrix_rank(stacked, g.mode, g.tol) == g.dim))
    return ConditionReport(
        orthogonal=orthogonal,
        complementary=complementary,
        s1_subalgebra=is_subalgebra(g, s1),
        s2_subalgebra=is_subalgebra(g, s2),
        cross_s1=_cross_vanishes(g, s2.basis, s1.basis),
        cross_s2=_cross_vanishes(g, s1.basis, s2.basis),
    )


def reducibility_witness(g: MetricLieAlgebra, seed: int = 0,
                         splitting: Optional[DeRhamSplitting] = None,
                         ) -> Optional[ReducingPair]:
    """An orthogonal reducing pair when the metric splits, else None.

    With two or more factors the first factor against the rest is such a
    pair. A single flat block of dimension at least two is cut along an
    eigensplit of the self-adjoint operators commuting with the connection;
    those cuts are connection invariant, which is enough for the pair
    conditions. A splitting computed earlier for the same algebra and seed
    may be passed in to avoid recomputing it.
    """
    if splitting is None:
        splitting = de_rham_splitting(g, seed=seed)
    gg = g if splitting.mode == g.mode else to_float_algebra(g)
    if len(splitting.factors) >= 2:
        s1 = splitting.factors[0]
        s2 = subspace_sum(splitting.factors[1:], gg.tol)
        return ReducingPair(s1, s2, splitting.mode)
    if not splitting.factor_is_flat[0] or g.dim < 2:
        return None
    conn = levi_civita(gg)
    comm = nabla_commutant(gg, conn)
    rng = random.Random(seed)
    for cand in _candidates(comm, gg.mode, gg.tol, rng):
        try:
            split = selfadjoint_eigensplit(cand, gg.gram, gg.mode, gg.tol)
        except NumericalAmbiguityError:
            continue
        if len(split.pairs) < 2:
            continue
        if split.promoted_to_float:
            gf = to_float_algebra(gg)
            s1 = split.pairs[0][1]
            s2 = subspace_sum([p for _, p in split.pairs[1:]], gf.tol)
            pair = ReducingPair(s1, s2, FLOAT)
            report = check_reducing_pair(gf, pair.s1, pair.s2)
        else:
            s1 = split.pairs[0][1]
            s2 = subspace_sum([p for _, p in split.pairs[1:]], gg.tol)
            pair = ReducingPair(s1, s2, gg.mode)
            report = check_reducing_pair(gg, pair.s1, pair.s2)
        if not report.passed:
            raise TheoremViolationError(
                "connection-invariant orthogonal split fails the pair conditions")
        return pair
    raise TheoremViolationError(
        "flat metric in dimension >= 2 must admit a reducing pair")
