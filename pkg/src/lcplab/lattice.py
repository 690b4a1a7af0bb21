"""Integer-matrix side of the compact quotient construction.

A compact quotient of a solvable model needs a unimodular integer matrix
conjugate to a point on a one-parameter subgroup, plus translation parts
that generate a discrete subgroup of the line. This module provides the
exact characteristic polynomial, an irreducibility test over the
integers, classification of eigenvalue moduli, the conjugacy solver, and
a numeric discreteness probe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .errors import InputError
from .linalg import charpoly_exact, exact_det
from .scalars import as_fraction


def _as_int_matrix(m: Sequence) -> np.ndarray:
    arr = np.array(m, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError("expected a square matrix")
    out = np.empty(arr.shape, dtype=object)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            x = arr[i, j]
            f = as_fraction(int(x) if isinstance(x, (bool, np.bool_)) else x)
            if f.denominator != 1:
                raise InputError(f"entry ({i}, {j}) = {x} is not an integer")
            out[i, j] = int(f)
    return out


def char_poly(m: Sequence) -> tuple[int, ...]:
    """Characteristic polynomial of an integer matrix, constant term first."""
    arr = _as_int_matrix(m)
    fr = np.empty(arr.shape, dtype=object)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            fr[i, j] = Fraction(arr[i, j])
    return tuple(int(c) for c in charpoly_exact(fr))


def companion(coeffs: Sequence[int]) -> np.ndarray:
    """Companion matrix of a monic integer polynomial, constant term first."""
    cs = [int(c) for c in coeffs]
    if len(cs) < 2:
        raise InputError("polynomial must have degree at least one")
    if cs[-1] != 1:
        raise InputError("companion form needs a monic polynomial")
    d = len(cs) - 1
    m = np.zeros((d, d), dtype=object)
    m[:] = 0
    for i in range(1, d):
        m[i, i - 1] = 1
    for i in range(d):
        m[i, d - 1] = -cs[i]
    return m


def is_unimodular_matrix(m: Sequence) -> bool:
    arr = _as_int_matrix(m)
    fr = np.empty(arr.shape, dtype=object)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            fr[i, j] = Fraction(arr[i, j])
    return abs(exact_det(fr)) == 1


# ---------------------------------------------------------------------------
# irreducibility over the integers


def _strip(coeffs: Sequence[int]) -> list[int]:
    cs = [int(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return cs


def _divides_exactly(f: list[int], g: list[int]) -> bool:
    """True when g divides f in Z[X] (both constant-first)."""
    rem = [Fraction(c) for c in f]
    gq = [Fraction(c) for c in g]
    dg = len(gq) - 1
    quot: list[Fraction] = []
    while len(rem) - 1 >= dg and any(c != 0 for c in rem):
        shift = len(rem) - 1 - dg
        factor = rem[-1] / gq[-1]
        quot.append(factor)
        for k in range(len(gq)):
            rem[shift + k] -= factor * gq[k]
        while len(rem) > 1 and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dg:
            break
    if any(c != 0 for c in rem):
        return False
    return all(q.denominator == 1 for q in quot)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [d for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0]
    return sorted(set(out + [n // d for d in out]))


def is_irreducible_over_Z(coeffs: Sequence[int]) -> bool:
    """Irreducibility in Z[X] up to units, implemented through degree 8.

    Linear factors are found by the rational root test; higher-degree
    factors by reassembling subsets of the numeric roots into candidate
    integer factors, each candidate confirmed by exact division, so a
    reducible input can never be reported irreducible by rounding alone.
    """
    cs = _strip(coeffs)
    deg = len(cs) - 1
    if deg == 0:
        return False
    if deg > 8:
        raise InputError("irreducibility test is implemented through degree 8")
    content = 0
    for c in cs:
        content = math.gcd(content, c)
    cs = [c // content for c in cs]
    if cs[0] == 0:
        return deg == 1
    if deg == 1:
        return True
    for q in _divisors(cs[-1]):
        for p in _divisors(cs[0]):
            for sign in (1, -1):
                num = Fraction(sign * p, q)
                acc = Fraction(0)
                for c in reversed(cs):
                    acc = acc * num + c
                if acc == 0:
                    return False
    if deg <= 3:
        return True
    roots = np.roots([float(c) for c in reversed(cs)])
    lead = cs[-1]
    for k in range(2, deg // 2 + 1):
        for subset in combinations(range(deg), k):
            chosen = [roots[i] for i in subset]
            # elementary symmetric functions give the monic factor over C
            esym = np.poly(chosen)  # highest degree first, leading 1
            for d in _divisors(lead):
                for sign in (1, -1):
                    cand_f = sign * d * esym
                    if np.max(np.abs(cand_f.imag)) > 1e-6:
                        continue
                    cand = [int(round(float(c))) for c in cand_f.real[::-1]]
                    if np.max(np.abs(np.array(cand, dtype=np.float64)
                                     - cand_f.real[::-1])) > 1e-6:
                        continue
                    if abs(cand[-1]) == 0:
                        continue
                    if _divides_exactly(cs, cand):
                        return False
    return True


# ---------------------------------------------------------------------------
# eigenvalue classification


@dataclass(frozen=True)
class UnitRootProfile:
    degree: int
    on_circle: int
    real_off_circle: int
    complex_off_circle: int


def unit_root_profile(coeffs: Sequence[int], tol: float = 1e-9) -> UnitRootProfile:
    """Count roots on the unit circle, real off it, and complex off it.

    A root within the relative tolerance of the circle counts as on it,
    before any realness decision is made.
    """
    cs = _strip(coeffs)
    deg = len(cs) - 1
    if deg == 0:
        return UnitRootProfile(0, 0, 0, 0)
    roots = np.roots([float(c) for c in reversed(cs)])
    on = real_off = complex_off = 0
    for r in roots:
        mod = abs(r)
        if abs(mod - 1.0) <= tol * max(1.0, mod):
            on += 1
        elif abs(r.imag) <= tol * max(1.0, mod):
            real_off += 1
        else:
            complex_off += 1
    return UnitRootProfile(deg, on, real_off, complex_off)


# ---------------------------------------------------------------------------
# conjugacy onto a one-parameter subgroup


@dataclass(frozen=True, eq=False)
class ConjugacySolution:
    """C^-1 A C = exp(t0 * generator), generator in block form."""

    t0: float
    generator: np.ndarray
    conjugator: np.ndarray


def solve_conjugacy(m: Sequence, tol: float = 1e-9) -> Optional[ConjugacySolution]:
    """Express an integer matrix as a time-t0 point of a one-parameter group.

    Eigenvalues must be positive reals or unit-circle pairs; negative
    reals and off-circle complex pairs are rejected since no real
    one-parameter subgroup of the allowed block type reaches them. A
    defective matrix returns None. The time step is normalized to the log
    of the largest real eigenvalue when one exceeds 1, else to the
    largest rotation angle.
    """
    arr = _as_int_matrix(m).astype(np.float64)
    n = arr.shape[0]
    w, v = np.linalg.eig(arr)
    scale = float(np.max(np.abs(w)))
    used = [False] * n
    real_items: list[tuple[float, np.ndarray]] = []  # (log lambda, eigenvector)
    rot_items: list[tuple[float, np.ndarray, np.ndarray]] = []  # (angle, vi, vr)
    for i in range(n):
        if used[i]:
            continue
        lam = w[i]
        if abs(lam.imag) <= tol * max(1.0, scale):
            lam_r = float(lam.real)
            if lam_r <= 0:
                raise InputError(
                    f"eigenvalue {lam_r:.6g} is not positive; no admissible "
                    "one-parameter subgroup reaches this matrix")
            real_items.append((math.log(lam_r), v[:, i].real))
            used[i] = True
            continue
        if abs(abs(lam) - 1.0) > tol * max(1.0, scale):
            raise InputError(
                f"complex eigenvalue {lam:.6g} is off the unit circle; no "
                "admissible one-parameter subgroup reaches this matrix")
        # find the conjugate partner
        partner = None
        for j in range(i + 1, n):
            if not used[j] and abs(w[j] - np.conj(lam)) <= 1e-7 * max(1.0, scale):
                partner = j
                break
        if partner is None:
            return None
        mu = abs(math.atan2(lam.imag, lam.real))
        if mu == 0.0:
            mu = math.pi  # lam = -1 handled above as negative real, unreachable
        vec = v[:, i] if lam.imag > 0 else v[:, partner]
        rot_items.append((mu, vec.imag.copy(), vec.real.copy()))
        used[i] = True
        used[partner] = True
    cols: list[np.ndarray] = []
    for _, vec in sorted(real_items, key=lambda p: -p[0]):
        cols.append(vec)
    for _, vi, vr in sorted(rot_items, key=lambda p: -p[0]):
        cols.append(vi)
        cols.append(vr)
    c = np.stack(cols, axis=1)
    if np.linalg.matrix_rank(c, tol=1e-9 * max(1.0, float(np.max(np.abs(c))))) < n:
        return None  # defective: eigenvectors do not fill the space
    logs = sorted((lg for lg, _ in real_items), reverse=True)
    angles = sorted((mu for mu, _, _ in rot_items), reverse=True)
    if logs and logs[0] > 0:
        t0 = logs[0]
    elif angles:
        t0 = angles[0]
    else:
        t0 = 1.0  # identity-like: any time step works
    gen = np.zeros((n, n))
    pos = 0
    for lg, _ in sorted(real_items, key=lambda p: -p[0]):
        gen[pos, pos] = lg / t0
        pos += 1
    for mu, _, _ in sorted(rot_items, key=lambda p: -p[0]):
        gen[pos, pos + 1] = -mu / t0
        gen[pos + 1, pos] = mu / t0
        pos += 2
    return ConjugacySolution(t0=t0, generator=gen, conjugator=c)


def verify_conjugacy(m: Sequence, solution: ConjugacySolution) -> float:
    """Largest entry of C^-1 A C - exp(t0 * generator)."""
    arr = _as_int_matrix(m).astype(np.float64)
    c = solution.conjugator
    target = scipy.linalg.expm(solution.t0 * solution.generator)
    defect = np.linalg.solve(c, arr @ c) - target
    return float(np.max(np.abs(defect)))


# ---------------------------------------------------------------------------
# discreteness of translation parts


@dataclass(frozen=True)
class ProbeResult:
    discrete: bool
    rank: Optional[int]
    generator: Optional[float]


@dataclass(frozen=True, eq=False)
class LatticeData:
    """Integer data attached to a worked example."""

    integer_matrix: np.ndarray
    t0: Optional[float] = None
    translation_parts: Optional[tuple[float, ...]] = None


def discreteness_probe(values: Sequence[float], tol: float = 1e-6,
                       max_rounds: int = 256) -> ProbeResult:
    """Numeric probe: do the values generate a discrete subgroup of the line?

    Runs subtractive reduction on the generators. Commensurable inputs
    terminate at their common measure; incommensurable ones drive the
    smallest element below the accumulation threshold, which is reported
    as non-discrete. A probe, not a proof: exact rationality questions
    about nearly commensurable inputs are beyond float inputs.
    """
    vals = [abs(float(x)) for x in values]
    scale = max(vals, default=0.0)
    if scale == 0.0:
        return ProbeResult(discrete=True, rank=0, generator=None)
    floor = 1e-13 * scale
    work = sorted({v for v in vals if v > floor})
    for _ in range(max_rounds):
        if len(work) == 1:
            g = work[0]
            if g <= tol * scale:
                return ProbeResult(discrete=False, rank=None, generator=None)
            return ProbeResult(discrete=True, rank=1, generator=g)
        g = work[0]
        if g <= tol * scale:
            return ProbeResult(discrete=False, rank=None, generator=None)
        reduced = {g}
        for v in work[1:]:
            r = math.fmod(v, g)
            if r > floor and g - r > floor:
                reduced.add(r)
        work = sorted(reduced)
    return ProbeResult(discrete=False, rank=None, generator=None)
