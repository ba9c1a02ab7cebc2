"""Geometric verdicts: singular loci, transversality of the rank strata
off the origin, family scans, stable isolation, and the conormal fiber
gap.

Transversality is tested through the equivalent smooth-of-expected-
codimension condition (Jacobian criterion) on each stratum away from the
next deeper stratum; everything stays inside ideal arithmetic.  All
checks are affine/global: supports and saturations are measured over the
whole coordinate space, which matches germ-at-origin semantics for
models whose interesting locus sits at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .detmodel import DeterminantalType, PresentationMatrix, minors, stratum
from .errors import DimensionMismatchError, PreconditionError, ValidationError
from .groebner import (
    Ideal,
    dimension,
    is_unit_ideal,
    saturation,
    support_is_origin_only,
)
from .poly import Polynomial


@dataclass(frozen=True)
class StratumCheck:
    index: int
    expected_dim: int
    actual_dim: int
    transversal_off_origin: bool
    witness: Ideal | None = None


@dataclass(frozen=True)
class EidsVerdict:
    strata: tuple
    overall: bool


def singular_locus_ideal(a: Ideal, codim: int) -> Ideal:
    """The stratum ideal plus the codim x codim minors of its Jacobian;
    its zero set is where the variety fails to be smooth of that
    codimension."""
    if codim < 1:
        raise ValidationError("codimension must be at least 1")
    gens = a.generators
    names = a.vars.names
    if codim > len(gens) or codim > len(names):
        raise ValidationError(
            f"codimension {codim} exceeds generator or variable count"
        )
    jac = [[g.derivative(n) for n in names] for g in gens]
    minor_gens = []
    for rows in combinations(range(len(gens)), codim):
        for cols in combinations(range(len(names)), codim):
            grid = [[jac[r][c] for c in cols] for r in rows]
            minor_gens.append(_grid_det(grid))
    return Ideal(list(gens) + minor_gens, a.vars)


def _grid_det(grid):
    size = len(grid)
    if size == 1:
        return grid[0][0]
    vars = grid[0][0].vars
    total = Polynomial.zero(vars)
    for c in range(size):
        entry = grid[0][c]
        if entry.is_zero():
            continue
        sub = [row[:c] + row[c + 1 :] for row in grid[1:]]
        piece = entry * _grid_det(sub)
        total = total + piece if c % 2 == 0 else total - piece
    return total


def _reduced_ideal(ideal: Ideal) -> Ideal:
    """Swap generators for the reduced basis (same ideal, leaner gens)."""
    basis = ideal.groebner_basis()
    if not basis.elements:
        return ideal
    return Ideal(basis.elements, ideal.vars)


def eids_check(m: PresentationMatrix) -> EidsVerdict:
    """Per-stratum transversality off the origin.

    A present stratum passes when it has its expected dimension and the
    non-smooth locus, saturated by the next deeper stratum, is empty or
    supported at the origin only.  A wrong-dimensional top stratum means
    the model is not determinantal of its declared type and raises
    DimensionMismatchError.
    """
    if not m.is_specialized():
        raise PreconditionError("eids check needs all family parameters specialized")
    t = m.dtype.t
    records = []
    strata_ideals = {}
    for i in range(1, t + 1):
        s = stratum(m, i)
        strata_ideals[i] = s.ideal
        if not s.present:
            continue
        actual = dimension(s.ideal)
        if actual != s.expected_dim:
            if i == t:
                raise DimensionMismatchError(
                    f"top stratum has dimension {actual}, expected "
                    f"{s.expected_dim}; not determinantal of the declared type"
                )
            records.append(
                StratumCheck(i, s.expected_dim, actual, False, s.ideal)
            )
            continue
        locus = singular_locus_ideal(_reduced_ideal(s.ideal), s.expected_codim)
        if i == 1:
            off_deeper = _reduced_ideal(locus)
        else:
            off_deeper = saturation(_reduced_ideal(locus), strata_ideals[i - 1])
        ok = is_unit_ideal(off_deeper) or support_is_origin_only(off_deeper)
        records.append(
            StratumCheck(
                i, s.expected_dim, actual, ok, None if ok else off_deeper
            )
        )
    overall = all(r.transversal_off_origin for r in records)
    return EidsVerdict(tuple(records), overall)


@dataclass(frozen=True)
class ScanRecord:
    point: dict
    verdict: EidsVerdict | None
    error: str | None

    @property
    def passed(self):
        return self.error is None and self.verdict is not None and self.verdict.overall


def good_family_scan(m: PresentationMatrix, samples):
    """Evidence scan: eids check at each parameter sample.

    A pass is evidence, not proof, that the family is good (transverse
    to the rank stratification off the origin near the parameter axis):
    the sampling is finite.
    """
    records = []
    for point in samples:
        member = m.specialize(point)
        try:
            verdict = eids_check(member)
            records.append(ScanRecord(dict(point), verdict, None))
        except DimensionMismatchError as exc:
            records.append(ScanRecord(dict(point), None, str(exc)))
    return records


def stably_isolated_check(m: PresentationMatrix, i: int) -> bool:
    """Stabilization has only isolated singularities on stratum i: the
    ambient dimension must equal the codimension of the next deeper rank
    locus and that locus must be confined to the origin."""
    if not m.is_specialized():
        raise PreconditionError("check needs all family parameters specialized")
    if i < 1:
        raise ValidationError("stratum index must be positive")
    n = m.dtype.n
    if i >= n:
        raise PreconditionError(f"no deeper stratum beyond i={i} for n={n}")
    deeper_codim = (n - i) * (n + m.dtype.k - i)
    if m.q != deeper_codim:
        return False
    deeper = Ideal(minors(m, i + 1), m.vars)
    if is_unit_ideal(deeper):
        return True
    return support_is_origin_only(deeper)


def conormal_fiber_gap(dtype: DeterminantalType) -> int:
    """Drop from the conormal dimension to its fiber dimension at the
    origin, k + 1, valid under the stably-isolated hypothesis (the
    caller reports whether that hypothesis was verified)."""
    return dtype.k + 1
