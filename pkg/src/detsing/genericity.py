"""Hyperplane sections: slicing models, a necessary-condition screen for
candidate hyperplanes, and section-invariant comparison.

The screen can only reject; it never certifies genericity (membership in
the set of limiting tangent hyperplanes is out of computational reach).
A hyperplane fails the screen when

  * the sliced model fails the transversality/dimension checks, or
  * a present sliced stratum has the wrong dimension, or
  * a zero-dimensional stratum scheme of the original model is truncated
    by the section: its sliced ideal must stay supported at the origin
    with the same colength, since that colength is part of the
    invariant data the section is supposed to carry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .detmodel import PresentationMatrix, stratum
from .errors import (
    DimensionMismatchError,
    PreconditionError,
    ValidationError,
)
from .groebner import colength, dimension, is_unit_ideal, support_is_origin_only
from .invariants import build_euler_system, solve_for_m
from .poly import Polynomial, VariableSet
from .strata import eids_check


@dataclass(frozen=True)
class Hyperplane:
    """A linear form through the origin, up to scale: stored normalized
    so the first nonzero coefficient is 1."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        pivot = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if pivot is None:
            raise ValidationError("hyperplane coefficients must not all vanish")
        scale = coeffs[pivot]
        object.__setattr__(
            self, "coefficients", tuple(c / scale for c in coeffs)
        )

    @property
    def pivot(self):
        return next(i for i, c in enumerate(self.coefficients) if c != 0)

    @staticmethod
    def from_linear_form(p: Polynomial, vars: VariableSet):
        """Extract coefficients from a homogeneous linear polynomial in
        the ambient variables."""
        coeffs = [Fraction(0)] * len(vars.ambient)
        for mono, c in p.terms.items():
            if sum(mono) != 1:
                raise ValidationError("hyperplane form must be homogeneous linear")
            j = mono.index(1)
            if j >= len(vars.ambient):
                raise ValidationError("hyperplane form must use ambient variables only")
            coeffs[j] = c
        return Hyperplane(tuple(coeffs))

    def as_string(self, vars: VariableSet):
        from .poly import poly_to_str

        p = Polynomial.zero(vars)
        for j, c in enumerate(self.coefficients):
            if c:
                p = p + Polynomial.variable(vars, vars.ambient[j]).scale(c)
        return poly_to_str(p)


def slice_model(m: PresentationMatrix, h: Hyperplane) -> PresentationMatrix:
    """Section by the hyperplane: solve the linear form for its pivot
    variable and substitute; the ambient dimension drops by one and the
    type is unchanged."""
    if len(h.coefficients) != m.q:
        raise ValidationError("hyperplane has the wrong number of coefficients")
    pivot_name = m.vars.ambient[h.pivot]
    target = m.vars.without_ambient(pivot_name)
    replacement = Polynomial.zero(target)
    for j, c in enumerate(h.coefficients):
        if j == h.pivot or c == 0:
            continue
        replacement = replacement - Polynomial.variable(
            target, m.vars.ambient[j]
        ).scale(c)
    subs = {pivot_name: replacement}
    entries = [
        [e.substitute(subs, target=target) for e in row] for row in m.entries
    ]
    return PresentationMatrix(m.dtype, entries, target)


@dataclass(frozen=True)
class ScreenVerdict:
    hyperplane: Hyperplane
    passed: bool
    reasons: tuple

    def __bool__(self):
        return self.passed


def hyperplane_screen(m: PresentationMatrix, h: Hyperplane) -> ScreenVerdict:
    """Necessary-condition screen; pass does not certify genericity."""
    if not m.is_specialized():
        raise PreconditionError("screen needs all family parameters specialized")
    sliced = slice_model(m, h)
    reasons = []
    try:
        verdict = eids_check(sliced)
        if not verdict.overall:
            bad = [r.index for r in verdict.strata if not r.transversal_off_origin]
            reasons.append(
                "sliced model fails transversality or dimension checks on "
                f"strata {bad}"
            )
    except DimensionMismatchError as exc:
        reasons.append(f"sliced model dimension mismatch: {exc}")
    for i in range(1, m.dtype.t + 1):
        original = stratum(m, i)
        if original.expected_dim != 0:
            continue
        sliced_ideal = stratum(sliced, i).ideal
        if is_unit_ideal(sliced_ideal):
            continue
        if not support_is_origin_only(sliced_ideal):
            reasons.append(
                f"section of zero-dimensional stratum {i} extends beyond the origin"
            )
            continue
        try:
            original_colength = colength(original.ideal)
        except PreconditionError:
            reasons.append(
                f"zero-dimensional stratum {i} of the model is not supported "
                "at the origin; cannot screen its section"
            )
            continue
        sliced_colength = colength(sliced_ideal)
        if sliced_colength != original_colength:
            reasons.append(
                f"hyperplane truncates the zero-dimensional stratum {i} "
                f"scheme: colength {original_colength} -> {sliced_colength}"
            )
    return ScreenVerdict(h, not reasons, tuple(reasons))


@dataclass(frozen=True)
class SectionInvariants:
    hyperplane: Hyperplane
    screen: ScreenVerdict
    dims: tuple
    colengths: dict
    mvector: dict | None
    minimal: bool = False

    def vector(self):
        mv = tuple(sorted(self.mvector.items())) if self.mvector is not None else None
        return (self.dims, tuple(sorted(self.colengths.items())), mv)


def section_invariant_compare(m: PresentationMatrix, hyperplanes, euler_data=None):
    """Per-hyperplane section invariants, with the screen verdicts.

    Among hyperplanes passing the screen, those whose invariant vector
    attains the componentwise minimum are marked; flagged hyperplanes
    are still reported but excluded from the comparison.  This compares
    computable proxies for the topological minimality of sections, not
    the section Euler characteristics themselves.
    """
    hyperplanes = list(hyperplanes)
    if not hyperplanes:
        raise PreconditionError("need at least one hyperplane to compare")
    if euler_data is not None and len(euler_data) != len(hyperplanes):
        raise ValidationError("per-section chi data does not match the list")
    rows = []
    for idx, h in enumerate(hyperplanes):
        screen = hyperplane_screen(m, h)
        sliced = slice_model(m, h)
        sys = None
        try:
            sys = build_euler_system(sliced)
        except PreconditionError:
            pass
        dims = []
        cols = {}
        if sys is not None:
            for j, d in zip(sys.strata, sys.dims):
                s = stratum(sliced, j)
                dims.append(dimension(s.ideal))
                if d == 0:
                    try:
                        cols[j] = colength(s.ideal)
                    except PreconditionError:
                        pass
        mvec = None
        if (
            sys is not None
            and euler_data is not None
            and euler_data[idx] is not None
        ):
            mvec = solve_for_m(sys, euler_data[idx], cols)
        rows.append(SectionInvariants(h, screen, tuple(dims), cols, mvec))
    passing = [r for r in rows if r.screen.passed]
    if passing:
        vectors = [r.vector() for r in passing]
        shape0 = _vector_shape(vectors[0])
        comparable = all(_vector_shape(v) == shape0 for v in vectors)
        if comparable:
            flat = [_flatten(v) for v in vectors]
            floor = tuple(min(col) for col in zip(*flat))
            marked = []
            for r, f in zip(passing, flat):
                marked.append(tuple(f) == floor)
            out = []
            it = iter(marked)
            for r in rows:
                if r.screen.passed:
                    out.append(
                        SectionInvariants(
                            r.hyperplane, r.screen, r.dims, r.colengths,
                            r.mvector, next(it),
                        )
                    )
                else:
                    out.append(r)
            return out
    return rows


def _vector_shape(v):
    dims, cols, mv = v
    return (len(dims), tuple(k for k, _ in cols), None if mv is None else tuple(k for k, _ in mv))


def _flatten(v):
    dims, cols, mv = v
    out = list(dims) + [c for _, c in cols]
    if mv is not None:
        out += [c for _, c in mv]
    return out
