"""Determinantal models: presentation matrices, rank-strata ideals via
minors, expected dimensions, and the generator matrices of the Jacobian
and deformation modules tied together by the chain rule.

Matrices are stored in the orientation they are written in; the type
normalizes to n = min(rows, cols) and row excess k = |rows - cols|, so a
model may be entered either as (n+k) x n or as its transpose (the minor
ideals agree).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import PreconditionError, ValidationError, VariableSetMismatchError
from .groebner import Ideal
from .poly import Polynomial, VariableSet


@dataclass(frozen=True)
class DeterminantalType:
    """Type (n+k, n, t): n the smaller matrix dimension, k the excess,
    t the minor size cutting out the variety."""

    n: int
    k: int
    t: int

    def __post_init__(self):
        if self.n < 1 or self.k < 0:
            raise ValidationError("need n >= 1 and k >= 0")
        if not 1 <= self.t <= self.n:
            raise ValidationError(f"stratum cutoff t={self.t} outside 1..{self.n}")

    def expected_codim(self, i):
        """Codimension of the rank < i locus in matrix space."""
        if not 1 <= i <= self.n:
            raise ValidationError(f"stratum index {i} outside 1..{self.n}")
        return (self.n - i + 1) * (self.n + self.k - i + 1)

    def expected_dim(self, i, q):
        return q - self.expected_codim(i)


class PresentationMatrix:
    """A polynomial matrix presenting a determinantal variety.

    Entries live over one variable set: q ambient coordinates plus
    optional family parameters.  Family members are obtained by
    substituting rational values for all parameters.
    """

    __slots__ = ("dtype", "entries", "vars")

    def __init__(self, dtype: DeterminantalType, entries, vars: VariableSet):
        rows = len(entries)
        if rows == 0 or any(len(r) != len(entries[0]) for r in entries):
            raise ValidationError("matrix entries must form a rectangular grid")
        cols = len(entries[0])
        if {rows, cols} != {dtype.n, dtype.n + dtype.k}:
            raise ValidationError(
                f"matrix shape {rows}x{cols} does not match type "
                f"({dtype.n + dtype.k},{dtype.n},{dtype.t})"
            )
        for row in entries:
            for e in row:
                if e.vars != vars:
                    raise VariableSetMismatchError(
                        "matrix entries use different variable sets"
                    )
        self.dtype = dtype
        self.entries = tuple(tuple(row) for row in entries)
        self.vars = vars

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def q(self):
        return len(self.vars.ambient)

    def is_specialized(self):
        return not self.vars.parameters

    def specialize(self, assignment):
        """Member of the family at a rational parameter point."""
        missing = [p for p in self.vars.parameters if p not in assignment]
        if missing:
            raise PreconditionError(f"sample leaves parameters {missing} unspecialized")
        extra = [name for name in assignment if name not in self.vars.parameters]
        if extra:
            raise ValidationError(f"unknown parameters {extra} in sample")
        target = self.vars.ambient_only()
        subs = {
            name: Polynomial.constant(target, Fraction(value))
            for name, value in assignment.items()
        }
        entries = [
            [e.substitute(subs, target=target) for e in row] for row in self.entries
        ]
        return PresentationMatrix(self.dtype, entries, target)

    def __repr__(self):
        d = self.dtype
        return (
            f"PresentationMatrix({self.rows}x{self.cols}, type "
            f"({d.n + d.k},{d.n},{d.t}), q={self.q})"
        )


@dataclass(frozen=True)
class StratumModel:
    """One rank stratum: its minor ideal and dimension bookkeeping."""

    index: int
    ideal: Ideal
    expected_codim: int
    expected_dim: int

    @property
    def present(self):
        return self.expected_dim >= 0


class GeneratorMatrix:
    """A matrix of polynomials whose columns are module generators."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    def __eq__(self, other):
        return isinstance(other, GeneratorMatrix) and self.entries == other.entries

    def first_mismatch(self, other):
        for r in range(self.rows):
            for c in range(self.cols):
                if self.entries[r][c] != other.entries[r][c]:
                    return (r, c)
        return None

    def multiply(self, other):
        if self.cols != other.rows:
            raise ValidationError("generator matrix shapes do not compose")
        vars = self.entries[0][0].vars
        zero = Polynomial.zero(vars)
        out = []
        for r in range(self.rows):
            row = []
            for c in range(other.cols):
                acc = zero
                for m in range(self.cols):
                    a = self.entries[r][m]
                    b = other.entries[m][c]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GeneratorMatrix(out)


def _det(grid):
    """Cofactor expansion along the first row, increasing column order."""
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
        piece = entry * _det(sub)
        total = total + piece if c % 2 == 0 else total - piece
    return total


def minors(m: PresentationMatrix, size: int):
    """All size x size minors, ordered by (row subset, column subset)."""
    if not 1 <= size <= min(m.rows, m.cols):
        raise ValidationError(f"minor size {size} outside 1..{min(m.rows, m.cols)}")
    out = []
    for rows in combinations(range(m.rows), size):
        for cols in combinations(range(m.cols), size):
            grid = [[m.entries[r][c] for c in cols] for r in rows]
            out.append(_det(grid))
    return out


def stratum(m: PresentationMatrix, i: int) -> StratumModel:
    """Preimage of the rank < i locus, with expected dimensions."""
    if not 1 <= i <= m.dtype.t:
        raise ValidationError(f"stratum index {i} outside 1..{m.dtype.t}")
    codim = m.dtype.expected_codim(i)
    ideal = Ideal(minors(m, i), m.vars)
    return StratumModel(i, ideal, codim, m.q - codim)


def jacobian_generators(polys, vars: VariableSet) -> GeneratorMatrix:
    """Jacobian module generators: one row per polynomial, one column per
    ambient variable."""
    if not polys:
        raise ValidationError("need at least one polynomial")
    return GeneratorMatrix(
        [[p.derivative(z) for z in vars.ambient] for p in polys]
    )


def _generic_vars(rows, cols):
    names = tuple(f"g{r + 1}_{c + 1}" for r in range(rows) for c in range(cols))
    return VariableSet(names)


def n_generators(m: PresentationMatrix, i: int) -> GeneratorMatrix:
    """Generators of the module of determinantal first-order deformations:
    the Jacobian of the generic-matrix minors, evaluated on the entries.

    Rows are indexed by the i x i minors, columns by matrix positions in
    row-major order.
    """
    if not 1 <= i <= m.dtype.t:
        raise ValidationError(f"stratum index {i} outside 1..{m.dtype.t}")
    gvars = _generic_vars(m.rows, m.cols)
    generic = [
        [Polynomial.variable(gvars, f"g{r + 1}_{c + 1}") for c in range(m.cols)]
        for r in range(m.rows)
    ]
    gminors = []
    for rows in combinations(range(m.rows), i):
        for cols in combinations(range(m.cols), i):
            grid = [[generic[r][c] for c in cols] for r in rows]
            gminors.append(_det(grid))
    assignment = {
        f"g{r + 1}_{c + 1}": m.entries[r][c]
        for r in range(m.rows)
        for c in range(m.cols)
    }
    out = []
    for gm in gminors:
        row = []
        for r in range(m.rows):
            for c in range(m.cols):
                d = gm.derivative(f"g{r + 1}_{c + 1}")
                row.append(d.substitute(assignment, target=m.vars))
        out.append(row)
    return GeneratorMatrix(out)


def dm_matrix(m: PresentationMatrix) -> GeneratorMatrix:
    """Gradients of the entries: row (r, s) in row-major order, one
    column per ambient variable (matches the column order of
    n_generators)."""
    out = []
    for row in m.entries:
        for e in row:
            out.append([e.derivative(z) for z in m.vars.ambient])
    return GeneratorMatrix(out)


class ChainRuleResult:
    """Outcome of the chain-rule identity check; falsy on mismatch."""

    __slots__ = ("ok", "mismatch")

    def __init__(self, ok, mismatch=None):
        self.ok = ok
        self.mismatch = mismatch

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"ChainRuleResult(ok={self.ok}, mismatch={self.mismatch})"


def chain_rule_check(m: PresentationMatrix, i: int) -> ChainRuleResult:
    """Verify that the stratum Jacobian factors through the deformation
    generators: jacobian(minors) == n_generators * dm_matrix exactly."""
    jac = jacobian_generators(minors(m, i), m.vars)
    product = n_generators(m, i).multiply(dm_matrix(m))
    pos = jac.first_mismatch(product)
    return ChainRuleResult(pos is None, pos)
