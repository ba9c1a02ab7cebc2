"""Reduced Groebner bases and the ideal-theoretic toolkit.

Buchberger's algorithm with the Gebauer-Moeller pair-elimination
criteria and the normal selection strategy (smallest lcm under the
active ordering, ties broken by generator index), so bases are
reproducible across runs.  The inner loop works on primitive
integer-coefficient polynomials (denominators are cleared at reduction
boundaries); reduced bases are stored monic with exact rational
coefficients.

On top of the basis engine: membership, sums, products, elimination,
intersection, quotient, saturation, Krull dimension, radical membership
of variables, and colength (standard-monomial count) for ideals
supported at the origin.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import (
    DetsingError,
    LimitError,
    PreconditionError,
    ValidationError,
    VariableSetMismatchError,
)
from .poly import (
    GREVLEX,
    MonomialOrdering,
    Polynomial,
    VariableSet,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

_SATURATION_CAP = 50

# Optional safety cap on the total degree of basis elements / S-pair lcms
# produced during a basis computation (CLI --max-degree).  None = no cap.
_MAX_DEGREE = None


def set_max_degree(cap):
    global _MAX_DEGREE
    _MAX_DEGREE = cap


class GroebnerBasis:
    """A reduced Groebner basis: monic elements, sorted by leading term."""

    __slots__ = ("elements", "ordering", "reduced")

    def __init__(self, elements, ordering, reduced=True):
        self.elements = tuple(elements)
        self.ordering = ordering
        self.reduced = reduced

    def is_unit(self):
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def leading_monomials(self):
        return [g.leading_monomial(self.ordering) for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


class Ideal:
    """An ideal given by generators, with a per-ordering basis cache.

    Zero generators may be dropped freely; an empty generator list is
    the zero ideal.  The cache behaves as a write-once map per
    (ideal, ordering) key.
    """

    __slots__ = ("vars", "generators", "_cache")

    def __init__(self, generators, vars=None):
        gens = [g for g in generators if not g.is_zero()]
        if vars is None:
            if not gens:
                raise ValidationError("zero ideal needs an explicit variable set")
            vars = gens[0].vars
        for g in gens:
            if g.vars != vars:
                raise VariableSetMismatchError("generators use different variable sets")
        self.vars = vars
        self.generators = tuple(gens)
        self._cache = {}

    def groebner_basis(self, ordering=GREVLEX):
        key = (ordering.kind, ordering.block)
        basis = self._cache.get(key)
        if basis is None:
            basis = buchberger(self, ordering)
            self._cache.setdefault(key, basis)
        return basis

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators over {self.vars.names})"


# ---------------------------------------------------------------------------
# Integer-polynomial engine


def _poly_to_int(p):
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return {m: int(c * denom) for m, c in p.terms.items()}


def _content(terms):
    g = 0
    for c in terms.values():
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _primitive(terms, lead_key):
    if not terms:
        return terms
    g = _content(terms)
    lead = max(terms, key=lead_key)
    if terms[lead] < 0:
        g = -g
    if g not in (0, 1):
        terms = {m: c // g for m, c in terms.items()}
    return terms


def _reduce_full(p, basis, key):
    """Full pseudo-reduction of an integer polynomial against a basis.

    ``basis`` is a list of (lt, lc, terms) with positive leading
    coefficients.  Returns a primitive remainder; the remainder is a
    unit multiple of the rational normal form, which is all the callers
    need (zero tests, interreduction).
    """
    rem = {}
    work = dict(p)
    steps = 0
    while work:
        m = max(work, key=key)
        c = work[m]
        hit = None
        for lt, lc, g in basis:
            if monomial_divides(lt, m):
                hit = (lt, lc, g)
                break
        if hit is None:
            del work[m]
            rem[m] = c
            continue
        lt, lc, g = hit
        shift = monomial_div(m, lt)
        if lc != 1:
            for k2 in work:
                work[k2] *= lc
            for k2 in rem:
                rem[k2] *= lc
            c *= lc
        for mg, cg in g.items():
            mm = monomial_mul(mg, shift)
            s = work.get(mm, 0) - (c // lc) * cg
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
        steps += 1
        if steps % 32 == 0 and rem:
            joint = dict(rem)
            joint.update(work)
            g2 = _content(joint)
            if g2 > 1:
                work = {k2: v // g2 for k2, v in work.items()}
                rem = {k2: v // g2 for k2, v in rem.items()}
    return _primitive(rem, key)


def _spoly(fi, lti, lci, fj, ltj, lcj):
    lcm = monomial_lcm(lti, ltj)
    si = monomial_div(lcm, lti)
    sj = monomial_div(lcm, ltj)
    out = {}
    for m, c in fi.items():
        out[monomial_mul(m, si)] = c * lcj
    for m, c in fj.items():
        mm = monomial_mul(m, sj)
        s = out.get(mm, 0) - c * lci
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


class _KeyCache:
    __slots__ = ("fn", "cache")

    def __init__(self, ordering):
        self.fn = ordering.key
        self.cache = {}

    def __call__(self, mono):
        k = self.cache.get(mono)
        if k is None:
            k = self.fn(mono)
            self.cache[mono] = k
        return k


def _check_degree(mono):
    if _MAX_DEGREE is not None and sum(mono) > _MAX_DEGREE:
        raise LimitError(
            f"basis computation exceeded the degree cap {_MAX_DEGREE}"
        )


def _interreduce_input(polys, key):
    """Mutually reduce a generator list until stable (ideal unchanged)."""
    polys = [_primitive(dict(p), key) for p in polys if p]
    changed = True
    while changed:
        changed = False
        polys.sort(key=lambda q: key(max(q, key=key)))
        for i in range(len(polys)):
            others = [
                (max(q, key=key), q[max(q, key=key)], q)
                for j, q in enumerate(polys)
                if j != i and q
            ]
            if not others or not polys[i]:
                continue
            red = _reduce_full(polys[i], others, key)
            if red != polys[i]:
                polys[i] = red
                changed = True
        polys = [p for p in polys if p]
    return polys


def _update_pairs(G, lts, P, new_lt, key):
    """Gebauer-Moeller pair update for the element about to be appended."""
    t = len(G)

    def pair_lcm(i, j):
        return monomial_lcm(lts[i], lts[j])

    kept = set()
    for (i, j) in P:
        l = pair_lcm(i, j)
        if (
            not monomial_divides(new_lt, l)
            or l == monomial_lcm(lts[i], new_lt)
            or l == monomial_lcm(lts[j], new_lt)
        ):
            kept.add((i, j))
    lcm_groups = {}
    for i in range(t):
        lcm_groups.setdefault(monomial_lcm(lts[i], new_lt), []).append(i)
    minimal = []
    for l in sorted(lcm_groups, key=key):
        if not any(monomial_divides(l2, l) for l2 in minimal):
            minimal.append(l)
    for l in minimal:
        # Buchberger's coprime criterion: skip when lcm = product.
        if not any(monomial_mul(lts[i], new_lt) == l for i in lcm_groups[l]):
            kept.add((min(lcm_groups[l]), t))
    return kept


def buchberger(source, ordering=GREVLEX, max_degree=None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal (or generator list).

    Deterministic: normal pair selection and fixed tie-breaking yield
    the same basis on every run.
    """
    global _MAX_DEGREE
    if isinstance(source, Ideal):
        gens = source.generators
        vars = source.vars
    else:
        gens = tuple(g for g in source if not g.is_zero())
        if not gens:
            raise ValidationError("buchberger needs a variable set; use Ideal")
        vars = gens[0].vars
    key = _KeyCache(ordering)
    saved_cap = _MAX_DEGREE
    if max_degree is not None:
        _MAX_DEGREE = max_degree
    try:
        ints = [_poly_to_int(g) for g in gens]
        ints = _interreduce_input(ints, key)
        if not ints:
            return GroebnerBasis((), ordering)

        G = []
        lts = []
        basis_view = []  # (lt, lc, terms) rows shared with the reducer
        P = set()
        for f in ints:
            f = _reduce_full(f, basis_view, key)
            if not f:
                continue
            lt = max(f, key=key)
            _check_degree(lt)
            P = _update_pairs(G, lts, P, lt, key)
            G.append(f)
            lts.append(lt)
            basis_view.append((lt, f[lt], f))

        while P:
            i, j = min(
                P, key=lambda p: (key(monomial_lcm(lts[p[0]], lts[p[1]])), p[0], p[1])
            )
            P.remove((i, j))
            _check_degree(monomial_lcm(lts[i], lts[j]))
            s = _spoly(G[i], lts[i], G[i][lts[i]], G[j], lts[j], G[j][lts[j]])
            s = _reduce_full(s, basis_view, key)
            if not s:
                continue
            lt = max(s, key=key)
            _check_degree(lt)
            P = _update_pairs(G, lts, P, lt, key)
            G.append(s)
            lts.append(lt)
            basis_view.append((lt, s[lt], s))

        # Minimalize: drop elements whose leading term another divides.
        order_idx = sorted(range(len(G)), key=lambda i: key(lts[i]))
        minimal = []
        for i in order_idx:
            if not any(monomial_divides(lts[j], lts[i]) for j in minimal):
                minimal.append(i)
        # Interreduce the minimal elements.
        final = []
        for pos, i in enumerate(minimal):
            others = [
                (lts[j], G[j][lts[j]], G[j]) for j in minimal[:pos] + minimal[pos + 1 :]
            ]
            red = _reduce_full(G[i], others, key)
            final.append(red)
        final.sort(key=lambda f: key(max(f, key=key)))
        out = []
        for f in final:
            lt = max(f, key=key)
            lc = f[lt]
            out.append(
                Polynomial(vars, {m: Fraction(c, lc) for m, c in f.items()})
            )
        return GroebnerBasis(out, ordering)
    finally:
        _MAX_DEGREE = saved_cap


# ---------------------------------------------------------------------------
# Membership and arithmetic on ideals


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by a reduced basis (unique)."""
    if gb.elements and f.vars != gb.elements[0].vars:
        raise VariableSetMismatchError("polynomial and basis variable sets differ")
    key = gb.ordering.key
    basis = [(g.leading_monomial(gb.ordering), g) for g in gb.elements]
    work = dict(f.terms)
    rem = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        hit = None
        for lt, g in basis:
            if monomial_divides(lt, m):
                hit = (lt, g)
                break
        if hit is None:
            del work[m]
            rem[m] = c
            continue
        lt, g = hit
        shift = monomial_div(m, lt)
        for mg, cg in g.terms.items():
            mm = monomial_mul(mg, shift)
            s = work.get(mm, 0) - c * cg
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
    return Polynomial(f.vars, rem)


def in_ideal(f: Polynomial, ideal: Ideal, ordering=GREVLEX) -> bool:
    return normal_form(f, ideal.groebner_basis(ordering)).is_zero()


def is_unit_ideal(ideal: Ideal) -> bool:
    return ideal.groebner_basis(GREVLEX).is_unit()


def is_zero_ideal(ideal: Ideal) -> bool:
    return not ideal.groebner_basis(GREVLEX).elements


def ideals_equal(a: Ideal, b: Ideal) -> bool:
    """Equality via uniqueness of the reduced grevlex basis."""
    return a.groebner_basis(GREVLEX).elements == b.groebner_basis(GREVLEX).elements


def s_polynomial(f: Polynomial, g: Polynomial, ordering=GREVLEX) -> Polynomial:
    lmf = f.leading_monomial(ordering)
    lmg = g.leading_monomial(ordering)
    lcm = monomial_lcm(lmf, lmg)
    mf = Polynomial(f.vars, {monomial_div(lcm, lmf): Fraction(1, 1) / f.terms[lmf]})
    mg = Polynomial(g.vars, {monomial_div(lcm, lmg): Fraction(1, 1) / g.terms[lmg]})
    return mf * f - mg * g


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    if a.vars != b.vars:
        raise VariableSetMismatchError("ideal sum over different variable sets")
    return Ideal(a.generators + b.generators, a.vars)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.vars != b.vars:
        raise VariableSetMismatchError("ideal product over different variable sets")
    gens = [f * g for f in a.generators for g in b.generators]
    return Ideal(gens, a.vars)


def eliminate(a: Ideal, drop) -> Ideal:
    """Intersection with the subring excluding the dropped variables."""
    drop = tuple(drop)
    names = a.vars.names
    for n in drop:
        a.vars.index(n)
    drop_set = set(drop)
    if len(drop_set) >= len(names):
        raise ValidationError("cannot eliminate every variable")
    kept_ambient = tuple(n for n in a.vars.ambient if n not in drop_set)
    kept_params = tuple(n for n in a.vars.parameters if n not in drop_set)
    target = VariableSet(kept_ambient, kept_params)
    order = MonomialOrdering.eliminating([a.vars.index(n) for n in drop_set])
    basis = a.groebner_basis(order)
    drop_idx = [a.vars.index(n) for n in drop_set]
    kept = []
    for g in basis.elements:
        if all(all(m[i] == 0 for i in drop_idx) for m in g.terms):
            kept.append(g.restrict(target))
    return Ideal(kept, target)


def ideal_intersection(a: Ideal, b: Ideal) -> Ideal:
    """Tag-variable intersection: eliminate t from t*a + (1-t)*b."""
    if a.vars != b.vars:
        raise VariableSetMismatchError("intersection over different variable sets")
    if is_zero_ideal(a) or is_zero_ideal(b):
        return Ideal((), a.vars)
    tag = a.vars.fresh_name("t_")
    ext = a.vars.extended(tag)
    t = Polynomial.variable(ext, tag)
    one = Polynomial.constant(ext, 1)
    gens = [t * g.lift(ext) for g in a.generators]
    gens += [(one - t) * g.lift(ext) for g in b.generators]
    elim = eliminate(Ideal(gens, ext), [tag])
    return Ideal([g.restrict(a.vars) for g in elim.generators], a.vars)


def exact_divide(p: Polynomial, g: Polynomial) -> Polynomial:
    """Divide p by g, which must divide exactly."""
    if g.is_zero():
        raise PreconditionError("division by the zero polynomial")
    key = GREVLEX.key
    ltg = g.leading_monomial(GREVLEX)
    lcg = g.terms[ltg]
    work = dict(p.terms)
    quot = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        if not monomial_divides(ltg, m):
            raise DetsingError("exact division failed; numerator not a multiple")
        shift = monomial_div(m, ltg)
        coef = c / lcg
        quot[shift] = coef
        for mg, cg in g.terms.items():
            mm = monomial_mul(mg, shift)
            s = work.get(mm, 0) - coef * cg
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
    return Polynomial(p.vars, quot)


def ideal_quotient(a: Ideal, g: Polynomial) -> Ideal:
    """Colon ideal (a : g) via intersection with the principal ideal (g)."""
    if g.is_zero():
        raise PreconditionError("quotient by the zero polynomial")
    if g.is_constant():
        return a
    meet = ideal_intersection(a, Ideal([g], a.vars))
    gens = [exact_divide(h, g) for h in meet.generators]
    return Ideal(gens, a.vars)


def saturation(a: Ideal, b: Ideal) -> Ideal:
    """Saturation of a by b: iterated quotients per generator of b,
    combined over generators by intersection.

    Each per-generator chain stops when the reduced basis stabilizes;
    more than _SATURATION_CAP rounds raises LimitError.
    """
    if a.vars != b.vars:
        raise VariableSetMismatchError("saturation over different variable sets")
    gens = [g for g in b.generators if not g.is_zero()]
    if not gens:
        raise PreconditionError("saturation by the zero ideal")
    parts = []
    for g in gens:
        current = a
        for _ in range(_SATURATION_CAP):
            nxt = ideal_quotient(current, g)
            if ideals_equal(nxt, current):
                break
            current = nxt
        else:
            raise LimitError(
                f"saturation did not stabilize within {_SATURATION_CAP} rounds"
            )
        parts.append(current)
    result = parts[0]
    for part in parts[1:]:
        if is_unit_ideal(result):
            result = part
            continue
        if is_unit_ideal(part):
            continue
        result = ideal_intersection(result, part)
    return result


# ---------------------------------------------------------------------------
# Dimension, support, colength


def dimension(a: Ideal) -> int:
    """Krull dimension of the quotient ring; -1 for the unit ideal.

    Computed as the largest variable subset independent modulo the
    leading-term ideal of the reduced grevlex basis.
    """
    basis = a.groebner_basis(GREVLEX)
    if basis.is_unit():
        return -1
    q = len(a.vars)
    if not basis.elements:
        return q
    supports = []
    for lt in basis.leading_monomials():
        supports.append(frozenset(i for i, e in enumerate(lt) if e))
    for size in range(q, -1, -1):
        for subset in combinations(range(q), size):
            sset = set(subset)
            if all(not s <= sset for s in supports):
                return size
    return 0


def support_is_origin_only(a: Ideal) -> bool:
    """True when every variable lies in the radical (Rabinowitsch trick)."""
    basis = a.groebner_basis(GREVLEX)
    if basis.is_unit():
        raise PreconditionError("support test needs a proper ideal")
    gens = basis.elements if basis.elements else a.generators
    tag = a.vars.fresh_name("t_")
    ext = a.vars.extended(tag)
    t = Polynomial.variable(ext, tag)
    one = Polynomial.constant(ext, 1)
    lifted = [g.lift(ext) for g in gens]
    for name in a.vars.names:
        z = Polynomial.variable(ext, name)
        test = Ideal(lifted + [one - t * z], ext)
        if not is_unit_ideal(test):
            return False
    return True


def _standard_monomials(basis: GroebnerBasis, width, cap=200000):
    """Monomials outside the leading-term ideal (finitely many required)."""
    lts = basis.leading_monomials()
    # Zero-dimensionality certificate: a pure power of every variable leads.
    for j in range(width):
        if not any(
            lt[j] > 0 and all(lt[i] == 0 for i in range(width) if i != j)
            for lt in lts
        ):
            raise PreconditionError(
                "ideal is not zero-dimensional: no pure-power leading term "
                f"in variable index {j}"
            )
    seen = {(0,) * width}
    queue = [(0,) * width]
    while queue:
        m = queue.pop()
        for j in range(width):
            mm = list(m)
            mm[j] += 1
            mm = tuple(mm)
            if mm in seen:
                continue
            if any(monomial_divides(lt, mm) for lt in lts):
                continue
            seen.add(mm)
            queue.append(mm)
            if len(seen) > cap:
                raise LimitError("standard monomial enumeration exceeded cap")
    return seen


def colength(a: Ideal) -> int:
    """Vector-space dimension of the quotient ring for an ideal supported
    at the origin only (equals the local colength there)."""
    basis = a.groebner_basis(GREVLEX)
    if basis.is_unit():
        raise PreconditionError("colength of the unit ideal is undefined")
    std = _standard_monomials(basis, len(a.vars))
    count = len(std)
    # Support certificate: every variable is nilpotent in the quotient.
    for name in a.vars.names:
        z = Polynomial.variable(a.vars, name) ** count
        if not normal_form(z, basis).is_zero():
            raise PreconditionError(
                "support is not confined to the origin; colength here is a "
                "local invariant this operation cannot produce"
            )
    return count


def maximal_ideal(vars: VariableSet) -> Ideal:
    return Ideal([Polynomial.variable(vars, n) for n in vars.names], vars)


def colength_at_origin(a: Ideal) -> int:
    """Colength of the origin-primary component (0 when the origin is not
    in the zero set).  Needs a zero-dimensional ideal."""
    basis = a.groebner_basis(GREVLEX)
    if basis.is_unit():
        return 0
    if dimension(a) != 0:
        raise PreconditionError("colength at the origin needs a zero-dimensional ideal")
    away = saturation(a, maximal_ideal(a.vars))
    if is_unit_ideal(away):
        return colength(a)
    origin_part = saturation(a, away)
    if is_unit_ideal(origin_part):
        return 0
    return colength(origin_part)
