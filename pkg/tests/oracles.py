"""Brute-force linear-algebra oracles, independent of the basis engine.

Membership and colength are re-derived from truncated multiplication
matrices (Macaulay-style) over exact integer arithmetic, at a truncation
degree verified stable: the answers at two consecutive degrees must
agree before they count.
"""

from math import gcd

from detsing.poly import GREVLEX


def monomials_up_to(width, degree):
    """All exponent tuples of total degree <= degree, largest first."""
    out = [()]
    for _ in range(width):
        out = [m + (e,) for m in out for e in range(degree + 1 - sum(m))]
    out.sort(key=GREVLEX.key, reverse=True)
    return out


class IntEchelon:
    """Row echelon form over the integers (fraction-free)."""

    def __init__(self, width):
        self.width = width
        self.rows = {}

    @staticmethod
    def _strip(vec):
        g = 0
        for v in vec:
            g = gcd(g, abs(v))
            if g == 1:
                return vec
        if g > 1:
            vec = [v // g for v in vec]
        return vec

    def reduce(self, vec):
        vec = list(vec)
        i = 0
        while i < self.width:
            if vec[i] == 0:
                i += 1
                continue
            row = self.rows.get(i)
            if row is None:
                return vec, i
            c, d = vec[i], row[i]
            g = gcd(abs(c), abs(d))
            a, b = d // g, c // g
            vec = [a * v - b * r for v, r in zip(vec, row)]
            i += 1
        return vec, None

    def insert(self, vec):
        vec, lead = self.reduce(vec)
        if lead is None:
            return False
        vec = self._strip(vec)
        if vec[lead] < 0:
            vec = [-v for v in vec]
        self.rows[lead] = vec
        return True

    @property
    def rank(self):
        return len(self.rows)


def _int_vector(poly, index_of, shift=None):
    denom = 1
    for c in poly.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    vec = [0] * len(index_of)
    for m, c in poly.terms.items():
        if shift is not None:
            m = tuple(a + b for a, b in zip(m, shift))
        vec[index_of[m]] = int(c * denom)
    return vec


def _multiples_echelon(gens, degree):
    width = len(gens[0].vars)
    monos = monomials_up_to(width, degree)
    index_of = {m: i for i, m in enumerate(monos)}
    ech = IntEchelon(len(monos))
    for g in gens:
        d = g.total_degree()
        if d < 0:
            continue
        for shift in monomials_up_to(width, degree - d):
            ech.insert(_int_vector(g, index_of, shift))
    return ech, index_of


def membership_at_degree(probe, gens, degree):
    ech, index_of = _multiples_echelon(gens, degree)
    vec, lead = ech.reduce(_int_vector(probe, index_of))
    return lead is None


def stable_membership(probes, gens, max_degree=14):
    """Membership answers at a verified-stable truncation degree."""
    start = max(
        [g.total_degree() for g in gens] + [p.total_degree() for p in probes]
    )
    prev = None
    for degree in range(start, max_degree + 1):
        cur = tuple(membership_at_degree(p, gens, degree) for p in probes)
        if cur == prev:
            return cur, degree
        prev = cur
    raise AssertionError("membership answers never stabilized; raise max_degree")


def corank_at_degree(gens, degree):
    ech, index_of = _multiples_echelon(gens, degree)
    return len(index_of) - ech.rank


def stable_corank(gens, max_degree=16):
    """Quotient dimension from truncations, stabilized over two degrees."""
    start = max(g.total_degree() for g in gens)
    prev = None
    for degree in range(start, max_degree + 1):
        cur = corank_at_degree(gens, degree)
        if cur == prev:
            return cur
        prev = cur
    raise AssertionError("corank never stabilized; raise max_degree")


def standard_monomial_count(basis, width, bound=60):
    """Recount monomials outside the leading-term ideal by brute force."""
    lts = basis.leading_monomials()
    degree = 0
    prev = None
    while degree <= bound:
        count = 0
        for m in monomials_up_to(width, degree):
            if not any(all(a <= b for a, b in zip(lt, m)) for lt in lts):
                count += 1
        if count == prev:
            return count
        prev = count
        degree += 1
    raise AssertionError("standard monomial count did not stabilize")


def monomial_ideal_dimension(monomials, width):
    """Max independent variable subset, brute force over all subsets."""
    from itertools import combinations

    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monomials]
    best = -1
    for size in range(width, -1, -1):
        for subset in combinations(range(width), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return best
