"""Homogeneous multivariate polynomials with rational coefficients.

A polynomial is a map from exponent tuples (all summing to the same total
degree) to nonzero Fractions.  The monomial order used everywhere is graded
lexicographic with x0 > x1 > ...; since all polynomials here are homogeneous
this reduces to plain lexicographic comparison of exponent tuples within one
degree.  GCDs are delegated to sympy (a mature exact implementation) and then
renormalized to leading coefficient 1 under this order; exact divisibility is
checked by our own division routine so the two directions stay independent.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import sympy

from .exact import as_fraction, scalar_to_str


class PolyError(ValueError):
    pass


def monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, lex descending."""
    if degree < 0:
        raise PolyError("negative degree")
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


def monomial_count(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1)


class HomogeneousPoly:
    """Homogeneous polynomial in ``nvars`` variables of fixed total degree.

    The zero polynomial is the empty term map with a nominal degree.
    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms=None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = as_fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise PolyError(f"bad exponent tuple {exps} for {nvars} variables")
            if sum(exps) != degree:
                raise PolyError(f"term {exps} is not of degree {degree}")
            clean[exps] = clean.get(exps, Fraction(0)) + coeff
        clean = {e: c for e, c in clean.items() if c != 0}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousPoly is immutable")

    # -- constructors

    @staticmethod
    def zero(nvars: int, degree: int = 0) -> "HomogeneousPoly":
        return HomogeneousPoly(nvars, degree, {})

    @staticmethod
    def constant(nvars: int, c) -> "HomogeneousPoly":
        return HomogeneousPoly(nvars, 0, {(0,) * nvars: as_fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "HomogeneousPoly":
        exps = [0] * nvars
        exps[i] = 1
        return HomogeneousPoly(nvars, 1, {tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exps, coeff=1) -> "HomogeneousPoly":
        exps = tuple(exps)
        return HomogeneousPoly(nvars, sum(exps), {exps: as_fraction(coeff)})

    # -- basics

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        # zero polynomials of any nominal degree are equal
        if self.is_zero() and other.is_zero():
            return self.nvars == other.nvars
        return (self.nvars, self.degree, self.terms) == (other.nvars, other.degree, other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for exps in sorted(self.terms, reverse=True):
            coeff = self.terms[exps]
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            if mono:
                bits.append(f"{scalar_to_str(coeff)}*{mono}" if coeff != 1 else mono)
            else:
                bits.append(scalar_to_str(coeff))
        return " + ".join(bits)

    def leading(self):
        """(exponent tuple, coefficient) of the grlex-leading term."""
        if self.is_zero():
            raise PolyError("leading term of the zero polynomial")
        exps = max(self.terms)
        return exps, self.terms[exps]

    # -- arithmetic

    def _check_nvars(self, other):
        if self.nvars != other.nvars:
            raise PolyError("variable count mismatch")

    def __add__(self, other):
        self._check_nvars(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise PolyError("degree mismatch in homogeneous addition")
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return HomogeneousPoly(self.nvars, self.degree, terms)

    def __neg__(self):
        return HomogeneousPoly(self.nvars, self.degree,
                               {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return self.scale(other)
        self._check_nvars(other)
        degree = self.degree + other.degree
        if self.is_zero() or other.is_zero():
            return HomogeneousPoly.zero(self.nvars, degree)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, Fraction(0)) + c1 * c2
        return HomogeneousPoly(self.nvars, degree, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "HomogeneousPoly":
        c = as_fraction(c)
        if c == 0:
            return HomogeneousPoly.zero(self.nvars, self.degree)
        return HomogeneousPoly(self.nvars, self.degree,
                               {e: c * v for e, v in self.terms.items()})

    def eval(self, point) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise PolyError("evaluation point length mismatch")
        point = [as_fraction(x) for x in point]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            val = coeff
            for x, e in zip(point, exps):
                if e:
                    val *= x ** e
            total += val
        return total


def poly_arith(p: HomogeneousPoly, q: HomogeneousPoly, op: str) -> HomogeneousPoly:
    """Exact addition or multiplication; preconditions as for + and *."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise PolyError(f"unknown op {op!r}")


def divide_exact(p: HomogeneousPoly, g: HomogeneousPoly):
    """Exact quotient p / g, or None when g does not divide p.

    Single-divisor division in grlex order: the leading term of any multiple
    of g is divisible by the leading term of g, so the first failure proves
    indivisibility.
    """
    p._check_nvars(g)
    if g.is_zero():
        raise PolyError("division by the zero polynomial")
    if p.is_zero():
        return HomogeneousPoly.zero(p.nvars, max(p.degree - g.degree, 0))
    if p.degree < g.degree:
        return None
    quotient = {}
    r = p
    g_exps, g_coeff = g.leading()
    while not r.is_zero():
        r_exps, r_coeff = r.leading()
        diff = tuple(a - b for a, b in zip(r_exps, g_exps))
        if any(d < 0 for d in diff):
            return None
        c = r_coeff / g_coeff
        quotient[diff] = quotient.get(diff, Fraction(0)) + c
        r = r - g * HomogeneousPoly.monomial(p.nvars, diff, c)
    return HomogeneousPoly(p.nvars, p.degree - g.degree, quotient)


# ---------------------------------------------------------------------------
# GCD (sympy-backed, renormalized to our monomial order)

_SYMPY_GENS = {}


def _gens(nvars):
    if nvars not in _SYMPY_GENS:
        _SYMPY_GENS[nvars] = sympy.symbols(f"x0:{nvars}")
    return _SYMPY_GENS[nvars]


def _to_sympy(p: HomogeneousPoly):
    rep = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(rep, *_gens(p.nvars), domain="QQ")


def _from_sympy(poly, nvars) -> HomogeneousPoly:
    terms = {}
    degree = 0
    for exps, coeff in poly.as_dict().items():
        exps = tuple(int(e) for e in exps)
        degree = sum(exps)
        coeff = Fraction(int(coeff.p), int(coeff.q))
        terms[exps] = coeff
    if not terms:
        return HomogeneousPoly.zero(nvars, 0)
    degrees = {sum(e) for e in terms}
    if len(degrees) != 1:
        raise PolyError("gcd of homogeneous inputs came back inhomogeneous")
    return HomogeneousPoly(nvars, degree, terms)


def poly_content_gcd(polys) -> HomogeneousPoly:
    """GCD of a family of homogeneous polynomials.

    Returns the common divisor normalized to leading coefficient 1 in grlex
    order; the constant 1 iff the inputs are relatively prime.  Raises on an
    empty family or all-zero inputs.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise PolyError("gcd of all-zero inputs")
    nvars = polys[0].nvars
    for p in polys:
        if p.nvars != nvars:
            raise PolyError("variable count mismatch")
    acc = _to_sympy(polys[0])
    one = sympy.Poly(1, *_gens(nvars), domain="QQ")
    for p in polys[1:]:
        acc = acc.gcd(_to_sympy(p))
        if acc == one:
            break
    result = _from_sympy(acc, nvars)
    _, lead = result.leading()
    return result.scale(1 / lead)


def primitive_poly_vector(components):
    """Scale a tuple of polynomials by one rational so all coefficients are
    integers of common content 1, with the first nonzero coefficient (in
    component order, grlex within a component) positive."""
    components = list(components)
    coeffs = []
    for p in components:
        for exps in sorted(p.terms, reverse=True):
            coeffs.append(p.terms[exps])
    if not coeffs:
        raise PolyError("primitive normalization of the zero vector")
    from math import gcd, lcm

    den = lcm(*(c.denominator for c in coeffs))
    nums = [c.numerator * (den // c.denominator) for c in coeffs]
    content = 0
    for a in nums:
        content = gcd(content, a)
    scale = Fraction(den, content)
    if next(a for a in nums if a != 0) < 0:
        scale = -scale
    return tuple(p.scale(scale) for p in components)
