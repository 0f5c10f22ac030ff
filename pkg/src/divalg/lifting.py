"""Polynomial liftings of the induced projective map, and the degree scan.

A lifting of eta_P is a polynomial map Phi: R^n -> R^n whose components are
homogeneous of one common degree d >= 1 and relatively prime, with
[Phi(v)] = eta_P([v]) and Phi(v) != 0 away from the origin.  For a dissident
map such a lifting exists, is unique up to nonzero scalar multiples, and has
1 <= d <= 5, so the degree of the map is found by scanning d = 1..5.

At each candidate degree the orthogonality condition

    < Phi(v), eta(v ^ (|v|^2 w - <v,w> v)) > = 0   as a polynomial in (v, w)

is a linear system in Phi's coefficients: rows are indexed by the w-slot and
the degree-(d+3) monomials in v, columns by the unknown coefficients.  The
exact kernel of that system is computed with a modular pivot pass, kernel
elements are filtered by exact pointwise comparison against eta_P at seeded
sample points (this removes solutions that vanish somewhere or pick a wrong
line), and the first degree with a validated element wins.  Scanning in
order makes the returned degree minimal by construction.

Nonvanishing of Phi on R^n - {0} is established by sampling plus the
uniqueness of the lifting; it is reported as a confidence statement, not
certified symbolically.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .dissident import DissidentMap, ZeroVector, DegenerateSpan, eta_P_point, sample_vector, seeded_rng
from .exact import Matrix, primitive_vector
from .modkernel import SparseIntMatrix, sparse_kernel
from .poly import (
    HomogeneousPoly,
    divide_exact,
    monomial_count,
    monomials,
    poly_content_gcd,
    primitive_poly_vector,
)

DEFAULT_SAMPLES = 64
DEFAULT_MAX_DEGREE = 5


class LiftingError(RuntimeError):
    pass


class NoLiftingFound(LiftingError):
    """No validated kernel element at any degree <= max_degree: the input is
    not dissident, or the solver is broken."""


class AmbiguousKernel(LiftingError):
    """More than one validated projective solution at the minimal degree,
    contradicting uniqueness of the lifting."""


class OddnessViolation(LiftingError):
    """A computed degree on R^7 came out even, which is impossible for a
    dissident map; treated as a solver bug signal."""


class Lifting:
    """A validated lifting: n components, homogeneous of common degree >= 1,
    not all zero, relatively prime (all enforced on construction)."""

    __slots__ = ("n", "degree", "components")

    def __init__(self, n, degree, components):
        components = tuple(components)
        if len(components) != n:
            raise ValueError("component count differs from n")
        if degree < 1:
            raise ValueError("lifting degree must be >= 1")
        for p in components:
            if p.nvars != n or p.degree != degree:
                raise ValueError("components must share nvars and degree")
        nonzero = [p for p in components if not p.is_zero()]
        if not nonzero:
            raise ValueError("lifting components are all zero")
        gcd = poly_content_gcd(nonzero)
        if gcd.degree != 0:
            raise ValueError(f"components share the factor {gcd!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("Lifting is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Lifting)
            and (self.n, self.degree, self.components)
            == (other.n, other.degree, other.components)
        )

    def __call__(self, point):
        return tuple(p.eval(point) for p in self.components)

    @staticmethod
    def identity(n) -> "Lifting":
        return Lifting(n, 1, [HomogeneousPoly.variable(n, i) for i in range(n)])


def constraint_shape(n, d):
    """(rows, cols) of the degree-d constraint system on R^n."""
    return n * monomial_count(n, d + 3), n * monomial_count(n, d)


def _integer_tensor(eta: DissidentMap):
    """Clear denominators of the whole tensor; scaling every entry by one
    rational scales each constraint row uniformly, so the kernel is
    unchanged."""
    dens = [
        x.denominator for plane in eta.tensor for row in plane for x in row
    ]
    scale = lcm(*dens) if dens else 1
    n = eta.n
    return [
        [[int(x * scale) for x in eta.tensor[i][j]] for j in range(n)]
        for i in range(n)
    ], scale


def _assemble_coo(eta: DissidentMap, d, tensor):
    """COO cells of the constraint matrix for the given structure tensor.

    Column (k, m): coefficient monomial m of component k.  Its contribution
    to the w-slot j is m(v) * <e_k, eta(v ^ (|v|^2 e_j - v_j v))>, and since
    eta(v ^ v) vanishes identically this expands to
    sum_{l,i} tensor[i][j][k] * (m * x_l^2 * x_i).  Rows are indexed j-major
    by the degree-(d+3) monomials.
    """
    n = eta.n
    cols_monos = monomials(n, d)
    rows_monos = monomials(n, d + 3)
    row_index = {m: i for i, m in enumerate(rows_monos)}
    coo = []
    for k in range(n):
        for m_idx, m in enumerate(cols_monos):
            col = k * len(cols_monos) + m_idx
            for j in range(n):
                cells = {}
                for i in range(n):
                    t = tensor[i][j][k]
                    if not t:
                        continue
                    for l in range(n):
                        exps = list(m)
                        exps[l] += 2
                        exps[i] += 1
                        key = tuple(exps)
                        cells[key] = cells.get(key, 0) + t
                base = j * len(rows_monos)
                for key, val in cells.items():
                    if val:
                        coo.append((base + row_index[key], col, val))
    return coo, len(rows_monos) * n, len(cols_monos) * n


def build_constraint_system(eta: DissidentMap, d) -> Matrix:
    """The exact dense constraint matrix at candidate degree d (1..5).

    Rows: monomials of the (v, w) orthogonality identity (degree d+3 in v,
    degree 1 in w, w-slot major).  Columns: the unknown coefficients of Phi,
    component-major in the fixed monomial order.  Intended for the small
    cases; the solver itself works on the sparse integer form.
    """
    if not 1 <= d <= 5:
        raise ValueError("candidate degree out of range 1..5")
    plain = [
        [[x for x in row] for row in plane] for plane in eta.tensor
    ]
    coo, nrows, ncols = _assemble_coo(eta, d, plain)
    grid = [[Fraction(0)] * ncols for _ in range(nrows)]
    for r, c, v in coo:
        grid[r][c] += v
    return Matrix(grid)


def _sparse_system(eta: DissidentMap, d) -> SparseIntMatrix:
    tensor, _ = _integer_tensor(eta)
    coo, nrows, ncols = _assemble_coo(eta, d, tensor)
    return SparseIntMatrix(nrows, ncols, coo)


def _components_from_vector(n, d, vec):
    cols_monos = monomials(n, d)
    per = len(cols_monos)
    comps = []
    for k in range(n):
        terms = {}
        for m_idx, m in enumerate(cols_monos):
            c = vec[k * per + m_idx]
            if c:
                terms[m] = Fraction(c)
        comps.append(HomogeneousPoly(n, d, terms))
    return tuple(comps)


def _slot_polynomials(eta: DissidentMap):
    """W[i][k] = <e_k, eta(v ^ (|v|^2 e_i - v_i v))> as degree-3 polynomials."""
    n = eta.n
    out = []
    for i in range(n):
        row = []
        for k in range(n):
            terms = {}
            for a in range(n):
                t = eta.tensor[a][i][k]
                if not t:
                    continue
                for l in range(n):
                    exps = [0] * n
                    exps[l] += 2
                    exps[a] += 1
                    key = tuple(exps)
                    terms[key] = terms.get(key, Fraction(0)) + t
            row.append(HomogeneousPoly(n, 3, terms))
        out.append(row)
    return out


class _PointCache:
    """Sampled validation points with lazily computed target lines."""

    def __init__(self, eta, samples, seed):
        rng = seeded_rng(seed, "lifting-points")
        self.eta = eta
        self.points = [sample_vector(rng, eta.n) for _ in range(samples)]
        self._lines = {}

    def line(self, s):
        if s not in self._lines:
            try:
                self._lines[s] = eta_P_point(self.eta, self.points[s])
            except (DegenerateSpan, ZeroVector):
                self._lines[s] = None
        return self._lines[s]


def _validate(components, cache: _PointCache):
    """Pointwise condition (b) at every cached sample: Phi(v) nonzero and on
    the eta_P line."""
    for s, point in enumerate(cache.points):
        value = tuple(p.eval(point) for p in components)
        if all(x == 0 for x in value):
            return False
        target = cache.line(s)
        if target is None or primitive_vector(value) != target:
            return False
    return True


def solve_lifting_scan(eta: DissidentMap, samples=DEFAULT_SAMPLES, seed=0,
                       max_degree=DEFAULT_MAX_DEGREE):
    """Scan d = 1..max_degree; return (Lifting, scan report list).

    The scan report carries one entry per visited degree with the system
    shape, exact kernel dimension, and how many kernel elements survived
    pointwise validation.  Deterministic given (eta, seed).
    """
    if max_degree < 1 or max_degree > 5:
        raise ValueError("max_degree out of range 1..5")
    if samples < 1:
        raise ValueError("at least one validation sample is required")
    cache = _PointCache(eta, samples, seed)
    scan = []
    for d in range(1, max_degree + 1):
        system = _sparse_system(eta, d)
        kernel = sparse_kernel(system)
        entry = {
            "degree": d,
            "rows": system.nrows,
            "cols": system.ncols,
            "kernel_dim": len(kernel),
            "validated": 0,
        }
        scan.append(entry)
        if not kernel:
            continue
        survivors = []
        for vec in kernel:
            comps = _components_from_vector(eta.n, d, vec)
            if _validate(comps, cache):
                survivors.append(comps)
        reduced = []
        for comps in survivors:
            gcd = poly_content_gcd([p for p in comps if not p.is_zero()])
            if gcd.degree:
                comps = tuple(divide_exact(p, gcd) for p in comps)
            reduced.append(primitive_poly_vector(comps))
        distinct = []
        for comps in reduced:
            if comps not in distinct:
                distinct.append(comps)
        entry["validated"] = len(distinct)
        if not distinct:
            continue
        if len(distinct) > 1:
            raise AmbiguousKernel(
                f"{len(distinct)} validated projective solutions at degree {d}"
            )
        winner = distinct[0]
        win_degree = next(p.degree for p in winner if not p.is_zero())
        if win_degree != d:
            raise AmbiguousKernel(
                "validated solution reduced below the scanned degree"
            )
        return Lifting(eta.n, d, winner), scan
    raise NoLiftingFound(
        f"no validated lifting up to degree {max_degree} "
        f"({samples} validation samples)"
    )


def solve_lifting(eta: DissidentMap, samples=DEFAULT_SAMPLES, seed=0,
                  max_degree=DEFAULT_MAX_DEGREE) -> Lifting:
    return solve_lifting_scan(eta, samples, seed, max_degree)[0]


def verify_lifting(eta: DissidentMap, phi, samples=DEFAULT_SAMPLES, seed=0):
    """Check conditions (a), (b), (c) for a candidate lifting; returns a
    report dict (never raises on a failing condition).

    (a) is structural; the identity part of (b) is checked symbolically (all
    coefficients of <Phi(v), eta(v ^ w_i(v))> vanish for every slot i), the
    pointwise part of (b) by exact sampling; (c) is an exact content-GCD.
    """
    components = tuple(phi.components) if isinstance(phi, Lifting) else tuple(phi)
    n = eta.n
    degrees = {p.degree for p in components}
    nonzero = [p for p in components if not p.is_zero()]
    a_pass = (
        len(components) == n
        and len(degrees) == 1
        and bool(nonzero)
        and next(iter(degrees)) >= 1
    )

    b_symbolic = True
    if a_pass:
        slots = _slot_polynomials(eta)
        for i in range(n):
            acc = HomogeneousPoly.zero(n, components[0].degree + 3)
            for k in range(n):
                if not components[k].is_zero() and not slots[i][k].is_zero():
                    acc = acc + components[k] * slots[i][k]
            if not acc.is_zero():
                b_symbolic = False
                break
    else:
        b_symbolic = False

    cache = _PointCache(eta, samples, seed)
    nonvanishing_failures = 0
    line_failures = 0
    for s, point in enumerate(cache.points):
        value = tuple(p.eval(point) for p in components)
        if all(x == 0 for x in value):
            nonvanishing_failures += 1
            continue
        target = cache.line(s)
        if target is None or primitive_vector(value) != target:
            line_failures += 1

    if nonzero:
        gcd = poly_content_gcd(nonzero)
        c_pass = gcd.degree == 0
        gcd_repr = repr(gcd)
    else:
        c_pass = False
        gcd_repr = "0"

    report = {
        "degree": max(degrees) if degrees else None,
        "a_homogeneous_common_degree": a_pass,
        "b_orthogonality_identity": b_symbolic,
        "b_sampled_nonvanishing": {
            "checked": samples,
            "failures": nonvanishing_failures,
        },
        "b_sampled_line_agreement": {
            "checked": samples,
            "failures": line_failures,
        },
        "c_relatively_prime": c_pass,
        "content_gcd": gcd_repr,
        "nonvanishing_certified": False,
    }
    report["all_pass"] = (
        a_pass
        and b_symbolic
        and nonvanishing_failures == 0
        and line_failures == 0
        and c_pass
    )
    return report


def degree(eta: DissidentMap, samples=DEFAULT_SAMPLES, seed=0,
           max_degree=DEFAULT_MAX_DEGREE) -> int:
    """The degree of a dissident map via the minimal validated lifting.

    On R^7 the result is asserted to lie in {1, 3, 5}; dissident maps on R^7
    never have even degree, so an even value is raised as OddnessViolation
    (solver bug signal).
    """
    lifting = solve_lifting(eta, samples=samples, seed=seed, max_degree=max_degree)
    if eta.n == 7 and lifting.degree % 2 == 0:
        raise OddnessViolation(f"computed an even degree {lifting.degree} on R^7")
    return lifting.degree
