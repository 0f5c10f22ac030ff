"""Quadratic division algebras from dissident triples, and back.

A dissident triple (R^n, xi, eta) yields the algebra R x R^n with

    (a, v)(b, w) = (ab - <v,w> + xi(v ^ w),  aw + bv + eta(v ^ w)),

an (n+1)-dimensional real quadratic division algebra; conversely a quadratic
unital presentation splits as R1 + V (Frobenius), and the products of purely
imaginary elements recover xi (the antisymmetric part of the scalar slot)
and eta (the imaginary slot).  On morphisms the construction sends an
orthogonal triple morphism phi to diag(1, phi).

Division is only ever falsified: det L_a is a degree-(dim) polynomial whose
nonvanishing away from 0 we test on seeded exact samples, so a clean budget
means "sampled, no counterexample", never "certified".
"""

from __future__ import annotations

from fractions import Fraction

from .dissident import DissidentMap, DissidentTriple, MatrixQuadruple, quadruple_to_triple, sample_vector, seeded_rng
from .exact import DimensionError, Matrix, dot, is_rational_square, vector
from .octonion import NotQuadratic, NotUnital, frobenius_split


class BadDimension(ValueError):
    """recover_triple only handles presentations of dimension 4 or 8."""


class IndefiniteForm(ValueError):
    """The recovered bilinear form is not positive definite, so the
    presentation carries no Euclidean triple (it cannot be a division
    algebra)."""


class IrrationalGram(ValueError):
    """Orthonormalizing the recovered form needs irrational square roots.

    Carries a basis-change certificate instead of a rotated triple: an
    orthogonal-by-construction rational basis of V and the diagonal of the
    form on it.
    """

    def __init__(self, basis, diagonal):
        super().__init__("orthonormalization leaves the rationals")
        self.basis = basis
        self.diagonal = diagonal


class AlgebraPresentation:
    """Structure constants of a finite-dimensional real algebra with a
    distinguished two-sided unity (verified exactly on construction)."""

    __slots__ = ("dim", "constants", "unity")

    def __init__(self, constants, unity):
        dim = len(constants)
        tensor = tuple(
            tuple(vector(constants[i][j]) for j in range(dim)) for i in range(dim)
        )
        for plane in tensor:
            if len(plane) != dim or any(len(cell) != dim for cell in plane):
                raise DimensionError("structure constants are not dim^3")
        unity = vector(unity)
        if len(unity) != dim:
            raise DimensionError("unity coordinate length mismatch")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "constants", tensor)
        object.__setattr__(self, "unity", unity)
        _check_unity(self)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraPresentation is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraPresentation)
            and (self.dim, self.constants, self.unity)
            == (other.dim, other.constants, other.unity)
        )

    def mul(self, x, y):
        """Exact product of coefficient vectors."""
        dim = self.dim
        if len(x) != dim or len(y) != dim:
            raise DimensionError("coefficient vector length mismatch")
        out = [Fraction(0)] * dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            plane = self.constants[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                cell = plane[j]
                for k in range(dim):
                    if cell[k]:
                        out[k] += xi * yj * cell[k]
        return tuple(out)

    def left_mul_matrix(self, a) -> Matrix:
        """L_a: x -> a x as a matrix on the presentation basis."""
        cols = [self.mul(a, _basis(self.dim, j)) for j in range(self.dim)]
        return Matrix.from_columns(cols)

    def right_mul_matrix(self, a) -> Matrix:
        """R_a: x -> x a."""
        cols = [self.mul(_basis(self.dim, j), a) for j in range(self.dim)]
        return Matrix.from_columns(cols)

    def basis_element(self, i):
        return _basis(self.dim, i)


def _basis(dim, i):
    return tuple(Fraction(int(i == t)) for t in range(dim))


def _check_unity(alg):
    for i in range(alg.dim):
        e_i = _basis(alg.dim, i)
        if alg.mul(alg.unity, e_i) != e_i or alg.mul(e_i, alg.unity) != e_i:
            raise NotUnital(f"unity fails on basis index {i}")


# ---------------------------------------------------------------------------
# the triple -> algebra construction


def make_qda(triple: DissidentTriple) -> AlgebraPresentation:
    """The algebra of a triple on the basis (1, e_1, ..., e_n)."""
    n = triple.n
    dim = n + 1
    zero = Fraction(0)
    constants = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    constants[0][0][0] = Fraction(1)
    for j in range(n):
        constants[0][j + 1][j + 1] = Fraction(1)
        constants[j + 1][0][j + 1] = Fraction(1)
    for i in range(n):
        for j in range(n):
            scalar = triple.xi[i, j] - Fraction(int(i == j))
            constants[i + 1][j + 1][0] = scalar
            for k in range(n):
                constants[i + 1][j + 1][k + 1] = triple.eta.tensor[i][j][k]
    return AlgebraPresentation(constants, _basis(dim, 0))


def quadruple_algebra(q: MatrixQuadruple) -> AlgebraPresentation:
    """The matrix-quadruple algebra: exactly make_qda(quadruple_to_triple(q))."""
    return make_qda(quadruple_to_triple(q))


def functor_on_morphism(phi: Matrix) -> Matrix:
    """A triple morphism phi becomes the algebra morphism diag(1, phi)."""
    n = phi.rows
    zero = Fraction(0)
    out = [[zero] * (n + 1) for _ in range(n + 1)]
    out[0][0] = Fraction(1)
    for i in range(n):
        for j in range(n):
            out[i + 1][j + 1] = phi[i, j]
    return Matrix(out)


# ---------------------------------------------------------------------------
# the algebra -> triple recovery


def recover_triple(alg: AlgebraPresentation) -> DissidentTriple:
    """Recover (V, xi, eta) from a quadratic presentation of dimension 4 or 8.

    The Frobenius split gives rho and a basis of V; the bilinear form
    <x,y> = 2 rho(x) rho(y) - rho(xy+yx)/2 is computed on that basis and,
    when it is not already the identity, orthonormalized by exact
    Gram-Schmidt.  Square roots are avoided: if some diagonal norm is not a
    rational square the basis-change certificate is raised as IrrationalGram.
    Round-trips make_qda exactly, same basis, for algebras built here.
    """
    if alg.dim not in (4, 8):
        raise BadDimension(f"dimension {alg.dim} not in {{4, 8}}")
    n = alg.dim - 1
    rho, v_basis = frobenius_split(alg)

    def form(x, y):
        xy = alg.mul(x, y)
        yx = alg.mul(y, x)
        sym = tuple(a + b for a, b in zip(xy, yx))
        return 2 * dot(rho, x) * dot(rho, y) - dot(rho, sym) / 2

    basis = [vector(v) for v in v_basis]
    gram = Matrix([[form(u, v) for v in basis] for u in basis])
    if gram != Matrix.identity(n):
        ortho = []
        norms = []
        for v in basis:
            u = list(v)
            for t, d in zip(ortho, norms):
                c = form(v, t) / d
                u = [a - c * b for a, b in zip(u, t)]
            u = tuple(u)
            d = form(u, u)
            if d <= 0:
                raise IndefiniteForm("recovered form is not positive definite")
            ortho.append(u)
            norms.append(d)
        scaled = []
        for u, d in zip(ortho, norms):
            root = is_rational_square(d)
            if root is None:
                raise IrrationalGram(ortho, norms)
            scaled.append(tuple(x / root for x in u))
        basis = scaled

    # coordinates of iota(u_i u_j) in the orthonormal basis
    cols = Matrix.from_columns(basis)
    xi = [[Fraction(0)] * n for _ in range(n)]
    tensor = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            prod = alg.mul(basis[i], basis[j])
            opp = alg.mul(basis[j], basis[i])
            xi[i][j] = (dot(rho, prod) - dot(rho, opp)) / 2
            iota = tuple(p - dot(rho, prod) * u for p, u in zip(prod, alg.unity))
            coords = cols.solve_right(iota)
            if coords is None:
                raise NotQuadratic("imaginary part of a product left V")
            tensor[i][j] = coords
    return DissidentTriple(n, Matrix(xi), DissidentMap(n, tensor))


# ---------------------------------------------------------------------------
# checks


def division_check(alg: AlgebraPresentation, trials: int, seed):
    """Search for a nonzero a with det L_a = 0 or det R_a = 0 (exact).

    Returns the first such witness, or None when the budget passes.
    Deterministic given the seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = seeded_rng(seed, "division")
    for _ in range(trials):
        a = sample_vector(rng, alg.dim)
        if alg.left_mul_matrix(a).det() == 0 or alg.right_mul_matrix(a).det() == 0:
            return a
    return None


def quadratic_check(alg: AlgebraPresentation) -> bool:
    """True iff 1, x, x^2 are dependent for every x, decided symbolically
    through the Frobenius split certificate."""
    try:
        frobenius_split(alg)
        return True
    except NotQuadratic:
        return False


def algebra_morphism_check(src: AlgebraPresentation, dst: AlgebraPresentation,
                           f: Matrix) -> bool:
    """Exact multiplicativity f(e_i e_j) = f(e_i) f(e_j) on all basis pairs."""
    if f.cols != src.dim or f.rows != dst.dim:
        raise DimensionError("morphism matrix has the wrong shape")
    if all(x == 0 for row in f.entries for x in row):
        raise ValueError("the zero map is not a morphism candidate")
    images = [f.column(j) for j in range(src.dim)]
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = f.matvec(src.mul(_basis(src.dim, i), _basis(src.dim, j)))
            rhs = dst.mul(images[i], images[j])
            if lhs != rhs:
                return False
    return True
