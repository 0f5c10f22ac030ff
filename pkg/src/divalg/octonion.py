"""Octonions, quaternions, vector products, and G2 membership.

Convention: the octonion basis is ordered (1, i, j, k, l, il, jl, kl), the
Cayley-Dickson doubling of the quaternions, and the multiplication table is
stored as the seven oriented triples below: (a, b, c) means
e_a e_b = e_c = -e_b e_a, cyclically.  All G2 matrices and structure
constants produced by this package are relative to this basis choice; the
choice is declared, not canonical.

The vector product on R^7 (and on R^3 via the quaternions) is the imaginary
part of the product of imaginary elements.  G2 is realized concretely as the
orthogonal 7x7 matrices that preserve this vector product.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Matrix, as_fraction, dot, vector
from .poly import HomogeneousPoly

OCTONION_TRIPLES = (
    (1, 2, 3),
    (1, 4, 5),
    (2, 4, 6),
    (3, 4, 7),
    (2, 5, 7),
    (5, 3, 6),
    (6, 1, 7),
)

QUATERNION_TRIPLES = ((1, 2, 3),)


class NotUnital(ValueError):
    """The presentation's distinguished element is not a two-sided unity."""


class NotQuadratic(ValueError):
    """Some element x has 1, x, x^2 linearly independent."""


def _signed_table(dim, triples):
    """dim x dim x dim integer structure tensor: e_i e_j = sum_k c[i][j][k] e_k."""
    c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        c[0][i][i] = 1
        c[i][0][i] = 1
    for i in range(1, dim):
        c[i][i][0] = -1
    for a, b, k in triples:
        for x, y, z in ((a, b, k), (b, k, a), (k, a, b)):
            c[x][y][z] = 1
            c[y][x][z] = -1
    return tuple(tuple(tuple(row) for row in plane) for plane in c)


OCTONION_TABLE = _signed_table(8, OCTONION_TRIPLES)
QUATERNION_TABLE = _signed_table(4, QUATERNION_TRIPLES)


def structure_table(dim):
    """The embedded structure-constant tensor for dim 4 or 8."""
    if dim == 8:
        return OCTONION_TABLE
    if dim == 4:
        return QUATERNION_TABLE
    raise ValueError(f"no table of dimension {dim}")


def table_mul(table, x, y):
    """Bilinear product of coefficient vectors under a structure tensor."""
    dim = len(table)
    if len(x) != dim or len(y) != dim:
        raise ValueError("coefficient vector length mismatch")
    out = [Fraction(0)] * dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += xi * yj * c
    return tuple(out)


def oct_mul(x, y):
    """Exact octonion product of coefficient 8-vectors."""
    return table_mul(OCTONION_TABLE, vector(x), vector(y))


def quat_mul(x, y):
    return table_mul(QUATERNION_TABLE, vector(x), vector(y))


def oct_conj(x):
    x = vector(x)
    return (x[0],) + tuple(-a for a in x[1:])


# ---------------------------------------------------------------------------
# vector products


def _cross_tensor(n):
    if n == 7:
        table = OCTONION_TABLE
    elif n == 3:
        table = QUATERNION_TABLE
    else:
        raise ValueError(f"no vector product on R^{n}")
    # imaginary part of the product of imaginary basis elements
    return tuple(
        tuple(
            tuple(Fraction(table[i + 1][j + 1][k + 1]) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


CROSS7_TENSOR = _cross_tensor(7)
CROSS3_TENSOR = _cross_tensor(3)


def vector_product(v, w):
    """v x w on R^3 or R^7 (quaternion / octonion imaginary part)."""
    n = len(v)
    if n == 7:
        tensor = CROSS7_TENSOR
    elif n == 3:
        tensor = CROSS3_TENSOR
    else:
        raise ValueError(f"no vector product on R^{n}")
    if len(w) != n:
        raise ValueError("vector length mismatch")
    v = vector(v)
    w = vector(w)
    out = [Fraction(0)] * n
    for i, vi in enumerate(v):
        if vi == 0:
            continue
        for j, wj in enumerate(w):
            if wj == 0:
                continue
            for k in range(n):
                c = tensor[i][j][k]
                if c:
                    out[k] += vi * wj * c
    return tuple(out)


def g2_check(s: Matrix) -> bool:
    """Exact G2 membership: orthogonal and preserves the vector product.

    Checks S^t S = I and S(e_i x e_j) = S e_i x S e_j on all 21 basis pairs;
    by bilinearity that settles every pair.
    """
    if (s.rows, s.cols) != (7, 7):
        raise ValueError("g2_check expects a 7x7 matrix")
    if not s.is_orthogonal():
        return False
    cols = [s.column(j) for j in range(7)]
    for i in range(7):
        for j in range(i + 1, 7):
            basis_cross = tuple(CROSS7_TENSOR[i][j][k] for k in range(7))
            if s.matvec(basis_cross) != vector_product(cols[i], cols[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# exact G2 elements from quaternion automorphisms


def rotation_from_quaternion(q) -> Matrix:
    """The SO(3) matrix of x -> q x q^{-1} on span(i, j, k), exact."""
    a, b, c, d = (as_fraction(t) for t in q)
    n = a * a + b * b + c * c + d * d
    if n == 0:
        raise ValueError("zero quaternion")
    rows = [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ]
    return Matrix([[x / n for x in row] for row in rows])


def extend_quaternion_automorphism(r3: Matrix) -> Matrix:
    """Extend an automorphism of the quaternions (an exact SO(3) matrix on
    span(i,j,k)) to the octonions via a + b*l -> alpha(a) + alpha(b)*l.

    The result acts on the imaginary basis (i, j, k, l, il, jl, kl) as
    diag(R, 1, R) and lies in G2.
    """
    if (r3.rows, r3.cols) != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    zero = Fraction(0)
    out = [[zero] * 7 for _ in range(7)]
    for i in range(3):
        for j in range(3):
            out[i][j] = r3[i, j]
            out[4 + i][4 + j] = r3[i, j]
    out[3][3] = Fraction(1)
    return Matrix(out)


# ---------------------------------------------------------------------------
# Frobenius decomposition of a quadratic presentation


def frobenius_split(alg):
    """Split a quadratic unital presentation as (unity line) + (hyperplane V).

    Returns (rho, v_basis): the linear form rho (coefficients on the
    presentation basis, rho(1) = 1) and a basis of V = ker(rho), the purely
    imaginary hyperplane {v not in R1 | v^2 in R1} + {0}.

    rho is read off basis squares: if b is independent of the unity then
    b^2 = c*1 + 2 rho(b) b, so rho(b) is half the b-coefficient.  The split
    is then certified symbolically: with x = sum X_i e_i over polynomial
    coordinates, x^2 - 2 rho(x) x must be a polynomial multiple of the unity.
    That identity holds iff the presentation is quadratic, so failure raises
    NotQuadratic.
    """
    dim = alg.dim
    unity = vector(alg.unity)
    _require_unity(alg, unity)

    rho = []
    for i in range(dim):
        b = tuple(Fraction(int(i == j)) for j in range(dim))
        coeff = _unity_multiple(b, unity)
        if coeff is not None:
            rho.append(coeff)
            continue
        square = alg.mul(b, b)
        sol = Matrix.from_columns([unity, b]).solve_right(square)
        if sol is None:
            raise NotQuadratic(f"basis element {i}: 1, x, x^2 independent")
        rho.append(sol[1] / 2)
    rho = tuple(rho)
    if dot(rho, unity) != 1:
        raise NotQuadratic("inconsistent unity coefficient in the split")

    # symbolic certificate: x^2 - 2 rho(x) x lies on the unity line
    terms = [dict() for _ in range(dim)]
    for i in range(dim):
        ei = tuple(Fraction(int(i == t)) for t in range(dim))
        for j in range(dim):
            ej = tuple(Fraction(int(j == t)) for t in range(dim))
            prod = alg.mul(ei, ej)
            exps = tuple(
                (2 if t == i else 0) if i == j else (1 if t in (i, j) else 0)
                for t in range(dim)
            )
            for k, c in enumerate(prod):
                if c:
                    terms[k][exps] = terms[k].get(exps, Fraction(0)) + c
    squares = [HomogeneousPoly(dim, 2, t) for t in terms]
    rho_poly = HomogeneousPoly(dim, 1, {
        tuple(1 if t == i else 0 for t in range(dim)): r
        for i, r in enumerate(rho) if r != 0
    })
    pivot = next(i for i, u in enumerate(unity) if u != 0)
    xs = [HomogeneousPoly.variable(dim, i) for i in range(dim)]
    deviation = [squares[k] - (2 * rho_poly) * xs[k] for k in range(dim)]
    gamma = deviation[pivot].scale(1 / unity[pivot])
    for k in range(dim):
        if deviation[k] != gamma.scale(unity[k]):
            raise NotQuadratic("x^2 - 2 rho(x) x leaves the unity line")

    v_basis = []
    stack = []
    for i in range(dim):
        ei = tuple(Fraction(int(i == t)) for t in range(dim))
        v = tuple(e - rho[i] * u for e, u in zip(ei, unity))
        if all(x == 0 for x in v):
            continue
        if stack and Matrix(stack + [list(v)]).rank() == len(stack):
            continue
        stack.append(list(v))
        v_basis.append(v)
    if len(v_basis) != dim - 1:
        raise NotQuadratic("purely imaginary part is not a hyperplane")
    for v in v_basis:
        if _unity_multiple(alg.mul(v, v), unity) is None:
            raise NotQuadratic("basis vector of V has v^2 outside R1")
    return rho, tuple(v_basis)


def _require_unity(alg, unity):
    dim = alg.dim
    for i in range(dim):
        ei = tuple(Fraction(int(i == t)) for t in range(dim))
        if alg.mul(unity, ei) != ei or alg.mul(ei, unity) != ei:
            raise NotUnital(f"distinguished element fails on basis index {i}")


def _unity_multiple(x, unity):
    """The scalar c with x = c*unity, or None if x is off the unity line."""
    pivot = next(i for i, u in enumerate(unity) if u != 0)
    c = x[pivot] / unity[pivot]
    if tuple(c * u for u in unity) == tuple(x):
        return c
    return None


def frobenius_form(alg, rho):
    """Gram matrix of <x,y> = 2 rho(x) rho(y) - rho(xy + yx)/2 on the
    presentation basis."""
    dim = alg.dim
    gram = []
    for i in range(dim):
        ei = tuple(Fraction(int(i == t)) for t in range(dim))
        row = []
        for j in range(dim):
            ej = tuple(Fraction(int(j == t)) for t in range(dim))
            sym = tuple(a + b for a, b in zip(alg.mul(ei, ej), alg.mul(ej, ei)))
            row.append(2 * rho[i] * rho[j] - dot(rho, sym) / 2)
        gram.append(row)
    return Matrix(gram)
