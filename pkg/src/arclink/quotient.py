"""Finite groups with exact entries: closure, conjugacy classes, McKay.

SL(2)-type subgroups are realized as unit quaternions with coordinates in
Q(sqrt(d)); arbitrary finite subgroups of GL(n) may instead be given by
exact rational matrices (cyclic groups of any order come in as
permutation matrices).  Everything is exact; no numerical tolerance
appears anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .quadratic import QuadNum, parse_quad_token

# -- elements ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Quaternion:
    """a + b*i + c*j + e*k with QuadNum coefficients."""

    a: QuadNum
    b: QuadNum
    c: QuadNum
    e: QuadNum

    @staticmethod
    def of(a, b=0, c=0, e=0, d: int = 0) -> "Quaternion":
        conv = lambda x: x if isinstance(x, QuadNum) else QuadNum.of(x, 0, d)
        return Quaternion(conv(a), conv(b), conv(c), conv(e))

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, e1 = self.a, self.b, self.c, self.e
        a2, b2, c2, e2 = o.a, o.b, o.c, o.e
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - e1 * e2,
            a1 * b2 + b1 * a2 + c1 * e2 - e1 * c2,
            a1 * c2 - b1 * e2 + c1 * a2 + e1 * b2,
            a1 * e2 + b1 * c2 - c1 * b2 + e1 * a2,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.e)

    def norm(self) -> QuadNum:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.e * self.e

    def is_unit(self) -> bool:
        n = self.norm()
        return n.b == 0 and n.a == 1

    def inverse(self) -> "Quaternion":
        if not self.is_unit():
            raise ValueError("only unit quaternions are inverted here")
        return self.conjugate()

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c}, {self.e})"


Matrix = tuple[tuple[Fraction, ...], ...]


def _mat_mul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def rational_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def _mat_identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def _is_invertible(m: Matrix) -> bool:
    a = [list(row) for row in m]
    n = len(a)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return False
        a[k], a[pivot] = a[pivot], a[k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


# -- closure and conjugacy ----------------------------------------------------


class ClosureError(ValueError):
    """Element ceiling exceeded or a generator is not invertible."""


@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple
    identity_index: int
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse_index(self, i: int) -> int:
        row = self.table[i]
        return row.index(self.identity_index)

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != self.identity_index:
            x = self.table[x][i]
            n += 1
        return n

    def is_abelian(self) -> bool:
        n = self.order
        return all(
            self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n)
        )

    def is_cyclic(self) -> bool:
        return any(self.element_order(i) == self.order for i in range(self.order))

    def involution_count(self) -> int:
        return sum(1 for i in range(self.order) if self.element_order(i) == 2)


def group_closure(generators, ceiling: int = 20000) -> FiniteGroup:
    """Breadth-first closure under multiplication plus the Cayley table."""
    if not generators:
        raise ClosureError("need at least one generator")
    first = generators[0]
    if isinstance(first, Quaternion):
        identity = Quaternion.of(1)
        for g in generators:
            if not isinstance(g, Quaternion) or not g.is_unit():
                raise ClosureError(f"generator {g} is not a unit quaternion")
    else:
        n = len(first)
        identity = _mat_identity(n)
        mul = _mat_mul
        for g in generators:
            if len(g) != n or any(len(row) != n for row in g):
                raise ClosureError("generators must share one matrix size")
            if not _is_invertible(g):
                raise ClosureError("non-invertible generator")
    mul = (lambda x, y: x * y) if isinstance(first, Quaternion) else _mat_mul
    elements = [identity]
    index = {identity: 0}
    parents: list[tuple[int, int] | None] = [None]  # (z, gen column): e = e_z * e_gcol
    frontier = [0]
    while frontier:
        nxt = []
        for xi in frontier:
            for g in generators:
                y = mul(elements[xi], g)
                if y not in index:
                    if len(elements) >= ceiling:
                        raise ClosureError(
                            f"closure exceeded {ceiling} elements; the group is likely infinite"
                        )
                    index[y] = len(elements)
                    elements.append(y)
                    parents.append((xi, index[mul(identity, g)]))
                    nxt.append(index[y])
        frontier = nxt
    # Cayley table: real products for generator columns, then associativity
    # x * (z * g) = (x * z) * g fills the rest in BFS column order.
    n = len(elements)
    table = [[0] * n for _ in range(n)]
    filled = [False] * n
    for i in range(n):
        table[i][0] = i
    filled[0] = True
    for col in range(1, n):
        z, gcol = parents[col]
        if z == 0 or not filled[z] or not filled[gcol]:
            for i in range(n):
                table[i][col] = index[mul(elements[i], elements[col])]
        else:
            for i in range(n):
                table[i][col] = table[table[i][z]][gcol]
        filled[col] = True
    return FiniteGroup(tuple(elements), 0, tuple(tuple(row) for row in table))


@dataclass(frozen=True, slots=True)
class ConjClasses:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)


def conjugacy_classes(group: FiniteGroup) -> ConjClasses:
    """Brute-force orbit partition under conjugation."""
    n = group.order
    inverses = [group.inverse_index(i) for i in range(n)]
    unseen = set(range(n))
    classes = []
    while unseen:
        x = min(unseen)
        orbit = {group.table[group.table[g][x]][inverses[g]] for g in range(n)}
        classes.append(tuple(sorted(orbit)))
        unseen -= orbit
    classes.sort(key=lambda cl: cl[0])
    return ConjClasses(tuple(classes), tuple(cl[0] for cl in classes))


# -- McKay ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class McKayReport:
    group_order: int
    class_count: int
    nontrivial_classes: int
    family: str
    expected_exceptional_curves: int
    matches: bool

    def render(self) -> str:
        verdict = "OK" if self.matches else "MISMATCH"
        return (
            f"order={self.group_order} classes={self.class_count} "
            f"mckay[{self.family}]: {self.nontrivial_classes} = "
            f"{self.expected_exceptional_curves} {verdict}"
        )


def mckay_report(group: FiniteGroup) -> McKayReport:
    """Match class counts against the A/D/E exceptional-curve catalog.

    cyclic m -> A_{m-1} (m-1 curves); binary dihedral of order 4n ->
    D_{n+2} (n+2 curves); 2T -> E6; 2O -> E7; 2I -> E8.
    """
    classes = conjugacy_classes(group)
    order, count = group.order, classes.count
    if group.is_abelian():
        if not group.is_cyclic():
            raise ValueError("abelian but not cyclic: no free SL(2) action exists")
        family, expected = f"A{order - 1}", order - 1
    else:
        if group.involution_count() != 1:
            raise ValueError("a finite SL(2) subgroup has a unique involution")
        if order == 24 and count == 7:
            family, expected = "E6", 6
        elif order == 48 and count == 8:
            family, expected = "E7", 7
        elif order == 120 and count == 9:
            family, expected = "E8", 8
        elif order % 4 == 0 and count == order // 4 + 3:
            n = order // 4
            family, expected = f"D{n + 2}", n + 2
        else:
            raise ValueError(
                f"order {order} with {count} classes is not an SL(2)-type group"
            )
    return McKayReport(
        group_order=order,
        class_count=count,
        nontrivial_classes=count - 1,
        family=family,
        expected_exceptional_curves=expected,
        matches=(count - 1 == expected),
    )


# -- standard generators --------------------------------------------------------

_HALF = Fraction(1, 2)


def _phi_half() -> QuadNum:
    """(1 + sqrt(5))/4 * 2 = golden ratio over 2."""
    return QuadNum.of(Fraction(1, 4), Fraction(1, 4), 5)


def binary_tetrahedral_generators() -> list[Quaternion]:
    i = Quaternion.of(0, 1, 0, 0)
    w = Quaternion.of(_HALF, _HALF, _HALF, _HALF)
    return [i, w]


def binary_octahedral_generators() -> list[Quaternion]:
    w = Quaternion.of(_HALF, _HALF, _HALF, _HALF, d=2)
    r = Quaternion(
        QuadNum.of(0, _HALF, 2), QuadNum.of(0, _HALF, 2), QuadNum.of(0, 0, 2), QuadNum.of(0, 0, 2)
    )
    return [w, r]


def binary_icosahedral_generators() -> list[Quaternion]:
    w = Quaternion.of(_HALF, _HALF, _HALF, _HALF, d=5)
    # (1/2)(phi + i + j/phi): a 72-degree rotation; phi = (1+sqrt5)/2.
    phi2 = _phi_half()
    inv_phi2 = QuadNum.of(Fraction(-1, 4), Fraction(1, 4), 5)  # 1/(2 phi)
    r = Quaternion(phi2, QuadNum.of(_HALF, 0, 5), inv_phi2, QuadNum.of(0, 0, 5))
    return [w, r]


def quaternion_group_generators() -> list[Quaternion]:
    return [Quaternion.of(0, 1, 0, 0), Quaternion.of(0, 0, 1, 0)]


def binary_dihedral_generators(n: int) -> list[Quaternion]:
    """Binary dihedral group of order 4n; needs cos(pi/n) quadratic."""
    if n < 2:
        raise ValueError("binary dihedral groups need n >= 2")
    j = Quaternion.of(0, 0, 1, 0)
    if n == 2:
        return [Quaternion.of(0, 0, 0, 1), j]
    if n == 3:  # cos(pi/3) = 1/2, sin = sqrt(3)/2
        x = Quaternion(
            QuadNum.of(_HALF, 0, 3), QuadNum.of(0, _HALF, 3), QuadNum.of(0, 0, 3), QuadNum.of(0, 0, 3)
        )
    elif n == 4:  # cos(pi/4) = sqrt(2)/2
        x = Quaternion(
            QuadNum.of(0, _HALF, 2), QuadNum.of(0, _HALF, 2), QuadNum.of(0, 0, 2), QuadNum.of(0, 0, 2)
        )
    elif n == 5:  # cos(pi/5) = phi/2; axis in the (i, j) plane keeps Q(sqrt5)
        x = Quaternion(_phi_half(), QuadNum.of(_HALF, 0, 5), QuadNum.of(Fraction(-1, 4), Fraction(1, 4), 5), QuadNum.of(0, 0, 5))
        j = Quaternion.of(0, 0, 0, 1, d=5)  # k is orthogonal to that axis
    elif n == 6:  # cos(pi/6) = sqrt(3)/2
        x = Quaternion(
            QuadNum.of(0, _HALF, 3), QuadNum.of(_HALF, 0, 3), QuadNum.of(0, 0, 3), QuadNum.of(0, 0, 3)
        )
    else:
        raise ValueError(f"cos(pi/{n}) is not quadratic; no Q(sqrt(d)) model here")
    return [x, j]


def cyclic_permutation_generators(m: int) -> list[Matrix]:
    """Z/m as the m-by-m cyclic shift matrix (exact rationals)."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return [_mat_identity(1)]
    rows = [[Fraction(int(j == (i + 1) % m)) for j in range(m)] for i in range(m)]
    return [rational_matrix(rows)]


def cyclic_rotation_generator() -> Quaternion:
    """An exact order-5 unit quaternion (the class of diag(zeta_5, zeta_5^-1))."""
    # ((phi-1)/2, phi/2, 1/2, 0): square of the 36-degree icosian rotation.
    return Quaternion(
        QuadNum.of(Fraction(-1, 4), Fraction(1, 4), 5),
        _phi_half(),
        QuadNum.of(_HALF, 0, 5),
        QuadNum.of(0, 0, 5),
    )


BUILTIN_GROUPS = {
    "2T": binary_tetrahedral_generators,
    "2O": binary_octahedral_generators,
    "2I": binary_icosahedral_generators,
    "Q8": quaternion_group_generators,
}


def builtin_generators(name: str):
    """Generators for '2T', '2O', '2I', 'Q8', 'cyclic:m' or 'bd:n'."""
    if name in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[name]()
    if name.startswith("cyclic:"):
        return cyclic_permutation_generators(int(name.split(":", 1)[1]))
    if name.startswith("bd:"):
        return binary_dihedral_generators(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown builtin group {name!r}")


# -- cyclic quotient component labels --------------------------------------------


class ArcCenter(Enum):
    ON_CURVE = "on_curve"
    AT_ORIGIN = "at_origin"


@dataclass(frozen=True, slots=True)
class CyclicComponentLabel:
    """One component of the cyclic-quotient pair ((x=0) in C^2)/(1/m)(q,1).

    ``label`` is the intersection number with the image curve; the model
    arc downstairs is t -> (t^{m1}, t^c).
    """

    label: Fraction
    center: ArcCenter
    m1: int
    c: int


def cyclic_quotient_components(m: int, q: int, bound: int) -> list[CyclicComponentLabel]:
    """Labels a/m for 1 <= a <= bound*m; integer labels sit on the curve."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        if q != 0:
            raise ValueError("the smooth case m = 1 takes q = 0")
    elif not (0 < q < m) or gcd(m, q) != 1:
        raise ValueError(f"need 0 < q < m coprime, got q={q}, m={m}")
    if bound < 1:
        raise ValueError("bound must be positive")
    q_inv = pow(q, -1, m) if m > 1 else 0
    out = []
    for a in range(1, bound * m + 1):
        center = ArcCenter.ON_CURVE if a % m == 0 else ArcCenter.AT_ORIGIN
        c = (a * q_inv) % m if m > 1 else 0
        out.append(CyclicComponentLabel(Fraction(a, m), center, m1=a, c=c))
    return out


# -- real A-type catalog -----------------------------------------------------------


class RealForm(Enum):
    SUM_OF_SQUARES = "sum_of_squares"  # x^2 + y^2 = z^m
    HYPERBOLIC = "hyperbolic"          # x*y = z^m


@dataclass(frozen=True, slots=True)
class RealCatalogEntry:
    form: RealForm
    exponent: int
    count: int
    status: str  # "shown" or "suggested"


def real_A_component_count(form: RealForm, m: int) -> int:
    """Connected components of the space of short real arcs, A-type forms."""
    return real_A_catalog_entry(form, m).count


def real_A_catalog_entry(form: RealForm, m: int) -> RealCatalogEntry:
    if form is RealForm.SUM_OF_SQUARES:
        if m < 1:
            raise ValueError("exponent must be positive")
        return RealCatalogEntry(form, m, 1 if m % 2 else 2, "shown")
    if m < 2:
        raise ValueError("the hyperbolic family needs m >= 2")
    return RealCatalogEntry(form, m, 4 * m - 6, "suggested")


# -- group files --------------------------------------------------------------------


def parse_group_file(text: str):
    """Generators from the group file format.

    Lines: ``d=<int>`` (field for sqrt parts), ``matrix <n>`` followed by
    n rows of n rationals, or four whitespace-separated quadratic tokens
    forming a quaternion a + b i + c j + e k.  '#' starts a comment.
    """
    d = 0
    quats: list[Quaternion] = []
    mats: list[Matrix] = []
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    pos = 0
    while pos < len(lines):
        line = lines[pos]
        if line.startswith("d="):
            d = int(line[2:])
            pos += 1
            continue
        if line.startswith("matrix"):
            n = int(line.split()[1])
            rows = []
            for r in range(1, n + 1):
                rows.append([Fraction(tok) for tok in lines[pos + r].split()])
                if len(rows[-1]) != n:
                    raise ValueError(f"matrix row {r} must have {n} entries")
            mats.append(rational_matrix(rows))
            pos += n + 1
            continue
        tokens = line.split()
        if len(tokens) != 4:
            raise ValueError(f"expected 4 quaternion coefficients, got {line!r}")
        coeffs = [parse_quad_token(t, d) for t in tokens]
        quats.append(Quaternion(*coeffs))
        pos += 1
    if quats and mats:
        raise ValueError("mix of quaternion and matrix generators is not supported")
    return quats or mats
