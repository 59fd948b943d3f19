"""Cusp singularities: monodromy, the lattice fan, duality, recovery.

A cusp is encoded by its cyclic sequence (b_1,...,b_k), every b_i >= 2
and not all equal to 2.  The monodromy M = M(b_1,...,b_k) has trace >= 3;
its eigendirections span an open cone whose lattice points, taken modulo
the action of M, index the components of the space of short arcs.  All
cone membership tests run in Z[sqrt(D)], D = trace^2 - 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .hjcf import Mat2, mono_product
from .quadratic import quadint_sign

Vec = tuple[int, int]


class CuspError(ValueError):
    """Invalid cusp sequence or vector outside the expected cone."""


@dataclass(frozen=True, slots=True)
class CuspSequence:
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(self.b))
        if not self.b:
            raise CuspError("empty cusp sequence")
        if any(x < 2 for x in self.b):
            raise CuspError(f"all entries must be >= 2, got {self.b}")
        if all(x == 2 for x in self.b):
            raise CuspError(f"sum(b_i - 2) must be positive, got {self.b}")

    @property
    def k(self) -> int:
        return len(self.b)

    def term(self, i: int) -> int:
        """b_i with a 1-based index read cyclically."""
        return self.b[(i - 1) % self.k]

    def rotated(self, shift: int) -> "CuspSequence":
        s = shift % self.k
        return CuspSequence(self.b[s:] + self.b[:s])

    def canonical(self) -> "CuspSequence":
        return CuspSequence(min(self.b[i:] + self.b[:i] for i in range(self.k)))

    def is_rotation_of(self, other: "CuspSequence") -> bool:
        return self.canonical().b == other.canonical().b


def monodromy(c: CuspSequence) -> Mat2:
    m = mono_product(c.b)
    if m.trace() < 3:
        raise CuspError(f"monodromy trace {m.trace()} < 3 for {c.b}")
    return m


def v_sequence(c: CuspSequence, lo: int, hi: int) -> list[Vec]:
    """Vectors v_lo..v_hi; v_0=(0,1), v_1=(1,0), v_{i+1}=b_i v_i - v_{i-1}."""
    if lo > hi:
        raise CuspError(f"need lo <= hi, got {lo} > {hi}")
    fwd: dict[int, Vec] = {0: (0, 1), 1: (1, 0)}
    i = 1
    while i < hi:
        b = c.term(i)
        v, u = fwd[i], fwd[i - 1]
        fwd[i + 1] = (b * v[0] - u[0], b * v[1] - u[1])
        i += 1
    i = 0
    while i > lo:
        # v_{i-1} = b_i * v_i - v_{i+1}
        b = c.term(i)
        v, w = fwd[i], fwd[i + 1]
        fwd[i - 1] = (b * v[0] - w[0], b * v[1] - w[1])
        i -= 1
    return [fwd[j] for j in range(lo, hi + 1)]


# -- the four cones -----------------------------------------------------


class Cone(Enum):
    CONE = "cone"                    # R_{>0} <V1, V2>: this cusp
    CONE_MINUS = "cone_minus"        # its negative: reversed boundary orientation
    DUAL_CONE = "dual_cone"          # complementary cone: the dual cusp
    DUAL_CONE_MINUS = "dual_cone_minus"


@dataclass(frozen=True, slots=True)
class ConePosition:
    cone: Cone
    witness: Vec
    # For vectors inside CONE only:
    ray_index: int | None = None     # i mod k when on a ray
    sector_index: int | None = None  # i mod k when strictly inside [v_i, v_{i+1})
    coeffs: tuple[int, ...] = ()
    index_abs: int | None = None     # the absolute fan index i

    def is_ray(self) -> bool:
        return self.ray_index is not None


def _det2(u: Vec, w: Vec) -> int:
    return u[0] * w[1] - u[1] * w[0]


def _eigen_sign_pair(m: Mat2, w: Vec) -> tuple[int, int]:
    """Signs of cross(V1, w) and cross(V2_paper, w) in Z[sqrt(D)].

    V1 = (2q, (s-p) + sqrt(D)) spans the attracting eigendirection and
    V2_paper = (-2q, (p-s) + sqrt(D)) the repelling one, oriented so that
    the open cone between them contains (0, 1) for monodromy matrices.
    """
    d = m.trace() ** 2 - 4
    s1 = quadint_sign(2 * m.q * w[1] - (m.s - m.p) * w[0], -w[0], d)
    s2 = quadint_sign(-2 * m.q * w[1] - (m.p - m.s) * w[0], -w[0], d)
    return s1, s2


def four_cone(m: Mat2, w: Vec) -> Cone:
    """Which of the four eigen-cones of m contains w (m: det 1, trace >= 3).

    Eigenrays carry no lattice points, so the answer is always one of the
    four open cones.
    """
    if m.q == 0:
        raise CuspError("degenerate matrix: q = 0 cannot have trace >= 3 in SL(2,Z)")
    chi = 1 if m.q > 0 else -1
    s1, s2 = _eigen_sign_pair(m, w)
    if (s1, s2) == (chi, -chi):
        return Cone.CONE
    if (s1, s2) == (-chi, chi):
        return Cone.CONE_MINUS
    if (s1, s2) == (chi, chi):
        return Cone.DUAL_CONE
    return Cone.DUAL_CONE_MINUS


def cone_position(w: Vec, c: CuspSequence) -> ConePosition:
    """Exact classification of a nonzero lattice vector.

    Inside the principal cone the position is located in the fan: either
    on the ray through some v_i (with multiplicity m) or strictly between
    v_i and v_{i+1} (with positive sector coordinates).
    """
    if w == (0, 0):
        raise CuspError("zero vector has no cone position")
    m = monodromy(c)
    cone = four_cone(m, w)
    if cone is not Cone.CONE:
        return ConePosition(cone, w)
    # Walk the fan to locate w between consecutive rays.
    i = 0
    vi: Vec = (0, 1)
    vi1: Vec = (1, 0)
    max_steps = 16 * c.k * (8 + max(abs(w[0]), abs(w[1])).bit_length())
    for _ in range(max_steps):
        a = _det2(vi1, w)   # coefficient on v_i
        b = _det2(w, vi)    # coefficient on v_{i+1}
        if b < 0:
            # step left: v_{i-1} = b_i v_i - v_{i+1}
            bterm = c.term(i)
            vi, vi1 = (bterm * vi[0] - vi1[0], bterm * vi[1] - vi1[1]), vi
            i -= 1
        elif a <= 0:
            # step right: v_{i+2} = b_{i+1} v_{i+1} - v_i
            bterm = c.term(i + 1)
            vi, vi1 = vi1, (bterm * vi1[0] - vi[0], bterm * vi1[1] - vi[1])
            i += 1
        elif b == 0:
            return ConePosition(Cone.CONE, w, ray_index=i % c.k, coeffs=(a,), index_abs=i)
        else:
            return ConePosition(
                Cone.CONE, w, sector_index=i % c.k, coeffs=(a, b), index_abs=i
            )
    raise RuntimeError(f"fan walk failed to locate {w}")  # pragma: no cover


def reduce_mod_monodromy(w: Vec, c: CuspSequence) -> tuple[Vec, int]:
    """Unique M^l * w inside the fundamental sectors [v_0, v_k), with l."""
    pos = cone_position(w, c)
    if pos.cone is not Cone.CONE:
        raise CuspError(f"{w} lies in {pos.cone.value}, not in the principal cone")
    ell = -(pos.index_abs // c.k)
    rep = (monodromy(c) ** ell).apply(w)
    return rep, ell


# -- component enumeration ----------------------------------------------


@dataclass(frozen=True, slots=True)
class CuspComponent:
    """One component of the short-arc space of a cusp.

    Ray components carry (index i, multiplicity m) and live on the curve
    indexed by i; sector components carry (index i, m_i, m_{i+1}) and sit
    at the node between consecutive curves.  ``vector`` is the winding
    class in the canonical pi_1(T) = Z^2 basis.
    """

    kind: str  # "ray" | "sector"
    index: int
    multiplicities: tuple[int, ...]
    vector: Vec


def enumerate_cusp_components(c: CuspSequence, bound: int) -> list[CuspComponent]:
    """Lattice points of the half-open fundamental sectors, mass <= bound.

    Rays contribute m*v_i with 1 <= m <= bound; open sectors contribute
    m_i v_i + m_{i+1} v_{i+1} with m_i, m_{i+1} >= 1, m_i + m_{i+1} <= bound.
    """
    if bound < 1:
        raise CuspError("bound must be positive")
    vs = v_sequence(c, 0, c.k)
    out = []
    for i in range(c.k):
        vi, vi1 = vs[i], vs[i + 1]
        for m in range(1, bound + 1):
            out.append(CuspComponent("ray", i, (m,), (m * vi[0], m * vi[1])))
        for mi in range(1, bound):
            for mj in range(1, bound - mi + 1):
                vec = (mi * vi[0] + mj * vi1[0], mi * vi[1] + mj * vi1[1])
                out.append(CuspComponent("sector", i, (mi, mj), vec))
    out.sort(key=lambda comp: (comp.kind, comp.index, comp.multiplicities))
    return out


# -- duality --------------------------------------------------------------

T_MATRIX = Mat2(-1, -1, 1, 2)


def _construction_rotation(c: CuspSequence) -> CuspSequence:
    """Smallest rotation with last entry >= 3 (always exists)."""
    for shift in range(c.k):
        rot = c.rotated(shift)
        if rot.b[-1] >= 3:
            return rot
    raise CuspError("no entry >= 3; invalid cusp sequence")  # pragma: no cover


def _parse_blocks(b: tuple[int, ...]) -> list[tuple[int, int]]:
    """Write b as 2^{k1*-1}, k1+2, 2^{k2*-1}, k2+2, ..., returning (ki*, ki)."""
    blocks = []
    run = 0
    for x in b:
        if x == 2:
            run += 1
        else:
            blocks.append((run + 1, x - 2))
            run = 0
    assert run == 0, "sequence must end with an entry >= 3"
    return blocks


def dual_construction(c: CuspSequence) -> tuple[CuspSequence, CuspSequence]:
    """(rotated input, dual sequence) with matching cut conventions."""
    rot = _construction_rotation(c)
    dual: list[int] = []
    for k_star, k_plain in _parse_blocks(rot.b):
        dual.append(k_star + 2)
        dual.extend([2] * (k_plain - 1))
    return rot, CuspSequence(tuple(dual))


def dual_sequence(c: CuspSequence) -> CuspSequence:
    """The dual cusp's b-sequence, canonically rotated."""
    _, dual = dual_construction(c)
    return dual.canonical()


@dataclass(frozen=True, slots=True)
class DualityReport:
    sequence: tuple[int, ...]          # the rotation actually used
    dual: tuple[int, ...]              # dual in construction order
    m: Mat2
    m_star: Mat2
    t_identity_holds: bool             # M T == T M*
    traces_equal: bool

    @property
    def ok(self) -> bool:
        return self.t_identity_holds and self.traces_equal

    def is_auto_dual(self) -> bool:
        return CuspSequence(self.sequence).is_rotation_of(CuspSequence(self.dual))


def check_duality(c: CuspSequence) -> DualityReport:
    """Verify M T = T M* and trace equality for the dual pair, exactly."""
    rot, dual = dual_construction(c)
    m = monodromy(rot)
    m_star = monodromy(dual)
    return DualityReport(
        sequence=rot.b,
        dual=dual.b,
        m=m,
        m_star=m_star,
        t_identity_holds=(m * T_MATRIX) == (T_MATRIX * m_star),
        traces_equal=m.trace() == m_star.trace(),
    )


# -- recovering the sequence from a matrix --------------------------------


def _floor_quad(a: int, c: int, d: int) -> int:
    """floor((a + sqrt(d)) / c) for integer a, c != 0 and non-square d > 0."""
    r = isqrt(d)
    est = (a + r) // c if c > 0 else (a + r + 1) // c
    # Adjust: find n with n <= x < n + 1 using exact comparisons.
    def le(n: int) -> bool:  # n <= (a + sqrt(d)) / c
        lhs = n * c - a
        if c > 0:
            return quadint_sign(lhs, -1, d) <= 0  # n*c - a <= sqrt(d)
        return quadint_sign(lhs, -1, d) >= 0
    n = est
    while not le(n):
        n -= 1
    while le(n + 1):
        n += 1
    return n


def _recover_with_transition(m: Mat2) -> tuple[tuple[int, ...], Mat2]:
    """Period of the attracting fixed point plus an exact conjugator.

    Returns (b_sequence, P) with m == P * mono_product(b_sequence) * P^-1,
    verified exactly before returning.
    """
    if m.det() != 1:
        raise CuspError(f"det must be 1, got {m.det()}")
    tau = m.trace()
    if tau < 3:
        raise CuspError(f"trace must be >= 3, got {tau}")
    d = tau * tau - 4
    if m.r == 0:
        raise CuspError("r = 0 is impossible for trace >= 3 in SL(2,Z)")
    # Expand x = (s - p - sqrt(D)) / (2r) = ((p - s) + sqrt(D)) / (-2r),
    # the image of the attracting fixed point under the standard
    # orientation flip, as a minus continued fraction b - 1/(b' - ...).
    a, cden = m.p - m.s, -2 * m.r
    seen: dict[tuple[int, int], int] = {}
    emitted: list[int] = []
    states: list[tuple[int, int]] = []
    while (a, cden) not in seen:
        seen[(a, cden)] = len(emitted)
        states.append((a, cden))
        b = _floor_quad(a, cden, d) + 1  # ceil: x is irrational
        emitted.append(b)
        a2 = b * cden - a
        cden2, rem = divmod(a2 * a2 - d, cden)
        assert rem == 0
        a, cden = a2, cden2
    start = seen[(a, cden)]
    period = emitted[start:]
    assert all(b >= 2 for b in period) and not all(b == 2 for b in period)
    # Repetition count: trace of M(period^l) grows strictly with l.
    times = 1
    while True:
        cand = tuple(period * times)
        t = mono_product(cand).trace()
        if t == tau:
            break
        if t > tau:
            raise CuspError(f"no power of period {period} matches trace {tau}")
        times += 1
    # Pre-period product of N(b) = ((b,-1),(1,0)) conjugated by J = diag(1,-1)
    # transports the purely periodic fixed point to the one of m.
    w = Mat2.identity()
    for b in emitted[:start]:
        w = w * Mat2(b, -1, 1, 0)
    j = Mat2(1, 0, 0, -1)
    p_conj = j * w * j
    seq = tuple(period * times)
    if p_conj * mono_product(seq) != m * p_conj:
        raise CuspError(f"conjugator verification failed for {m}")  # pragma: no cover
    return seq, p_conj


def recover_sequence(m: Mat2) -> CuspSequence:
    """The cyclic b-sequence whose monodromy is SL(2,Z)-conjugate to m."""
    seq, _ = _recover_with_transition(m)
    return CuspSequence(seq).canonical()


def recover_with_conjugator(m: Mat2) -> tuple[CuspSequence, Mat2]:
    """Like recover_sequence but keeps the emitted rotation and the exact
    conjugator P with m = P * monodromy(seq) * P^-1."""
    seq, p = _recover_with_transition(m)
    return CuspSequence(seq), p
