"""Construction of the symmetric jet polynomial and its cotangent expansion.

The central object is

    J = sum over j+k+p+q = m of
        A[j,k,p,q](x,y) * x'^j * y'^k * Rp^p * Sp^q * R^(m-p) * S^(m-q)

with Rp = x'*R_x + y'*R_y and Sp = x'*S_x + y'*S_y, built from a pair of
plane curves R, S and a field of coefficient polynomials A of bounded
degree.  Expanding the powers of Rp and Sp and regrouping by monomials
x'^alpha y'^beta gives the coefficients

    Lambda[alpha,beta] =
        sum over j+p1+q1 = alpha, k+p2+q2 = beta of
        C(p1+p2, p1) * C(q1+q2, q1) * A[j,k,p1+p2,q1+q2]
        * R_x^p1 * R_y^p2 * S_x^q1 * S_y^q2 * R^(m-p1-p2) * S^(m-q1-q2),

polynomials in (x, y) that are linear in the A entries.  Both routes are
implemented independently and their agreement (J = sum x'^a y'^b Lambda)
is a standing self-check of the reindexation bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping

from .polyring import ExactPoly, VarSet, poly_diff, poly_parse

XY = VarSet(("x", "y"))
JET_VARS = VarSet(("x", "y", "x'", "y'"))

IndexTuple = tuple[int, int, int, int]  # (j, k, p, q) with j+k+p+q = m


def index_tuples(m: int) -> Iterator[IndexTuple]:
    """All (j,k,p,q) with j+k+p+q = m, in lexicographic order."""
    for j in range(m + 1):
        for k in range(m + 1 - j):
            for p in range(m + 1 - j - k):
                yield (j, k, p, m - j - k - p)


def monomials_upto(a: int) -> Iterator[tuple[int, int]]:
    """All (h,i) with h+i <= a, in graded-lex order."""
    for total in range(a + 1):
        for h in range(total, -1, -1):
            yield (h, total - h)


class _PowerCache:
    """Lazily grown list of powers of a fixed polynomial."""

    def __init__(self, base: ExactPoly):
        self._powers = [ExactPoly.const(base.vars, 1), base]

    def __getitem__(self, k: int) -> ExactPoly:
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self._powers[1])
        return self._powers[k]


class SurfacePair:
    """The two defining curves R, S of the surface z^d = R(x,y), t^e = S(x,y).

    Validates on construction that 1 <= deg R <= deg S and that both pure
    top-degree coefficients (of x^d, y^d in R and x^e, y^e in S) are nonzero,
    the normalisation every downstream construction relies on.
    """

    __slots__ = ("r", "s", "d", "e")

    def __init__(self, r: ExactPoly, s: ExactPoly):
        if r.vars != XY or s.vars != XY:
            raise ValueError("surface polynomials must live in the (x, y) variable set")
        d = r.total_degree()
        e = s.total_degree()
        if not isinstance(d, int) or d < 1:
            raise ValueError("R must be non-constant")
        if not isinstance(e, int) or e < 1:
            raise ValueError("S must be non-constant")
        if d > e:
            raise ValueError(f"degrees must satisfy deg R <= deg S, got {d} > {e}")
        for poly, deg, label in ((r, d, "R"), (s, e, "S")):
            if poly.coefficient((deg, 0)) == 0:
                raise ValueError(f"{label} must carry a nonzero x^{deg} term")
            if poly.coefficient((0, deg)) == 0:
                raise ValueError(f"{label} must carry a nonzero y^{deg} term")
        self.r = r
        self.s = s
        self.d = d
        self.e = e

    @classmethod
    def parse(cls, r_text: str, s_text: str) -> "SurfacePair":
        return cls(poly_parse(r_text, XY), poly_parse(s_text, XY))

    def partials(self) -> tuple[ExactPoly, ExactPoly, ExactPoly, ExactPoly]:
        """(R_x, R_y, S_x, S_y)."""
        return (poly_diff(self.r, "x"), poly_diff(self.r, "y"),
                poly_diff(self.s, "x"), poly_diff(self.s, "y"))

    def __repr__(self) -> str:
        return f"SurfacePair(d={self.d}, e={self.e}, R={self.r}, S={self.s})"


@dataclass(frozen=True)
class JetSpec:
    """Order parameters: symmetric degree m, divisibility order c, A-degree cap a.

    c = 0 is the degenerate no-constraint case used by tests.  The boxed
    infinity condition a <= c - 4m is recorded, not enforced; operations
    that need it check holomorphic_at_infinity themselves.
    """

    m: int
    c: int
    a: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("jet order m must be >= 1")
        if self.c < 0:
            raise ValueError("divisibility order c must be >= 0")
        if self.a < 0:
            raise ValueError("degree cap a must be >= 0")

    @property
    def infinity_margin(self) -> int:
        return self.c - self.a - 4 * self.m

    @property
    def holomorphic_at_infinity(self) -> bool:
        return self.infinity_margin >= 0

    def injectivity_cap_ok(self, d: int) -> bool:
        return self.a <= d - 2


class CoefficientField:
    """The association (j,k,p,q) -> A[j,k,p,q](x,y) for all j+k+p+q = m."""

    __slots__ = ("m", "entries")

    def __init__(self, m: int, entries: Mapping[IndexTuple, ExactPoly] | None = None):
        if m < 0:
            raise ValueError("m must be >= 0")
        full: dict[IndexTuple, ExactPoly] = {t: ExactPoly.zero(XY) for t in index_tuples(m)}
        if entries:
            for t, poly in entries.items():
                t = tuple(t)
                if t not in full:
                    raise ValueError(f"index tuple {t} does not sum to {m}")
                if poly.vars != XY:
                    raise ValueError("coefficient polynomials must live in (x, y)")
                full[t] = poly
        self.m = m
        self.entries = full

    def items(self) -> list[tuple[IndexTuple, ExactPoly]]:
        return sorted(self.entries.items())

    def max_degree(self):
        return max((p.total_degree() for p in self.entries.values()
                    if not p.is_zero()), default=0)

    def degree_cap_ok(self, a: int) -> bool:
        return all(p.total_degree() <= a for p in self.entries.values() if not p.is_zero())

    def __add__(self, other: "CoefficientField") -> "CoefficientField":
        if self.m != other.m:
            raise ValueError("jet order mismatch")
        return CoefficientField(self.m, {t: p + other.entries[t]
                                         for t, p in self.entries.items()})

    def scale(self, value: Fraction | int) -> "CoefficientField":
        return CoefficientField(self.m, {t: p.scale(value) for t, p in self.entries.items()})

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries.values())

    def to_json_dict(self) -> dict[str, str]:
        return {",".join(map(str, t)): str(p) for t, p in self.items()}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, str]) -> "CoefficientField":
        entries = {}
        m = None
        for key, text in data.items():
            t = tuple(int(v) for v in key.split(","))
            if len(t) != 4:
                raise ValueError(f"bad index key {key!r}")
            if m is None:
                m = sum(t)
            entries[t] = poly_parse(text, XY)
        if m is None:
            raise ValueError("empty coefficient field")
        return cls(m, entries)


@dataclass(frozen=True)
class LambdaExpansion:
    """The coefficients of x'^alpha y'^beta in J, one per alpha+beta = m."""

    m: int
    entries: dict[tuple[int, int], ExactPoly]

    def __post_init__(self):
        expected = {(alpha, self.m - alpha) for alpha in range(self.m + 1)}
        if set(self.entries) != expected:
            raise ValueError("expansion must carry exactly the pairs alpha+beta = m")

    def reconstruct(self) -> ExactPoly:
        """Reassemble sum of x'^alpha y'^beta * Lambda[alpha,beta] in the jet variables."""
        result = ExactPoly.zero(JET_VARS)
        xp = ExactPoly.variable(JET_VARS, "x'")
        yp = ExactPoly.variable(JET_VARS, "y'")
        for (alpha, beta), coeff in sorted(self.entries.items()):
            result = result + coeff.extend_to(JET_VARS) * xp ** alpha * yp ** beta
        return result

    def __add__(self, other: "LambdaExpansion") -> "LambdaExpansion":
        if self.m != other.m:
            raise ValueError("jet order mismatch")
        return LambdaExpansion(self.m, {ab: p + other.entries[ab]
                                        for ab, p in self.entries.items()})

    def scale(self, value: Fraction | int) -> "LambdaExpansion":
        return LambdaExpansion(self.m, {ab: p.scale(value) for ab, p in self.entries.items()})


class JetContext:
    """Cached per-surface data shared by repeated jet constructions."""

    def __init__(self, surf: SurfacePair):
        self.surf = surf
        rx, ry, sx, sy = surf.partials()
        self.rx, self.ry, self.sx, self.sy = rx, ry, sx, sy
        # powers in the base plane (x, y)
        self.pow_r = _PowerCache(surf.r)
        self.pow_s = _PowerCache(surf.s)
        self.pow_rx = _PowerCache(rx)
        self.pow_ry = _PowerCache(ry)
        self.pow_sx = _PowerCache(sx)
        self.pow_sy = _PowerCache(sy)
        # lifted to the jet variables (x, y, x', y')
        xp = ExactPoly.variable(JET_VARS, "x'")
        yp = ExactPoly.variable(JET_VARS, "y'")
        self.xp_pow = _PowerCache(xp)
        self.yp_pow = _PowerCache(yp)
        r_lift = surf.r.extend_to(JET_VARS)
        s_lift = surf.s.extend_to(JET_VARS)
        r_prime = xp * rx.extend_to(JET_VARS) + yp * ry.extend_to(JET_VARS)
        s_prime = xp * sx.extend_to(JET_VARS) + yp * sy.extend_to(JET_VARS)
        self.pow_r_lift = _PowerCache(r_lift)
        self.pow_s_lift = _PowerCache(s_lift)
        self.pow_r_prime = _PowerCache(r_prime)
        self.pow_s_prime = _PowerCache(s_prime)

    def jet_term_base(self, t: IndexTuple, m: int) -> ExactPoly:
        """x'^j y'^k Rp^p Sq^q R^(m-p) S^(m-q) for one index tuple, A = 1."""
        j, k, p, q = t
        return (self.xp_pow[j] * self.yp_pow[k]
                * self.pow_r_prime[p] * self.pow_s_prime[q]
                * self.pow_r_lift[m - p] * self.pow_s_lift[m - q])


def _validate(field: CoefficientField, spec: JetSpec) -> None:
    if field.m != spec.m:
        raise ValueError(f"coefficient field has m={field.m}, spec has m={spec.m}")
    if not field.degree_cap_ok(spec.a):
        raise ValueError(f"coefficient field exceeds the degree cap a={spec.a}")


def build_jet(field: CoefficientField, surf: SurfacePair, spec: JetSpec,
              ctx: JetContext | None = None) -> ExactPoly:
    """The jet polynomial J, homogeneous of degree m in (x', y')."""
    _validate(field, spec)
    ctx = ctx or JetContext(surf)
    result = ExactPoly.zero(JET_VARS)
    for t, a_poly in field.items():
        if a_poly.is_zero():
            continue
        result = result + a_poly.extend_to(JET_VARS) * ctx.jet_term_base(t, spec.m)
    return result


def expand_lambda(field: CoefficientField, surf: SurfacePair, spec: JetSpec,
                  ctx: JetContext | None = None) -> LambdaExpansion:
    """The (alpha, beta) coefficients of J, computed by direct reindexation."""
    _validate(field, spec)
    ctx = ctx or JetContext(surf)
    m = spec.m
    entries: dict[tuple[int, int], ExactPoly] = {}
    for alpha in range(m + 1):
        beta = m - alpha
        acc = ExactPoly.zero(XY)
        for j in range(alpha + 1):
            for p1 in range(alpha - j + 1):
                q1 = alpha - j - p1
                for k in range(beta + 1):
                    for p2 in range(beta - k + 1):
                        q2 = beta - k - p2
                        a_poly = field.entries[(j, k, p1 + p2, q1 + q2)]
                        if a_poly.is_zero():
                            continue
                        weight = comb(p1 + p2, p1) * comb(q1 + q2, q1)
                        term = (ctx.pow_rx[p1] * ctx.pow_ry[p2]
                                * ctx.pow_sx[q1] * ctx.pow_sy[q2]
                                * ctx.pow_r[m - p1 - p2] * ctx.pow_s[m - q1 - q2])
                        acc = acc + (a_poly * term).scale(weight)
        entries[(alpha, beta)] = acc
    return LambdaExpansion(m, entries)


def lambda_degree_check(expansion: LambdaExpansion, spec: JetSpec, surf: SurfacePair) -> bool:
    """True iff every expansion coefficient has degree <= a + d*m + e*m."""
    bound = spec.a + surf.d * spec.m + surf.e * spec.m
    return all(p.total_degree() <= bound for p in expansion.entries.values())


def unit_field(m: int, t: IndexTuple, h: int = 0, i: int = 0) -> CoefficientField:
    """Coefficient field with the single entry A[t] = x^h y^i."""
    return CoefficientField(m, {t: ExactPoly.monomial(XY, (h, i))})
