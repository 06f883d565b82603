"""Audits of the generic-position hypotheses on a surface pair.

Every check here certifies (or refutes, or honestly declines to decide) a
finite transversality/simplicity condition on the six plane curves R, R_x,
R_y, S, S_x, S_y: pairwise transversal intersections with the full product
count of simple affine points, no triple points, smoothness, and the
dispositions along the line y = 0 and the line at infinity.

The certificates are resultant-based.  A pair check passes when the
eliminating resultant of a sheared copy of the pair has exact degree
deg(p)*deg(q) and is squarefree; shears x -> x + s*y with seeded rational s
(numerator and denominator bounded by 97) separate accidental coincidences
of x-coordinates.  Failures are declared only on an algebraic witness; a
degeneracy that survives every attempted shear without a verified witness
is reported as inconclusive, never silently passed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .jetbuilder import XY, SurfacePair
from .polyring import (
    ExactPoly,
    gcd_univariate,
    poly_diff,
    poly_substitute,
    rational_roots,
    resultant,
    squarefree_univariate,
)

DEFAULT_SEED = 127
MAX_SHEAR_ATTEMPTS = 8

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


def shear(p: ExactPoly, s: Fraction | int) -> ExactPoly:
    """The coordinate change x -> x + s*y; total degree is preserved."""
    s = Fraction(s)
    x_image = ExactPoly(XY, {(1, 0): Fraction(1), (0, 1): s})
    return poly_substitute(p, {"x": x_image})


def _shear_values(seed: int) -> list[Fraction]:
    """The identity shear followed by seeded random rationals (|num|, den <= 97)."""
    rng = random.Random(seed)
    values = [Fraction(0)]
    while len(values) < MAX_SHEAR_ATTEMPTS:
        s = Fraction(rng.randint(1, 97) * rng.choice((1, -1)), rng.randint(1, 97))
        if s not in values:
            values.append(s)
    return values


def _top_y_coefficient(p: ExactPoly) -> Fraction:
    """Coefficient of the pure power y^deg(p); nonzero iff the shear is valid."""
    n = p.total_degree()
    return p.coefficient((0, n))


@dataclass(frozen=True)
class CheckResult:
    """One named sub-check of an audit, with a witness for non-passes."""

    name: str
    verdict: str
    witness: str | None = None
    shear_used: str | None = None
    shear_seed: int | None = None

    def to_json_dict(self) -> dict:
        return {"name": self.name, "verdict": self.verdict,
                "witness": self.witness, "shear": self.shear_used,
                "shear_seed": self.shear_seed}


@dataclass(frozen=True)
class IntersectionReport:
    """Outcome of a pairwise transversality check.

    passed requires the eliminating resultant to realise the full degree
    product (all intersection points affine), to be squarefree (all points
    simple with separated x-coordinates), under a shear with nondegenerate
    leading forms.
    """

    degree_product: int
    resultant_degree: int   # -1 encodes an identically-zero resultant
    squarefree: bool
    all_affine: bool
    shear_used: Fraction | None
    verdict: str
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return (self.resultant_degree == self.degree_product
                and self.squarefree and self.all_affine)


def pair_transversality_check(p: ExactPoly, q: ExactPoly,
                              seed: int = DEFAULT_SEED) -> IntersectionReport:
    """Certify that p = 0 and q = 0 meet in exactly deg(p)*deg(q) simple affine points."""
    for poly, label in ((p, "p"), (q, "q")):
        if poly.is_zero() or poly.is_constant():
            raise ValueError(f"{label} must be a non-constant polynomial")
    dp, dq = p.total_degree(), q.total_degree()
    product = dp * dq
    valid_attempts = 0
    last_witness = None
    last_shear = None
    for s in _shear_values(seed):
        ps, qs = shear(p, s), shear(q, s)
        if _top_y_coefficient(ps) == 0 or _top_y_coefficient(qs) == 0:
            continue
        valid_attempts += 1
        res = resultant(ps, qs, "y")
        if res.is_zero():
            return IntersectionReport(
                degree_product=product, resultant_degree=-1, squarefree=False,
                all_affine=False, shear_used=s, verdict=FAIL,
                witness="resultant identically zero (common factor)")
        rdeg = res.total_degree()
        if rdeg < product:
            # degree deficiency = intersection at the line at infinity;
            # invariant under shears with nondegenerate leading forms.
            return IntersectionReport(
                degree_product=product, resultant_degree=rdeg, squarefree=False,
                all_affine=False, shear_used=s, verdict=FAIL,
                witness=f"resultant degree {rdeg} < {product} (points at infinity)")
        if squarefree_univariate(res):
            return IntersectionReport(
                degree_product=product, resultant_degree=rdeg, squarefree=True,
                all_affine=True, shear_used=s, verdict=PASS)
        last_witness = str(gcd_univariate(res, poly_diff(res, "x")))
        last_shear = s
    if valid_attempts:
        # non-squarefree under every shear with good leading forms: a genuine
        # tangency or multiple point.
        return IntersectionReport(
            degree_product=product, resultant_degree=product, squarefree=False,
            all_affine=True, shear_used=last_shear, verdict=FAIL,
            witness=f"repeated resultant factor {last_witness} under all shears")
    return IntersectionReport(
        degree_product=product, resultant_degree=product, squarefree=False,
        all_affine=True, shear_used=last_shear, verdict=INCONCLUSIVE,
        witness="degenerate leading forms under all shears")


# -- smoothness --------------------------------------------------------------

def _homogeneous_part(p: ExactPoly, degree: int) -> ExactPoly:
    return ExactPoly(XY, {e: c for e, c in p.terms.items() if sum(e) == degree})


def _dehomogenize(form: ExactPoly) -> ExactPoly:
    """Binary form F(x, y) -> F(x, 1), a univariate polynomial in x."""
    return poly_substitute(form, {"y": ExactPoly.const(XY, 1)})


def _binary_squarefree(form: ExactPoly, degree: int) -> bool:
    """Squarefreeness of a nonzero binary form of the stated degree."""
    f1 = _dehomogenize(form)
    infinity_mult = degree - (f1.total_degree() if not f1.is_zero() else -1)
    if f1.is_zero():
        # form is a pure power of y
        return degree <= 1
    return squarefree_univariate(f1) and infinity_mult <= 1


def _binary_forms_common_root(forms: list[ExactPoly]) -> bool:
    """True iff the nonzero binary forms share a projective root."""
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return True
    # the direction [1:0] (y = 0): every form must kill its pure x power
    if all(f.coefficient((f.total_degree(), 0)) == 0 for f in nonzero):
        return True
    # a nonzero binary form has a nonzero dehomogenization, so the gcd below
    # is a plain univariate computation
    dehoms = [_dehomogenize(f) for f in nonzero]
    g = dehoms[0]
    for f in dehoms[1:]:
        g = gcd_univariate(g, f)
    return not g.is_constant()


def _smooth_at_infinity(p: ExactPoly) -> tuple[str, str | None]:
    """Decide smoothness of the projective closure along the line at infinity."""
    n = p.total_degree()
    top = _homogeneous_part(p, n)
    if _binary_squarefree(top, n):
        return PASS, None
    # repeated directions are the common roots of the two partials of the
    # leading form; the point is singular iff the next homogeneous part
    # also vanishes there.
    forms = [poly_diff(top, "x"), poly_diff(top, "y"), _homogeneous_part(p, n - 1)]
    if _binary_forms_common_root(forms):
        return FAIL, f"singular direction at infinity of {top}"
    return PASS, None


def _univariate_in_y_gcd(polys: list[ExactPoly]) -> ExactPoly:
    nonzero = [p for p in polys if not p.is_zero()]
    g = nonzero[0]
    for p in nonzero[1:]:
        g = gcd_univariate(g, p)
    return g


def _verify_affine_point_candidates(g: ExactPoly,
                                    system: list[ExactPoly]) -> tuple[bool, str | None, bool]:
    """Check rational roots of g for genuine common solutions of the system.

    Returns (found, witness, roots_complete); system entries are bivariate,
    specialised at each candidate x-value.
    """
    roots, complete = rational_roots(g)
    for x0 in roots:
        x0_poly = ExactPoly.const(XY, x0)
        specialised = [poly_substitute(p, {"x": x0_poly, "y": ExactPoly.variable(XY, "y")})
                       for p in system]
        if all(p.is_zero() for p in specialised):
            return True, f"x = {x0} (entire fibre)", complete
        common = _univariate_in_y_gcd(specialised)
        if not common.is_constant():
            return True, f"common point over x = {x0}", complete
    return False, None, complete


def _curve_smooth_verdict(p: ExactPoly, seed: int = DEFAULT_SEED) -> tuple[str, str | None]:
    if p.is_zero() or p.is_constant():
        raise ValueError("smoothness check requires a non-constant polynomial")
    infinity_verdict, infinity_witness = _smooth_at_infinity(p)
    if infinity_verdict == FAIL:
        return FAIL, infinity_witness

    last_witness = None
    for s in _shear_values(seed):
        ps = shear(p, s)
        if _top_y_coefficient(ps) == 0:
            continue
        px = poly_diff(ps, "x")
        py = poly_diff(ps, "y")
        if px.is_zero():
            # no x-dependence: singular iff the univariate profile has a
            # multiple root
            if squarefree_univariate(ps):
                return PASS, None
            return FAIL, f"multiple root of {ps}"
        u = resultant(ps, py, "y")
        if u.is_zero():
            return FAIL, "repeated factor (resultant with y-derivative vanishes)"
        v = resultant(ps, px, "y")
        g = u if v.is_zero() else gcd_univariate(u, v)
        if g.is_constant():
            return PASS, None
        found, witness, _complete = _verify_affine_point_candidates(g, [ps, px, py])
        if found:
            return FAIL, f"singular point: {witness}"
        last_witness = str(g)
    return INCONCLUSIVE, f"unseparated singular-point candidates {last_witness}"


def curve_smooth_check(p: ExactPoly, seed: int = DEFAULT_SEED) -> bool:
    """True iff the plane curve p = 0 is certified smooth, affinely and at infinity."""
    return _curve_smooth_verdict(p, seed)[0] == PASS


# -- triple points ------------------------------------------------------------

class _AuditCache:
    """Per-audit memo of sheared curves and pairwise resultants.

    The twenty triple checks of an audit reuse the same shear sequence, so
    the handful of distinct (pair, shear) resultants is computed once.
    Keys use object identity: within one audit the six curve polynomials
    are fixed objects.
    """

    def __init__(self):
        self._sheared: dict[tuple[int, Fraction], ExactPoly] = {}
        self._resultants: dict[tuple[int, int, Fraction], ExactPoly] = {}

    def sheared(self, p: ExactPoly, s: Fraction) -> ExactPoly:
        key = (id(p), s)
        if key not in self._sheared:
            self._sheared[key] = shear(p, s)
        return self._sheared[key]

    def pair_resultant(self, p: ExactPoly, q: ExactPoly, s: Fraction) -> ExactPoly:
        key = (id(p), id(q), s)
        if key not in self._resultants:
            self._resultants[key] = resultant(self.sheared(p, s), self.sheared(q, s), "y")
        return self._resultants[key]


def _no_triple_verdict(p: ExactPoly, q: ExactPoly, r: ExactPoly,
                       seed: int = DEFAULT_SEED,
                       cache: _AuditCache | None = None) -> tuple[str, str | None]:
    for poly, label in ((p, "p"), (q, "q"), (r, "r")):
        if poly.is_zero() or poly.is_constant():
            raise ValueError(f"{label} must be a non-constant polynomial")
    cache = cache or _AuditCache()
    last_witness = None
    for s in _shear_values(seed):
        sheared = [cache.sheared(f, s) for f in (p, q, r)]
        if any(_top_y_coefficient(f) == 0 for f in sheared):
            continue
        res_pq = cache.pair_resultant(p, q, s)
        res_pr = cache.pair_resultant(p, r, s)
        if res_pq.is_zero() or res_pr.is_zero():
            return FAIL, "two of the three curves share a component"
        g = gcd_univariate(res_pq, res_pr)
        if g.is_constant():
            return PASS, None
        found, witness, _complete = _verify_affine_point_candidates(g, sheared)
        if found:
            return FAIL, f"triple point: {witness}"
        last_witness = str(g)
    return INCONCLUSIVE, f"unseparated triple-point candidates {last_witness}"


def no_triple_check(p: ExactPoly, q: ExactPoly, r: ExactPoly,
                    seed: int = DEFAULT_SEED) -> bool:
    """True iff the three curves are certified to have empty common intersection."""
    return _no_triple_verdict(p, q, r, seed)[0] == PASS


# -- line and infinity dispositions -------------------------------------------

def _on_axis(p: ExactPoly) -> ExactPoly:
    """Restriction p(x, 0), univariate in x."""
    return poly_substitute(p, {"y": ExactPoly.zero(XY), "x": ExactPoly.variable(XY, "x")})


def _line_y0_verdict(surf: SurfacePair) -> tuple[str, str | None]:
    partials = dict(zip(("Rx", "Ry", "Sx", "Sy"), surf.partials()))
    for poly, degree, label in ((surf.r, surf.d, "R"), (surf.s, surf.e, "S")):
        restricted = _on_axis(poly)
        if restricted.total_degree() != degree:
            return FAIL, f"{label}(x,0) drops degree"
        if not squarefree_univariate(restricted):
            return FAIL, f"{label}(x,0) has a multiple root"
        for name, partial in partials.items():
            g = gcd_univariate(restricted, _on_axis(partial))
            if not g.is_constant():
                return FAIL, f"{name} vanishes on a root of {label}(x,0): gcd {g}"
    return PASS, None


def line_y0_disposition_check(surf: SurfacePair) -> bool:
    """True iff y = 0 meets both curves simply, away from all partial-derivative zeros."""
    return _line_y0_verdict(surf)[0] == PASS


def _axis_ox_verdict(surf: SurfacePair) -> tuple[str, str | None]:
    g = gcd_univariate(_on_axis(surf.r), _on_axis(surf.s))
    if g.is_constant():
        return PASS, None
    return FAIL, f"common curve point on the axis: gcd {g}"


def axis_ox_disposition_check(surf: SurfacePair) -> bool:
    """True iff no intersection point of R = 0 and S = 0 lies on the axis y = 0."""
    return _axis_ox_verdict(surf)[0] == PASS


def _infinity_verdict(surf: SurfacePair) -> tuple[str, str | None]:
    top_r = _homogeneous_part(surf.r, surf.d)
    top_s = _homogeneous_part(surf.s, surf.e)
    for form, degree, label in ((top_r, surf.d, "R"), (top_s, surf.e, "S")):
        if form.coefficient((degree, 0)) == 0 or form.coefficient((0, degree)) == 0:
            return FAIL, f"leading form of {label} vanishes at an axis direction"
        if not _binary_squarefree(form, degree):
            return FAIL, f"leading form of {label} not squarefree: {form}"
    if _binary_forms_common_root([top_r, top_s]):
        return FAIL, "leading forms share a projective root (intersection at infinity)"
    return PASS, None


def infinity_disposition_check(surf: SurfacePair) -> bool:
    """True iff all R-S intersections are affine and both curves meet infinity simply."""
    return _infinity_verdict(surf)[0] == PASS


# -- the full audit -----------------------------------------------------------

SIX_CURVE_NAMES = ("R", "Rx", "Ry", "S", "Sx", "Sy")


def _six_curves(surf: SurfacePair) -> dict[str, ExactPoly]:
    rx, ry, sx, sy = surf.partials()
    return {"R": surf.r, "Rx": rx, "Ry": ry, "S": surf.s, "Sx": sx, "Sy": sy}


@dataclass(frozen=True)
class GenericityReport:
    """Aggregated audit: mandatory checks gate the pipeline, optional ones inform."""

    seed: int
    checks: tuple[CheckResult, ...]
    optional_checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.verdict == PASS for c in self.checks)

    @property
    def verdict(self) -> str:
        if any(c.verdict == FAIL for c in self.checks):
            return FAIL
        if any(c.verdict == INCONCLUSIVE for c in self.checks):
            return INCONCLUSIVE
        return PASS

    def failing(self) -> list[CheckResult]:
        return [c for c in self.checks if c.verdict != PASS]

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "verdict": self.verdict,
            "passed": self.passed,
            "checks": [c.to_json_dict() for c in self.checks],
            "optional_checks": [c.to_json_dict() for c in self.optional_checks],
        }


def full_genericity_audit(surf: SurfacePair, seed: int = DEFAULT_SEED) -> GenericityReport:
    """Run every generic-position check on the surface pair.

    Mandatory: smoothness of both curves, the 15 pairwise transversality
    checks among the six curves, the 20 triple-emptiness checks, and the
    three special-line dispositions.  Optional (reported, not gating):
    transversality of each of the six curves with the line at infinity.
    """
    curves = _six_curves(surf)
    checks: list[CheckResult] = []

    for label, poly in (("R", surf.r), ("S", surf.s)):
        verdict, witness = _curve_smooth_verdict(poly, seed)
        checks.append(CheckResult(f"smooth_{label}", verdict, witness, shear_seed=seed))

    names = list(SIX_CURVE_NAMES)
    for idx_a in range(len(names)):
        for idx_b in range(idx_a + 1, len(names)):
            a, b = names[idx_a], names[idx_b]
            pa, pb = curves[a], curves[b]
            name = f"pair_{a}_{b}"
            pair_seed = seed + idx_a * 16 + idx_b
            if pa.is_constant() or pb.is_constant():
                checks.append(CheckResult(name, INCONCLUSIVE, "constant curve"))
                continue
            report = pair_transversality_check(pa, pb, seed=pair_seed)
            checks.append(CheckResult(
                name, report.verdict, report.witness,
                shear_used=None if report.shear_used is None else str(report.shear_used),
                shear_seed=pair_seed))

    triple_cache = _AuditCache()
    for idx_a in range(len(names)):
        for idx_b in range(idx_a + 1, len(names)):
            for idx_c in range(idx_b + 1, len(names)):
                a, b, c = names[idx_a], names[idx_b], names[idx_c]
                name = f"triple_{a}_{b}_{c}"
                polys = (curves[a], curves[b], curves[c])
                if any(p.is_constant() for p in polys):
                    checks.append(CheckResult(name, INCONCLUSIVE, "constant curve"))
                    continue
                verdict, witness = _no_triple_verdict(*polys, seed=seed + 997,
                                                      cache=triple_cache)
                checks.append(CheckResult(name, verdict, witness, shear_seed=seed + 997))

    verdict, witness = _line_y0_verdict(surf)
    checks.append(CheckResult("line_y0_disposition", verdict, witness))
    verdict, witness = _axis_ox_verdict(surf)
    checks.append(CheckResult("axis_ox_disposition", verdict, witness))
    verdict, witness = _infinity_verdict(surf)
    checks.append(CheckResult("infinity_disposition", verdict, witness))

    optional: list[CheckResult] = []
    for label, poly in curves.items():
        degree = poly.total_degree()
        if not isinstance(degree, int) or degree < 1:
            optional.append(CheckResult(f"infinity_transversal_{label}",
                                        INCONCLUSIVE, "constant curve"))
            continue
        top = _homogeneous_part(poly, degree)
        if _binary_squarefree(top, degree):
            optional.append(CheckResult(f"infinity_transversal_{label}", PASS, None))
        else:
            optional.append(CheckResult(f"infinity_transversal_{label}", FAIL, str(top)))

    return GenericityReport(seed=seed, checks=tuple(checks),
                            optional_checks=tuple(optional))
