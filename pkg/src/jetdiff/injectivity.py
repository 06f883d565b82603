"""Desk-scale exact verification of the injectivity statements.

Three rank computations:

* the map A -> J from coefficient fields (degree cap a <= d-2) to jet
  polynomials has trivial kernel on audited-generic surfaces;

* the reduced map (A[p,q]) -> sum A[p,q] R_x^p S_x^q R^(m-p) S^(m-q) with
  deg A[p,q] <= d-1 has trivial kernel;

* the low-degree slice of the ideal generated by a transversal pair (P, Q)
  is zero: no nonzero polynomial of degree <= deg(P)-1 vanishes on all
  deg(P)*deg(Q) simple intersection points.  This is decided on a Macaulay
  matrix of all monomial multiples of P and Q up to the truncation degree
  D = deg P + deg Q - 1: the slice is zero iff the rows of degree > amax
  already realise the full rank.

All three refuse to certify on a surface whose genericity audit did not
pass, unless explicitly forced, in which case the result is marked as
carrying unverified hypotheses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .genericity import (
    DEFAULT_SEED,
    GenericityReport,
    IntersectionReport,
    full_genericity_audit,
    pair_transversality_check,
)
from .jetbuilder import (
    XY,
    CoefficientField,
    JetContext,
    SurfacePair,
    _PowerCache,
    expand_lambda,
    index_tuples,
    monomials_upto,
)
from .polyring import ExactPoly

ColumnLabel = tuple[int, int, int, int, int, int]


class GenericityGateError(RuntimeError):
    """A theorem verifier was invoked on a surface without a passing audit."""


@dataclass(frozen=True)
class LinearMapMatrix:
    """Matrix of a linear map from coefficient vectors to polynomial coefficients."""

    columns: tuple[tuple, ...]
    rows: tuple[tuple, ...]           # monomial exponent tuples of the codomain
    row_entries: tuple[dict[int, Fraction], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def rank(self) -> int:
        return linalg.rank(list(self.row_entries), len(self.columns))

    def apply(self, vector: list[Fraction]) -> list[Fraction]:
        return linalg.matvec(list(self.row_entries), vector)

    def kernel(self) -> list[list[Fraction]]:
        return linalg.nullspace(list(self.row_entries), len(self.columns))


def _matrix_from_columns(columns: list[tuple], polys: list[ExactPoly]) -> LinearMapMatrix:
    row_set = set()
    for poly in polys:
        row_set.update(poly.terms)
    rows = tuple(sorted(row_set, key=lambda e: (sum(e), e)))
    row_index = {e: ri for ri, e in enumerate(rows)}
    row_entries: list[dict[int, Fraction]] = [dict() for _ in rows]
    for ci, poly in enumerate(polys):
        for exps, coeff in poly.terms.items():
            row_entries[row_index[exps]][ci] = coeff
    return LinearMapMatrix(columns=tuple(columns), rows=rows,
                           row_entries=tuple(row_entries))


def injectivity_matrix(surf: SurfacePair, m: int, a: int,
                       enforce_cap: bool = True) -> LinearMapMatrix:
    """The matrix of A -> J in the canonical bases.

    Columns are the unknowns (j,k,p,q,h,i); rows the realised monomials of
    the jet polynomial in (x, y, x', y').  The degree cap a <= d-2 is the
    theorem's hypothesis; pass enforce_cap=False only to record what happens
    beyond it.
    """
    if enforce_cap and a > surf.d - 2:
        raise ValueError(f"degree cap violated: a={a} > d-2={surf.d - 2}")
    ctx = JetContext(surf)
    columns: list[ColumnLabel] = []
    polys: list[ExactPoly] = []
    for t in index_tuples(m):
        base = ctx.jet_term_base(t, m)
        for (h, i) in monomials_upto(a):
            columns.append(t + (h, i))
            polys.append(base.shift((h, i, 0, 0)))
    return _matrix_from_columns(columns, polys)


@dataclass(frozen=True)
class InjectivityResult:
    columns: int
    rank: int
    injective: bool
    hypotheses_verified: bool
    kernel_witness: CoefficientField | None

    def to_json_dict(self) -> dict:
        return {
            "columns": self.columns,
            "rank": self.rank,
            "verdict": "injective" if self.injective else "kernel",
            "hypotheses_verified": self.hypotheses_verified,
            "kernel_witness": (None if self.kernel_witness is None
                               else self.kernel_witness.to_json_dict()),
        }


def _resolve_gate(surf: SurfacePair, audit: GenericityReport | None,
                  force: bool, seed: int) -> bool:
    if audit is None and not force:
        audit = full_genericity_audit(surf, seed)
    if audit is not None and audit.passed:
        return True
    if force:
        return False
    raise GenericityGateError(
        "genericity audit did not pass; rerun with force=True to record an "
        "unverified-hypotheses result")


def analyze_injectivity(surf: SurfacePair, m: int, a: int,
                        audit: GenericityReport | None = None,
                        force: bool = False,
                        seed: int = DEFAULT_SEED) -> InjectivityResult:
    """Exact rank analysis of A -> J, gated on the genericity audit."""
    verified = _resolve_gate(surf, audit, force, seed)
    matrix = injectivity_matrix(surf, m, a, enforce_cap=True)
    rank = matrix.rank()
    injective = rank == len(matrix.columns)
    witness = None
    if not injective:
        witness = _vector_to_field(m, a, matrix.kernel()[0])
    return InjectivityResult(columns=len(matrix.columns), rank=rank,
                             injective=injective, hypotheses_verified=verified,
                             kernel_witness=witness)


def _vector_to_field(m: int, a: int, vector: list[Fraction]) -> CoefficientField:
    labels = [t + (h, i) for t in index_tuples(m) for (h, i) in monomials_upto(a)]
    builders: dict[tuple, dict[tuple[int, int], Fraction]] = {}
    for (j, k, p, q, h, i), value in zip(labels, vector):
        if value:
            builders.setdefault((j, k, p, q), {})[(h, i)] = value
    return CoefficientField(m, {t: ExactPoly(XY, terms) for t, terms in builders.items()})


def verify_injectivity_theorem(surf: SurfacePair, m: int, a: int,
                               audit: GenericityReport | None = None,
                               force: bool = False,
                               seed: int = DEFAULT_SEED) -> bool:
    """True iff the A -> J matrix has full column rank (trivial kernel)."""
    return analyze_injectivity(surf, m, a, audit, force, seed).injective


def rx_sx_matrix(surf: SurfacePair, m: int) -> LinearMapMatrix:
    """Matrix of (A[p,q]) -> sum A[p,q] R_x^p S_x^q R^(m-p) S^(m-q), deg A <= d-1."""
    rx, _, sx, _ = surf.partials()
    pow_rx, pow_sx = _PowerCache(rx), _PowerCache(sx)
    pow_r, pow_s = _PowerCache(surf.r), _PowerCache(surf.s)
    cap = surf.d - 1
    columns: list[tuple] = []
    polys: list[ExactPoly] = []
    for p in range(m + 1):
        for q in range(m + 1 - p):
            base = pow_rx[p] * pow_sx[q] * pow_r[m - p] * pow_s[m - q]
            for (h, i) in monomials_upto(cap):
                columns.append((p, q, h, i))
                polys.append(base.shift((h, i)))
    return _matrix_from_columns(columns, polys)


def verify_rx_sx_proposition(surf: SurfacePair, m: int,
                             audit: GenericityReport | None = None,
                             force: bool = False,
                             seed: int = DEFAULT_SEED) -> bool:
    """True iff the reduced R_x/S_x map has full column rank."""
    _resolve_gate(surf, audit, force, seed)
    matrix = rx_sx_matrix(surf, m)
    return matrix.rank() == len(matrix.columns)


def vanishing_lemma_check(p: ExactPoly, q: ExactPoly, amax: int,
                          transversality: IntersectionReport | None = None,
                          degree_margin: int = 0,
                          seed: int = DEFAULT_SEED) -> bool:
    """True iff the degree-<= amax slice of the ideal (p, q) is zero.

    Requires a certified transversal intersection, so that vanishing on the
    deg(p)*deg(q) simple points is ideal membership.  The slice is computed
    on the Macaulay matrix at truncation D = deg p + deg q - 1 (+ margin):
    it is zero iff the rows of degree > amax already carry the full rank.
    """
    dp, dq = p.total_degree(), q.total_degree()
    if amax > dp - 1:
        raise ValueError(f"amax={amax} exceeds deg(p)-1={dp - 1}")
    if transversality is None:
        transversality = pair_transversality_check(p, q, seed)
    if not transversality.passed:
        raise GenericityGateError("transversality precondition not certified")
    truncation = dp + dq - 1 + degree_margin
    polys: list[ExactPoly] = []
    for poly, deg in ((p, dp), (q, dq)):
        for (h, i) in monomials_upto(truncation - deg):
            polys.append(poly.shift((h, i)))
    row_set = set()
    for poly in polys:
        row_set.update(poly.terms)
    rows = sorted(row_set, key=lambda e: (sum(e), e))
    row_index = {e: ri for ri, e in enumerate(rows)}
    full_rows: list[dict[int, Fraction]] = [dict() for _ in rows]
    for ci, poly in enumerate(polys):
        for exps, coeff in poly.terms.items():
            full_rows[row_index[exps]][ci] = coeff
    high_rows = [row for e, row in zip(rows, full_rows) if sum(e) > amax]
    ncols = len(polys)
    return linalg.rank(full_rows, ncols) == linalg.rank(high_rows, ncols)


def triangular_reduction_check(surf: SurfacePair, m: int,
                               seed: int = DEFAULT_SEED, a: int = 1) -> bool:
    """Verify the triangular slice identity for every 1 <= k' <= m (m <= 3).

    With all entries A[j,k,p,q] = 0 for k <= k'-1, the beta = k' coefficient
    of the expansion must equal R^k' S^k' times the reduced sum
    sum A[j,k',p1,q1] R_x^p1 S_x^q1 R^(m-k'-p1) S^(m-k'-q1).
    """
    if m > 3:
        raise ValueError("desk-scale check: m <= 3")
    rng = random.Random(seed)
    rx, _, sx, _ = surf.partials()
    pow_rx, pow_sx = _PowerCache(rx), _PowerCache(sx)
    pow_r, pow_s = _PowerCache(surf.r), _PowerCache(surf.s)

    def random_poly() -> ExactPoly:
        terms = {}
        for (h, i) in monomials_upto(a):
            value = rng.randint(-5, 5)
            if value:
                terms[(h, i)] = Fraction(value)
        return ExactPoly(XY, terms)

    from .jetbuilder import JetSpec
    for k_prime in range(1, m + 1):
        entries = {t: random_poly() for t in index_tuples(m) if t[1] >= k_prime}
        field = CoefficientField(m, entries)
        expansion = expand_lambda(field, surf, JetSpec(m=m, c=0, a=a))
        lhs = expansion.entries[(m - k_prime, k_prime)]
        reduced = ExactPoly.zero(XY)
        for j in range(m - k_prime + 1):
            for p1 in range(m - k_prime - j + 1):
                q1 = m - k_prime - j - p1
                a_poly = field.entries[(j, k_prime, p1, q1)]
                if a_poly.is_zero():
                    continue
                reduced = reduced + (a_poly * pow_rx[p1] * pow_sx[q1]
                                     * pow_r[m - k_prime - p1] * pow_s[m - k_prime - q1])
        rhs = pow_r[k_prime] * pow_s[k_prime] * reduced
        if lhs != rhs:
            return False
    return True
