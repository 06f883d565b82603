"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a map from exponent tuples (one non-negative integer per
variable of a fixed, ordered variable set) to nonzero Fraction coefficients.
The empty map is the zero polynomial.  Every operation returns canonical
form (no zero coefficients are ever stored), so ``==`` on the term maps is
polynomial identity and every downstream certificate in this package is a
bit-exact comparison.

No floating point is used anywhere.  The total degree of the zero
polynomial is the dedicated sentinel ``NEG_INF``, which compares below
every integer and is never conflated with 0 or -1.

Term order is graded lexicographic with respect to the variable order fixed
by the VarSet at creation; printing lists terms in descending graded-lex
order with the sign folded into the coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class _NegInfinity:
    """Order sentinel below every integer; the degree of the zero polynomial."""

    __slots__ = ()

    def __lt__(self, other):
        return not isinstance(other, _NegInfinity)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInfinity)

    def __eq__(self, other):
        return isinstance(other, _NegInfinity)

    def __hash__(self):
        return hash("jetdiff.NEG_INF")

    def __repr__(self):
        return "-Infinity"

    def __add__(self, other):
        return self

    __radd__ = __add__


NEG_INF = _NegInfinity()

Exponents = tuple  # one int per variable of the owning VarSet


class ParseError(ValueError):
    """Syntax error in a polynomial expression, with a 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VarSet:
    """An ordered set of distinct variable names, fixed at creation."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        if not all(names):
            raise ValueError("empty variable name")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, *args):
        raise AttributeError("VarSet is immutable")

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarSet({', '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} in {self!r}") from None


def _grlex_key(exps: Exponents):
    return (sum(exps), exps)


class ExactPoly:
    """A sparse polynomial with exact rational coefficients over a VarSet.

    Instances are immutable by convention: the term map is never mutated
    after construction and all operations build fresh polynomials.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VarSet, terms: Mapping[Exponents, Fraction | int] | None = None):
        clean: dict[Exponents, Fraction] = {}
        n = len(vars)
        if terms:
            for exps, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != n or any(e < 0 or not isinstance(e, int) for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for {vars!r}")
                clean[exps] = coeff
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("ExactPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: VarSet) -> "ExactPoly":
        return cls(vars)

    @classmethod
    def const(cls, vars: VarSet, value: Fraction | int) -> "ExactPoly":
        return cls(vars, {(0,) * len(vars): Fraction(value)})

    @classmethod
    def variable(cls, vars: VarSet, name: str) -> "ExactPoly":
        exps = [0] * len(vars)
        exps[vars.index(name)] = 1
        return cls(vars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, vars: VarSet, exps: Exponents, coeff: Fraction | int = 1) -> "ExactPoly":
        return cls(vars, {tuple(exps): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        """The coefficient of the constant monomial (0 if absent)."""
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str):
        """Degree in one variable; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def used_variables(self) -> tuple[str, ...]:
        """Names of variables appearing with positive exponent."""
        used = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.vars.names, used) if u)

    def sorted_terms(self, reverse: bool = True) -> list[tuple[Exponents, Fraction]]:
        """Terms sorted by graded-lex order (descending by default)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=reverse)

    def leading_term(self) -> tuple[Exponents, Fraction]:
        """The graded-lex leading term of a nonzero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self.sorted_terms())

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ---------------------------------------------------

    def _check_same_vars(self, other: "ExactPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable-set mismatch: {self.vars!r} vs {other.vars!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __neg__(self) -> "ExactPoly":
        return ExactPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        self._check_same_vars(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, Fraction(0)) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        result = ExactPoly.zero(self.vars)
        object.__setattr__(result, "terms", out)
        return result

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        return self + (-other)

    def __mul__(self, other: "ExactPoly") -> "ExactPoly":
        self._check_same_vars(other)
        out: dict[Exponents, Fraction] = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                acc = out.get(exps, Fraction(0)) + ca * cb
                if acc:
                    out[exps] = acc
                else:
                    out.pop(exps, None)
        result = ExactPoly.zero(self.vars)
        object.__setattr__(result, "terms", out)
        return result

    def scale(self, value: Fraction | int) -> "ExactPoly":
        value = Fraction(value)
        if value == 0:
            return ExactPoly.zero(self.vars)
        return ExactPoly(self.vars, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, k: int) -> "ExactPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {k!r}")
        result = ExactPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exps: Exponents) -> "ExactPoly":
        """Multiply by the monomial with the given exponent tuple."""
        exps = tuple(exps)
        if len(exps) != len(self.vars) or any(e < 0 for e in exps):
            raise ValueError(f"bad shift exponents {exps}")
        return ExactPoly(self.vars, {tuple(a + b for a, b in zip(e, exps)): c
                                     for e, c in self.terms.items()})

    def extend_to(self, vars: VarSet) -> "ExactPoly":
        """Re-express over a larger VarSet containing all used variables by name."""
        if vars == self.vars:
            return self
        positions = []
        for i, name in enumerate(self.vars.names):
            if name in vars:
                positions.append((i, vars.index(name)))
            else:
                positions.append((i, None))
        out: dict[Exponents, Fraction] = {}
        n = len(vars)
        for exps, coeff in self.terms.items():
            new = [0] * n
            for i, j in positions:
                if exps[i] == 0:
                    continue
                if j is None:
                    raise ValueError(f"variable {self.vars.names[i]!r} missing from {vars!r}")
                new[j] = exps[i]
            out[tuple(new)] = coeff
        return ExactPoly(vars, out)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.vars.names, exps) if e
            )
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"ExactPoly({self})"


# -- parsing ---------------------------------------------------------------

_TOKEN_CHARS = set("+-*^/()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser for expr := term (('+'|'-') term)*."""

    def __init__(self, text: str, vars: VarSet):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> ExactPoly:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return result

    def expr(self) -> ExactPoly:
        negate = False
        if self.peek()[0] in "+-":
            negate = self.advance()[0] == "-"
        result = self.term()
        if negate:
            result = -result
        while self.peek()[0] in "+-":
            op = self.advance()[0]
            rhs = self.term()
            result = result - rhs if op == "-" else result + rhs
        return result

    def term(self) -> ExactPoly:
        result = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> ExactPoly:
        base = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("num")
            base = base ** int(tok[1])
        return base

    def base(self) -> ExactPoly:
        tok = self.advance()
        kind, value, pos = tok
        if kind == "ident":
            if value not in self.vars:
                raise ParseError(f"unknown variable {value!r}", pos)
            return ExactPoly.variable(self.vars, value)
        if kind == "num":
            numerator = int(value)
            if self.peek()[0] == "/":
                self.advance()
                den_tok = self.expect("num")
                denominator = int(den_tok[1])
                if denominator == 0:
                    raise ParseError("zero denominator", den_tok[2])
                return ExactPoly.const(self.vars, Fraction(numerator, denominator))
            return ExactPoly.const(self.vars, numerator)
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {value!r}", pos)


def poly_parse(text: str, vars: VarSet) -> ExactPoly:
    """Parse a polynomial expression over the given variable set."""
    return _Parser(text, vars).parse()


# -- spec-named operation aliases -------------------------------------------

def poly_add(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    return p + q


def poly_mul(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    return p * q


def poly_neg(p: ExactPoly) -> ExactPoly:
    return -p


def poly_pow(p: ExactPoly, k: int) -> ExactPoly:
    return p ** k


def poly_diff(p: ExactPoly, name: str) -> ExactPoly:
    """Formal partial derivative with respect to one variable."""
    i = p.vars.index(name)
    out: dict[Exponents, Fraction] = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        if e == 0:
            continue
        new = list(exps)
        new[i] = e - 1
        out[tuple(new)] = coeff * e
    return ExactPoly(p.vars, out)


def poly_substitute(p: ExactPoly, bindings: Mapping[str, ExactPoly]) -> ExactPoly:
    """Simultaneous substitution of polynomials for variables.

    All replacement polynomials must share one target VarSet; unbound
    variables are carried over by name and must exist in the target.
    """
    if not bindings:
        return p
    target = None
    for name, repl in bindings.items():
        p.vars.index(name)  # raises on unknown variable
        if target is None:
            target = repl.vars
        elif repl.vars != target:
            raise ValueError("replacement polynomials disagree on target VarSet")
    bound = {p.vars.index(name): repl for name, repl in bindings.items()}
    carried: dict[int, int] = {}
    for i, name in enumerate(p.vars.names):
        if i in bound:
            continue
        if name not in target:
            raise ValueError(f"unbound variable {name!r} missing from target {target!r}")
        carried[i] = target.index(name)

    power_cache: dict[tuple[int, int], ExactPoly] = {}

    def cached_pow(i: int, k: int) -> ExactPoly:
        key = (i, k)
        if key not in power_cache:
            power_cache[key] = bound[i] ** k
        return power_cache[key]

    n = len(target)
    result = ExactPoly.zero(target)
    for exps, coeff in p.terms.items():
        carried_exps = [0] * n
        piece = None
        for i, e in enumerate(exps):
            if e == 0:
                continue
            if i in bound:
                factor = cached_pow(i, e)
                piece = factor if piece is None else piece * factor
            else:
                carried_exps[carried[i]] = e
        mono = ExactPoly.monomial(target, tuple(carried_exps), coeff)
        result = result + (mono if piece is None else mono * piece)
    return result


def monomial_quotient(p: ExactPoly, name: str, k: int) -> tuple[ExactPoly, bool]:
    """Divide by ``name**k`` term-wise.

    Returns ``(quotient, exact)`` where exact is True iff every term of p
    carries exponent >= k in the variable; when exact is False the quotient
    collects only the divisible terms.  Total function: the zero polynomial
    is exactly divisible by every power.
    """
    if k < 0:
        raise ValueError("power must be non-negative")
    i = p.vars.index(name)
    out: dict[Exponents, Fraction] = {}
    exact = True
    for exps, coeff in p.terms.items():
        if exps[i] < k:
            exact = False
            continue
        new = list(exps)
        new[i] -= k
        out[tuple(new)] = coeff
    return ExactPoly(p.vars, out), exact


# -- exact division and univariate views ------------------------------------

def exact_divide(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Exact polynomial division p / q; raises ValueError if q does not divide p."""
    p._check_same_vars(q)
    if q.is_zero():
        raise ValueError("division by the zero polynomial")
    if p.is_zero():
        return p
    q_lead, q_coeff = q.leading_term()
    quotient: dict[Exponents, Fraction] = {}
    rem = p
    while not rem.is_zero():
        r_lead, r_coeff = rem.leading_term()
        exps = tuple(a - b for a, b in zip(r_lead, q_lead))
        if any(e < 0 for e in exps):
            raise ValueError("inexact polynomial division")
        coeff = r_coeff / q_coeff
        quotient[exps] = quotient.get(exps, Fraction(0)) + coeff
        rem = rem - q.shift(exps).scale(coeff)
    return ExactPoly(p.vars, quotient)


def univariate_coeffs(p: ExactPoly, name: str) -> list[ExactPoly]:
    """Dense coefficient list of p viewed in one variable.

    Entry k is the coefficient of name**k, an ExactPoly over the same
    VarSet with zero exponent in that variable.  The zero polynomial
    yields an empty list.
    """
    if p.is_zero():
        return []
    i = p.vars.index(name)
    deg = max(e[i] for e in p.terms)
    buckets: list[dict[Exponents, Fraction]] = [{} for _ in range(deg + 1)]
    for exps, coeff in p.terms.items():
        new = list(exps)
        k = new[i]
        new[i] = 0
        buckets[k][tuple(new)] = coeff
    return [ExactPoly(p.vars, b) for b in buckets]


def from_univariate_coeffs(coeffs: list[ExactPoly], vars: VarSet, name: str) -> ExactPoly:
    """Inverse of univariate_coeffs."""
    i = vars.index(name)
    result = ExactPoly.zero(vars)
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        exps = [0] * len(vars)
        exps[i] = k
        result = result + c * ExactPoly.monomial(vars, tuple(exps))
    return result


def _effective_variable(*polys: ExactPoly) -> str | None:
    """The single variable used by the given polynomials, or None if constant."""
    used: set[str] = set()
    for p in polys:
        used.update(p.used_variables())
    if len(used) > 1:
        raise ValueError(f"expected univariate input, found variables {sorted(used)}")
    return next(iter(used)) if used else None


# -- resultant via the subresultant PRS -------------------------------------

def _prem(f: list[ExactPoly], g: list[ExactPoly], vars: VarSet) -> list[ExactPoly]:
    """Pseudo-remainder of dense coefficient lists (index = degree)."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return list(f)
    r = list(f)
    dr = df
    steps = df - dg + 1
    lc_g = g[dg]
    while dr >= dg and any(not c.is_zero() for c in r):
        lc_r = r[dr]
        steps -= 1
        shift = dr - dg
        new = [c * lc_g for c in r]
        for k in range(dg + 1):
            new[k + shift] = new[k + shift] - lc_r * g[k]
        while new and new[-1].is_zero():
            new.pop()
        r = new
        dr = len(r) - 1
    if steps > 0:
        factor = lc_g ** steps
        r = [c * factor for c in r]
    return r


def _trim(coeffs: list[ExactPoly]) -> list[ExactPoly]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def resultant(p: ExactPoly, q: ExactPoly, name: str) -> ExactPoly:
    """Resultant of p and q eliminating one variable, via the subresultant PRS.

    Convention: Res(p, q) = lc(p)**deg(q) * prod q(roots of p); it is zero
    exactly when p and q share a factor of positive degree in the eliminated
    variable.  The coefficient arithmetic stays in the polynomial ring of the
    remaining variables, with division-exact reduction at each step of the
    remainder sequence to control growth.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial is undefined")
    p._check_same_vars(q)
    vars = p.vars
    one = ExactPoly.const(vars, 1)

    f = _trim(univariate_coeffs(p, name))
    g = _trim(univariate_coeffs(q, name))
    n, m = len(f) - 1, len(g) - 1
    if n == 0 and m == 0:
        return one
    if m == 0:
        return g[0] ** n
    if n == 0:
        return f[0] ** m

    sign = Fraction(-1) if (n < m and (n * m) % 2 == 1) else Fraction(1)
    if n < m:
        f, g, n, m = g, f, m, n

    # Brown's subresultant PRS; S collects the nonzero scalar subresultants.
    d = n - m
    b = (-one) ** (d + 1)
    h = _trim([c * b for c in _prem(f, g, vars)])
    lc = g[-1]
    c = lc ** d
    last_scalar = c
    neg_c = -c
    last = g
    while h:
        k = len(h) - 1
        f, g = g, h
        prev_deg = len(f) - 1
        d = prev_deg - k
        b = -(lc * (neg_c ** d))
        raw = _prem(f, g, vars)
        h = _trim([exact_divide(coeff, b) for coeff in raw])
        lc = g[-1]
        if d > 1:
            neg_c = exact_divide((-lc) ** d, neg_c ** (d - 1))
        else:
            neg_c = -lc
        last_scalar = -neg_c
        last = g

    if len(last) - 1 > 0:
        return ExactPoly.zero(vars)
    return last_scalar.scale(sign)


def resultant_y(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Resultant eliminating the variable named ``y``."""
    return resultant(p, q, "y")


def sylvester_resultant(p: ExactPoly, q: ExactPoly, name: str) -> ExactPoly:
    """Resultant as the Sylvester determinant (cross-check path, small degrees)."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial is undefined")
    p._check_same_vars(q)
    vars = p.vars
    f = _trim(univariate_coeffs(p, name))
    g = _trim(univariate_coeffs(q, name))
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    if size == 0:
        return ExactPoly.const(vars, 1)
    zero = ExactPoly.zero(vars)
    rows = []
    for i in range(m):
        row = [zero] * size
        for k, coeff in enumerate(reversed(f)):
            row[i + k] = coeff
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for k, coeff in enumerate(reversed(g)):
            row[i + k] = coeff
        rows.append(row)

    # Fraction-free Bareiss determinant over the polynomial ring.
    sign = 1
    prev = ExactPoly.const(vars, 1)
    for k in range(size - 1):
        pivot_row = next((i for i in range(k, size) if not rows[i][k].is_zero()), None)
        if pivot_row is None:
            return zero
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = exact_divide(pivot * rows[i][j] - rows[i][k] * rows[k][j], prev)
            rows[i][k] = zero
        prev = pivot
    det = rows[size - 1][size - 1]
    return det if sign == 1 else -det


# -- univariate gcd and squarefree test --------------------------------------

def _univariate_divmod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Remainder of dense Fraction coefficient lists (index = degree)."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(r) - 1 >= db and r:
        factor = r[-1] / lc
        shift = len(r) - 1 - db
        for k in range(db + 1):
            r[k + shift] -= factor * b[k]
        while r and r[-1] == 0:
            r.pop()
    return r


def _to_fraction_coeffs(p: ExactPoly, name: str | None) -> list[Fraction]:
    if p.is_zero():
        return []
    if name is None:
        return [p.constant_value()]
    coeffs = univariate_coeffs(p, name)
    out = []
    for c in coeffs:
        if not c.is_constant():
            raise ValueError("polynomial is not univariate")
        out.append(c.constant_value())
    while out and out[-1] == 0:
        out.pop()
    return out


def gcd_univariate(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Monic gcd of two effectively-univariate polynomials (not both zero)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    p._check_same_vars(q)
    name = _effective_variable(p, q)
    a = _to_fraction_coeffs(p, name)
    b = _to_fraction_coeffs(q, name)
    while b:
        a, b = b, _univariate_divmod(a, b)
    monic = [c / a[-1] for c in a]
    if name is None:
        return ExactPoly.const(p.vars, monic[-1])
    return from_univariate_coeffs(
        [ExactPoly.const(p.vars, c) for c in monic], p.vars, name)


def squarefree_univariate(p: ExactPoly) -> bool:
    """True iff gcd(p, p') is constant; constants count as squarefree."""
    if p.is_zero():
        raise ValueError("squarefree test of the zero polynomial is undefined")
    name = _effective_variable(p)
    if name is None:
        return True
    g = gcd_univariate(p, poly_diff(p, name))
    return g.is_constant()


def rational_roots(p: ExactPoly, divisor_limit: int = 10**12) -> tuple[list[Fraction], bool]:
    """All rational roots of an effectively-univariate polynomial.

    Returns ``(roots, complete)``.  complete is False when the leading or
    trailing integer coefficient was too large to factor within the trial
    division budget, in which case the list may miss roots.
    """
    if p.is_zero():
        raise ValueError("every rational is a root of the zero polynomial")
    name = _effective_variable(p)
    if name is None:
        return [], True
    coeffs = _to_fraction_coeffs(p, name)
    from math import lcm, gcd as igcd
    den = lcm(*[c.denominator for c in coeffs])
    ints = [int(c * den) for c in coeffs]
    content = 0
    for v in ints:
        content = igcd(content, v)
    ints = [v // content for v in ints]
    roots: list[Fraction] = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low > 0:
        roots.append(Fraction(0))
        ints = ints[low:]
    if len(ints) == 1:
        return roots, True
    a0, an = abs(ints[0]), abs(ints[-1])
    complete = True
    if a0 > divisor_limit or an > divisor_limit:
        complete = False
        num_divs = [d for d in range(1, 10**4 + 1) if a0 % d == 0]
        den_divs = [d for d in range(1, 10**4 + 1) if an % d == 0]
    else:
        num_divs = _divisors(a0)
        den_divs = _divisors(an)
    seen: set[Fraction] = set()
    for nd in num_divs:
        for dd in den_divs:
            for cand in (Fraction(nd, dd), Fraction(-nd, dd)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return roots, complete


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
