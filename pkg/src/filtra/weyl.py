"""Normal-form arithmetic in the Weyl algebra A_n over the rationals.

Elements are stored as ``{(alpha, beta): coefficient}`` where the key stands
for the ordered monomial ``X^alpha d^beta`` (all X's to the left).  The
canonical generators are numbered ``1..2n``: ``1..n`` are ``X_1..X_n`` and
``n+1..2n`` are ``d_1..d_n``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, perm

__all__ = [
    "MINUS_INFINITY",
    "MAX_EXPONENT",
    "DimensionMismatch",
    "ParseError",
    "Polynomial",
    "WeylElement",
    "linear_combination",
    "mul",
    "filtration_degree",
    "ad_generator",
    "filtration_basis",
    "filtration_dimension",
    "monomials_of_degree",
    "apply_to_polynomial",
    "parse",
    "parse_polynomial",
    "render",
    "grlex_key",
    "generator_name",
]

MINUS_INFINITY = float("-inf")
MAX_EXPONENT = 10_000


class DimensionMismatch(ValueError):
    """Operands live in Weyl algebras (or polynomial rings) of different rank."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.position = position
        self.text = text


def grlex_key(exponents: tuple[int, ...]):
    return (sum(exponents), exponents)


def _pair_key(mono):
    alpha, beta = mono
    return grlex_key(alpha + beta)


def _compositions(length: int, total: int):
    """All tuples of ``length`` non-negative ints summing to ``total`` (lex descending)."""
    if length == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(length - 1, total - first):
            yield (first,) + rest


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``degree`` in ascending lex order."""
    return sorted(_compositions(nvars, degree))


def _merge_dims(n1: int, empty1: bool, n2: int, empty2: bool) -> int:
    if n1 == n2:
        return n1
    if empty1:
        return n2
    if empty2:
        return n1
    raise DimensionMismatch(f"cannot combine rank {n1} with rank {n2}")


# --------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Commutative polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("number of variables must be positive")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or min(mono) < 0:
                raise ValueError(f"bad exponent vector {mono} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[mono] = c
        self.nvars = nvars
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Polynomial:
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = {m: c for m, c in terms.items() if c}
        return p

    @classmethod
    def constant(cls, nvars: int, value=1) -> Polynomial:
        return cls._raw(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        if not 1 <= i <= nvars:
            raise IndexError(f"variable index {i} out of range 1..{nvars}")
        mono = tuple(1 if k == i - 1 else 0 for k in range(nvars))
        return cls._raw(nvars, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, exponents, coefficient=1) -> Polynomial:
        exponents = tuple(exponents)
        return cls(len(exponents), {exponents: coefficient})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def degree(self):
        if not self._terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self._terms)

    def coefficient(self, exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        nvars = _merge_dims(self.nvars, not self._terms, other.nvars, not other._terms)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial._raw(nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial._raw(self.nvars, {m: v * c for m, v in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        nvars = _merge_dims(self.nvars, not self._terms, other.nvars, not other._terms)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars)
        for _ in range(e):
            result = result * self
        return result

    def derivative(self, i: int) -> Polynomial:
        """Partial derivative with respect to variable ``i`` (1-based)."""
        if not 1 <= i <= self.nvars:
            raise IndexError(f"variable index {i} out of range 1..{self.nvars}")
        k = i - 1
        out = {}
        for m, c in self._terms.items():
            if m[k]:
                out[m[:k] + (m[k] - 1,) + m[k + 1:]] = c * m[k]
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for x, e in zip(point, m):
                term *= Fraction(x) ** e
            total += term
        return total

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {render(self)!r})"

    def __str__(self):
        return render(self)


# --------------------------------------------------------------------------
# Weyl algebra elements


class WeylElement:
    """Element of A_n in normal form, immutable."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("rank n must be positive")
        clean = {}
        for key, c in (terms or {}).items():
            alpha, beta = key
            alpha = tuple(int(e) for e in alpha)
            beta = tuple(int(e) for e in beta)
            if len(alpha) != n or len(beta) != n or min(alpha + beta) < 0:
                raise ValueError(f"bad multi-index pair {key} for n={n}")
            c = Fraction(c)
            if c:
                clean[(alpha, beta)] = c
        self.n = n
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict) -> WeylElement:
        u = object.__new__(cls)
        u.n = n
        u._terms = {k: c for k, c in terms.items() if c}
        return u

    @classmethod
    def zero(cls, n: int) -> WeylElement:
        return cls._raw(n, {})

    @classmethod
    def scalar(cls, n: int, value=1) -> WeylElement:
        zero = (0,) * n
        return cls._raw(n, {(zero, zero): Fraction(value)})

    @classmethod
    def monomial(cls, alpha, beta, coefficient=1) -> WeylElement:
        alpha, beta = tuple(alpha), tuple(beta)
        return cls(len(alpha), {(alpha, beta): coefficient})

    @classmethod
    def generator(cls, n: int, g: int) -> WeylElement:
        """Canonical generator ``a_g``: ``X_g`` for g <= n, ``d_{g-n}`` otherwise."""
        if not 1 <= g <= 2 * n:
            raise IndexError(f"generator index {g} out of range 1..{2 * n}")
        unit = tuple(1 if k == (g - 1) % n else 0 for k in range(n))
        zero = (0,) * n
        key = (unit, zero) if g <= n else (zero, unit)
        return cls._raw(n, {key: Fraction(1)})

    @classmethod
    def x(cls, n: int, i: int) -> WeylElement:
        return cls.generator(n, i)

    @classmethod
    def d(cls, n: int, i: int) -> WeylElement:
        if not 1 <= i <= n:
            raise IndexError(f"derivation index {i} out of range 1..{n}")
        return cls.generator(n, n + i)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_scalar(self) -> bool:
        zero = (0,) * self.n
        return all(k == (zero, zero) for k in self._terms)

    def constant_coefficient(self) -> Fraction:
        zero = (0,) * self.n
        return self._terms.get((zero, zero), Fraction(0))

    def coefficient(self, alpha, beta) -> Fraction:
        return self._terms.get((tuple(alpha), tuple(beta)), Fraction(0))

    def degree(self):
        return filtration_degree(self)

    def sorted_terms(self, descending: bool = True):
        return sorted(self._terms.items(), key=lambda kv: _pair_key(kv[0]), reverse=descending)

    def _coerce(self, other) -> WeylElement | None:
        if isinstance(other, WeylElement):
            return other
        if isinstance(other, (int, Fraction)):
            return WeylElement.scalar(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return linear_combination([(1, self), (1, other)])

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return linear_combination([(1, self), (-1, other)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return linear_combination([(1, other), (-1, self)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return WeylElement._raw(self.n, {k: v * c for k, v in self._terms.items()})
        if not isinstance(other, WeylElement):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = WeylElement.scalar(self.n)
        for _ in range(e):
            result = mul(result, self)
        return result

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_to_polynomial(self, p)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(self.n, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"WeylElement({self.n}, {render(self)!r})"

    def __str__(self):
        return render(self)


def linear_combination(pairs) -> WeylElement:
    """Sum of ``c * u`` over ``(c, u)`` pairs, in normal form."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty linear combination has no rank")
    n = pairs[0][1].n
    empty = not pairs[0][1]._terms
    out: dict = {}
    for c, u in pairs:
        n = _merge_dims(n, empty, u.n, not u._terms)
        empty = empty and not u._terms
        c = Fraction(c)
        if not c:
            continue
        for k, v in u._terms.items():
            out[k] = out.get(k, 0) + c * v
    return WeylElement._raw(n, out)


@lru_cache(maxsize=None)
def _leibniz(b: int, c: int) -> tuple:
    """``d^b X^c = sum_k C(b,k) c!/(c-k)! X^(c-k) d^(b-k)`` as ``(k, coeff)`` pairs."""
    return tuple((k, comb(b, k) * perm(c, k)) for k in range(min(b, c) + 1))


@lru_cache(maxsize=500_000)
def _monomial_product(a1: tuple, b1: tuple, a2: tuple, b2: tuple) -> tuple:
    """Normal form of ``X^a1 d^b1 X^a2 d^b2`` as ``((alpha, beta), int)`` pairs."""
    if not any(b1) or not any(a2):
        return (((tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2))), 1),)
    per_var = [_leibniz(b1[i], a2[i]) for i in range(len(a1))]
    out = []
    for choice in product(*per_var):
        coeff = 1
        alpha = []
        beta = []
        for i, (k, c) in enumerate(choice):
            coeff *= c
            alpha.append(a1[i] + a2[i] - k)
            beta.append(b1[i] + b2[i] - k)
        out.append(((tuple(alpha), tuple(beta)), coeff))
    return tuple(out)


def mul(u: WeylElement, v: WeylElement) -> WeylElement:
    """Product ``u * v`` in normal form."""
    n = _merge_dims(u.n, not u._terms, v.n, not v._terms)
    out: dict = {}
    for (a1, b1), c1 in u._terms.items():
        for (a2, b2), c2 in v._terms.items():
            c12 = c1 * c2
            for key, k in _monomial_product(a1, b1, a2, b2):
                out[key] = out.get(key, 0) + c12 * k
    return WeylElement._raw(n, out)


def filtration_degree(u: WeylElement):
    """Total degree ``max |alpha| + |beta|``; ``MINUS_INFINITY`` for zero."""
    if not u._terms:
        return MINUS_INFINITY
    return max(sum(a) + sum(b) for a, b in u._terms)


def ad_generator(g: int, u: WeylElement) -> WeylElement:
    """Commutator ``a_g u - u a_g`` with the g-th canonical generator."""
    a = WeylElement.generator(u.n, g)
    return mul(a, u) - mul(u, a)


def filtration_dimension(n: int, i: int) -> int:
    return comb(i + 2 * n, 2 * n) if i >= 0 else 0


def filtration_basis(n: int, i: int) -> list[WeylElement]:
    """Monomials ``X^alpha d^beta`` with ``|alpha| + |beta| <= i`` in ascending grlex."""
    out = []
    for deg in range(i + 1):
        for vec in monomials_of_degree(2 * n, deg):
            out.append(WeylElement._raw(n, {(vec[:n], vec[n:]): Fraction(1)}))
    return out


def apply_to_polynomial(u: WeylElement, p: Polynomial) -> Polynomial:
    """Action of A_n on K[x_1..x_n]: X_i multiplies, d_i differentiates."""
    if u.n != p.nvars and u._terms and p._terms:
        raise DimensionMismatch(f"operator rank {u.n} vs polynomial in {p.nvars} variables")
    out: dict = {}
    for (alpha, beta), c in u._terms.items():
        for gamma, d in p._terms.items():
            if any(g < b for g, b in zip(gamma, beta)):
                continue
            coeff = c * d
            for g, b in zip(gamma, beta):
                coeff *= perm(g, b)
            mono = tuple(g - b + a for g, b, a in zip(gamma, beta, alpha))
            out[mono] = out.get(mono, 0) + coeff
    return Polynomial._raw(p.nvars if p._terms else u.n, out)


# --------------------------------------------------------------------------
# Text form


def generator_name(n: int, g: int) -> str:
    return f"x{g}" if g <= n else f"d{g - n}"


def _render_factors(exponents, letter: str) -> list[str]:
    out = []
    for i, e in enumerate(exponents, start=1):
        if e == 1:
            out.append(f"{letter}{i}")
        elif e > 1:
            out.append(f"{letter}{i}^{e}")
    return out


def _render_terms(items) -> str:
    pieces = []
    for factors, c in items:
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not pieces:
            pieces.append(f"-{text}" if c < 0 else text)
        else:
            pieces.append(f" - {text}" if c < 0 else f" + {text}")
    return "".join(pieces) if pieces else "0"


def render(obj) -> str:
    """Normal form text: terms in descending grlex, coefficients in lowest terms."""
    if isinstance(obj, WeylElement):
        items = [
            (_render_factors(a, "x") + _render_factors(b, "d"), c)
            for (a, b), c in obj.sorted_terms()
        ]
        return _render_terms(items)
    if isinstance(obj, Polynomial):
        ordered = sorted(obj.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)
        return _render_terms([(_render_factors(m, "x"), c) for m, c in ordered])
    raise TypeError(f"cannot render {type(obj).__name__}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xd])(?P<idx>\d+)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            at = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[at]!r}", text, at)
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "var")
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), start))
        elif m.group("var") is not None:
            tokens.append(("var", (m.group("var"), int(m.group("idx"))), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _parse_terms(text: str, allow_d: bool):
    """Yield ``(coefficient, [(letter, index, exponent), ...])`` per term."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def expect_int():
        nonlocal pos
        kind, val, at = tokens[pos]
        if kind != "num":
            raise ParseError("expected integer", text, at)
        pos += 1
        return val, at

    terms = []
    sign = 1
    kind, val, at = peek()
    if kind == "end":
        raise ParseError("empty expression", text, at)
    if kind == "op" and val in "+-":
        sign = -1 if val == "-" else 1
        pos += 1
    while True:
        coeff = Fraction(sign)
        factors = []
        kind, val, at = peek()
        if kind == "num":
            num, _ = expect_int()
            den = 1
            if peek()[:2] == ("op", "/"):
                pos += 1
                den, dat = expect_int()
                if den == 0:
                    raise ParseError("zero denominator", text, dat)
            coeff *= Fraction(num, den)
            if peek()[:2] == ("op", "*"):
                pos += 1
                kind, val, at = peek()
                if kind != "var":
                    raise ParseError("expected factor after '*'", text, at)
            else:
                terms.append((coeff, factors))
                kind, val, at = peek()
                if kind == "end":
                    break
                if kind == "op" and val in "+-":
                    sign = -1 if val == "-" else 1
                    pos += 1
                    continue
                raise ParseError(f"unexpected token {val!r}", text, at)
        while True:
            kind, val, at = peek()
            if kind != "var":
                raise ParseError("expected factor x<k> or d<k>", text, at)
            letter, idx = val
            if letter == "d" and not allow_d:
                raise ParseError("derivations are not allowed here", text, at)
            if idx < 1:
                raise ParseError("variable indices start at 1", text, at)
            pos += 1
            exp = 1
            if peek()[:2] == ("op", "^"):
                pos += 1
                exp, eat = expect_int()
                if exp > MAX_EXPONENT:
                    raise ParseError(f"exponent overflow (limit {MAX_EXPONENT})", text, eat)
            factors.append((letter, idx, exp))
            if peek()[:2] == ("op", "*"):
                pos += 1
                continue
            break
        terms.append((coeff, factors))
        kind, val, at = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            pos += 1
            continue
        raise ParseError(f"unexpected token {val!r}", text, at)
    return terms


def parse(text: str, n: int | None = None) -> WeylElement:
    """Parse ``"x1*d1 + 1/2*d2^3 - 4"``; factors multiply left to right."""
    terms = _parse_terms(text, allow_d=True)
    top = max((idx for _, fs in terms for _, idx, _ in fs), default=1)
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"index {top} exceeds rank {n}", text, 0)
    total = WeylElement.zero(n)
    for coeff, factors in terms:
        term = WeylElement.scalar(n, coeff)
        for letter, idx, exp in factors:
            unit = tuple(exp if k == idx - 1 else 0 for k in range(n))
            zero = (0,) * n
            key = (unit, zero) if letter == "x" else (zero, unit)
            term = mul(term, WeylElement._raw(n, {key: Fraction(1)}))
        total = total + term
    return total


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    terms = _parse_terms(text, allow_d=False)
    top = max((idx for _, fs in terms for _, idx, _ in fs), default=1)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise ParseError(f"index {top} exceeds {nvars} variables", text, 0)
    out: dict = {}
    for coeff, factors in terms:
        mono = [0] * nvars
        for _, idx, exp in factors:
            mono[idx - 1] += exp
        key = tuple(mono)
        out[key] = out.get(key, 0) + coeff
    return Polynomial._raw(nvars, out)
