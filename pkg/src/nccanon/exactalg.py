"""Exact multivariate Laurent polynomials over the rationals.

A polynomial is a finite map from exponent vectors to nonzero rational
coefficients.  Exponents may be negative, so meromorphic coefficient
functions such as x^-1*y are first-class values.  Every coefficient is an
exact ``Fraction``; equality of two polynomials is therefore a decidable,
exact test, which is what the downstream gluing and restriction checks rely
on.  Nothing is mutated after construction, so values can be shared freely
between threads.

Variables are named symbols fixed at construction time.  Operations that
combine two polynomials require identical variable lists, and moving a
value between coordinate charts is always an explicit ``rename``.  This is
deliberate: the gluing maps between charts permute and rescale coordinates,
and silent reconciliation of variable lists would hide exactly the
bookkeeping this library exists to get right.

Text syntax (``parse_polynomial`` / ``str``): terms joined by ``+``/``-``,
factors joined by ``*``, exponents ``x^k`` with k a possibly negative
integer, rational coefficients ``a/b``.  Printing is deterministic (graded
lexicographic term order, no redundant signs), so printed output is stable
enough for golden-file tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

# Base field: stdlib Fraction is already a reduced numerator/positive
# denominator pair, which is all the coefficient arithmetic needs.
Rational = Fraction

Exponents = tuple[int, ...]


class ExactAlgError(Exception):
    """Base class for errors raised by the arithmetic layer."""


class VariableMismatch(ExactAlgError):
    """Two operands live on different variable lists."""


class UnknownVariable(ExactAlgError):
    """A variable name is not part of the polynomial's chart."""


class NegativeExponentAtRestriction(ExactAlgError):
    """Setting a variable to zero hit a term with a pole in that variable."""


class ParseError(ExactAlgError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def divides(m1: Exponents, m2: Exponents) -> bool:
    """True iff the monomial with exponents m1 divides the one with m2.

    Both vectors must be nonnegative and of equal length; divisibility is
    entrywise comparison.
    """
    if len(m1) != len(m2):
        raise VariableMismatch(
            f"exponent vectors of lengths {len(m1)} and {len(m2)}"
        )
    if any(e < 0 for e in m1) or any(e < 0 for e in m2):
        raise ValueError("divisibility is defined for nonnegative exponents only")
    return all(a <= b for a, b in zip(m1, m2))


@dataclass(frozen=True)
class AffineExponent:
    """An exponent of the shape slope*m + offset in a grading weight m."""

    slope: int
    offset: int

    def __post_init__(self) -> None:
        if self.slope < 0:
            raise ValueError(f"slope must be nonnegative, got {self.slope}")

    def at(self, m: int) -> int:
        return self.slope * m + self.offset

    def is_valid_from(self, m_min: int = 1) -> bool:
        # slope >= 0, so the minimum over m >= m_min is attained at m_min
        return self.at(m_min) >= 0

    def __str__(self) -> str:
        if self.slope == 0:
            return str(self.offset)
        head = "m" if self.slope == 1 else f"{self.slope}*m"
        if self.offset == 0:
            return head
        return f"{head}{self.offset:+d}"


def _grlex_key(exps: Exponents) -> tuple:
    # graded lex, descending: higher total degree first, then lexicographically
    # larger exponent vectors first
    return (-sum(exps), tuple(-e for e in exps))


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial over named variables."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(
        self,
        variables: Iterable[str],
        terms: Mapping[Exponents, Fraction | int] | None = None,
    ) -> None:
        vars_t = tuple(variables)
        if len(set(vars_t)) != len(vars_t):
            raise ValueError(f"duplicate variable names in {vars_t}")
        stored: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(exps)
            if len(key) != len(vars_t):
                raise VariableMismatch(
                    f"exponent vector {key} does not fit variables {vars_t}"
                )
            if not all(isinstance(e, int) for e in key):
                raise ValueError(f"non-integer exponent in {key}")
            c = Fraction(coeff)
            if c != 0:
                stored[key] = stored.get(key, Fraction(0)) + c
                if stored[key] == 0:
                    del stored[key]
        object.__setattr__(self, "_vars", vars_t)
        object.__setattr__(self, "_terms", stored)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "LaurentPolynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Iterable[str], value: Fraction | int) -> "LaurentPolynomial":
        vars_t = tuple(variables)
        return cls(vars_t, {(0,) * len(vars_t): Fraction(value)})

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> "LaurentPolynomial":
        vars_t = tuple(variables)
        if name not in vars_t:
            raise UnknownVariable(f"{name!r} not among {vars_t}")
        exps = tuple(1 if v == name else 0 for v in vars_t)
        return cls(vars_t, {exps: 1})

    @classmethod
    def monomial(
        cls,
        variables: Iterable[str],
        exponents: Mapping[str, int],
        coeff: Fraction | int = 1,
    ) -> "LaurentPolynomial":
        vars_t = tuple(variables)
        for name in exponents:
            if name not in vars_t:
                raise UnknownVariable(f"{name!r} not among {vars_t}")
        exps = tuple(exponents.get(v, 0) for v in vars_t)
        return cls(vars_t, {exps: coeff})

    # -- queries -----------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Exponents) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int | None:
        """Maximal term degree (sum of exponents); None for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: str) -> int | None:
        i = self._index(var)
        if not self._terms:
            return None
        return max(e[i] for e in self._terms)

    def low_degree_in(self, var: str) -> int | None:
        i = self._index(var)
        if not self._terms:
            return None
        return min(e[i] for e in self._terms)

    def is_polynomial(self) -> bool:
        """True iff no term carries a negative exponent."""
        return all(all(e >= 0 for e in exps) for exps in self._terms)

    def _index(self, var: str) -> int:
        try:
            return self._vars.index(var)
        except ValueError:
            raise UnknownVariable(f"{var!r} not among {self._vars}") from None

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial | None":
        if isinstance(other, LaurentPolynomial):
            if other._vars != self._vars:
                raise VariableMismatch(
                    f"variable lists differ: {self._vars} vs {other._vars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self._vars, other)
        return None

    def __add__(self, other) -> "LaurentPolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for exps, c in rhs._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + c
        return LaurentPolynomial(self._vars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "LaurentPolynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return LaurentPolynomial(
                self._vars, {e: c * v for e, v in self._terms.items()}
            )
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return LaurentPolynomial(self._vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are defined for monomials only")
            ((exps, coeff),) = self._terms.items()
            return LaurentPolynomial(
                self._vars, {tuple(n * e for e in exps): Fraction(1) / coeff ** (-n)}
            )
        result = LaurentPolynomial.constant(self._vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- chart operations --------------------------------------------------

    def restrict_var(self, var: str) -> "LaurentPolynomial":
        """Substitute var = 0; the result lives in the remaining variables.

        Raises NegativeExponentAtRestriction if any term has a pole in var,
        i.e. if the coefficient function is not holomorphic across the locus
        being restricted to.
        """
        i = self._index(var)
        new_vars = self._vars[:i] + self._vars[i + 1 :]
        out: dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            e = exps[i]
            if e < 0:
                raise NegativeExponentAtRestriction(
                    f"term with {var}^{e} cannot be restricted to {var}=0"
                )
            if e == 0:
                out[exps[:i] + exps[i + 1 :]] = c
        return LaurentPolynomial(new_vars, out)

    def swap_vars(self, a: str, b: str) -> "LaurentPolynomial":
        """Exchange the exponents of variables a and b in every term."""
        i, j = self._index(a), self._index(b)
        out: dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            e = list(exps)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return LaurentPolynomial(self._vars, out)

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPolynomial":
        """Rename variables (the explicit chart-crossing operation)."""
        for old in mapping:
            if old not in self._vars:
                raise UnknownVariable(f"{old!r} not among {self._vars}")
        new_vars = tuple(mapping.get(v, v) for v in self._vars)
        return LaurentPolynomial(new_vars, self._terms)

    def with_variables(self, variables: Iterable[str]) -> "LaurentPolynomial":
        """Reinterpret over a larger variable list containing the current one."""
        new_vars = tuple(variables)
        positions = []
        for v in self._vars:
            if v not in new_vars:
                raise UnknownVariable(f"{v!r} not among {new_vars}")
            positions.append(new_vars.index(v))
        out: dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            vec = [0] * len(new_vars)
            for pos, e in zip(positions, exps):
                vec[pos] = e
            out[tuple(vec)] = c
        return LaurentPolynomial(new_vars, out)

    def substitute_monomials(
        self,
        variables: Iterable[str],
        images: Mapping[str, tuple[Fraction | int, Mapping[str, int]]],
    ) -> "LaurentPolynomial":
        """Substitute every variable by a scalar multiple of a monomial.

        ``images`` maps each current variable to ``(coeff, exponents)`` over
        the new variable list.  Monomial images keep negative exponents
        meaningful, which is what the chart-to-chart coordinate changes
        need (e.g. u -> s^2 or v -> u^-1*w^2).
        """
        new_vars = tuple(variables)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError(f"duplicate variable names in {new_vars}")
        aligned: list[tuple[Fraction, Exponents]] = []
        for v in self._vars:
            if v not in images:
                raise UnknownVariable(f"no image given for {v!r}")
            coeff, exp_map = images[v]
            c = Fraction(coeff)
            if c == 0:
                raise ValueError(f"image of {v!r} must be a nonzero monomial")
            for name in exp_map:
                if name not in new_vars:
                    raise UnknownVariable(f"{name!r} not among {new_vars}")
            aligned.append((c, tuple(exp_map.get(w, 0) for w in new_vars)))
        out: dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            scale = c
            vec = [0] * len(new_vars)
            for e, (ic, ivec) in zip(exps, aligned):
                if e == 0:
                    continue
                scale *= ic ** e
                for k, iv in enumerate(ivec):
                    vec[k] += e * iv
            key = tuple(vec)
            out[key] = out.get(key, Fraction(0)) + scale
        return LaurentPolynomial(new_vars, out)

    # -- equality, hashing, printing ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self._vars, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            h = hash((self._vars, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exps in sorted(self._terms, key=_grlex_key):
            c = self._terms[exps]
            factors = [
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self._vars, exps)
                if e != 0
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._vars!r}, {self!s})"


_TOKEN = re.compile(
    r"(?P<rat>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^])"
)


class _Tokens:
    def __init__(self, src: str) -> None:
        self.src = src
        self.pos = 0
        self._skip_ws()

    def _skip_ws(self) -> None:
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> tuple[str, str] | None:
        if self.pos >= len(self.src):
            return None
        m = _TOKEN.match(self.src, self.pos)
        if m is None:
            raise ParseError(f"unexpected character {self.src[self.pos]!r}", self.pos)
        kind = m.lastgroup or ""
        return kind, m.group()

    def take(self) -> tuple[str, str] | None:
        tok = self.peek()
        if tok is not None:
            self.pos += len(tok[1])
            self._skip_ws()
        return tok


def parse_polynomial(src: str, variables: Iterable[str]) -> LaurentPolynomial:
    """Parse the textual polynomial syntax over the given variable list."""
    vars_t = tuple(variables)
    toks = _Tokens(src)
    terms: dict[Exponents, Fraction] = {}

    def parse_factor() -> tuple[Fraction, dict[str, int]]:
        tok = toks.peek()
        if tok is None:
            raise ParseError("expected a factor", toks.pos)
        kind, text = tok
        if kind == "rat":
            toks.take()
            if "/" in text:
                num, den = text.split("/")
                if int(den) == 0:
                    raise ParseError("zero denominator", toks.pos)
                return Fraction(int(num), int(den)), {}
            return Fraction(int(text)), {}
        if kind == "name":
            toks.take()
            if text not in vars_t:
                raise UnknownVariable(
                    f"{text!r} not among {vars_t} (at position {toks.pos})"
                )
            exp = 1
            nxt = toks.peek()
            if nxt is not None and nxt[1] == "^":
                toks.take()
                sign = 1
                nxt = toks.peek()
                if nxt is not None and nxt[1] == "-":
                    toks.take()
                    sign = -1
                nxt = toks.peek()
                if nxt is None or nxt[0] != "rat" or "/" in nxt[1]:
                    raise ParseError("expected an integer exponent", toks.pos)
                toks.take()
                exp = sign * int(nxt[1])
            return Fraction(1), {text: exp}
        raise ParseError(f"unexpected {text!r}", toks.pos)

    def parse_term() -> tuple[Fraction, Exponents]:
        coeff, exps = parse_factor()
        acc = dict(exps)
        while True:
            tok = toks.peek()
            if tok is None or tok[1] != "*":
                break
            toks.take()
            c2, e2 = parse_factor()
            coeff *= c2
            for v, e in e2.items():
                acc[v] = acc.get(v, 0) + e
        return coeff, tuple(acc.get(v, 0) for v in vars_t)

    sign = Fraction(1)
    tok = toks.peek()
    if tok is not None and tok[1] in "+-":
        toks.take()
        if tok[1] == "-":
            sign = Fraction(-1)
    while True:
        coeff, exps = parse_term()
        coeff *= sign
        terms[exps] = terms.get(exps, Fraction(0)) + coeff
        tok = toks.peek()
        if tok is None:
            break
        if tok[1] not in "+-":
            raise ParseError(f"expected '+' or '-', got {tok[1]!r}", toks.pos)
        toks.take()
        sign = Fraction(1) if tok[1] == "+" else Fraction(-1)
    return LaurentPolynomial(vars_t, terms)
