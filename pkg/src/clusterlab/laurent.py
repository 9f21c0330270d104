"""Exact Laurent polynomials in cluster variables x1..xn over ZP = Z[z1^±..zm^±].

Every monomial carries ``n`` x-exponents followed by ``m`` z-exponents, all
possibly negative.  Coefficients are Python integers.
"""

from __future__ import annotations

import re
from typing import Iterator, Mapping

from .semifield import DimensionError, GroundRing, TropMonomial, in_ground_ring

Exps = tuple[int, ...]


class NotDivisible(ArithmeticError):
    """No exact Laurent quotient exists."""


class LaurentPoly:
    __slots__ = ("n", "m", "terms", "_hash")

    def __init__(self, n: int, m: int, terms: Mapping[Exps, int] | None = None):
        self.n = n
        self.m = m
        clean: dict[Exps, int] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != n + m:
                raise DimensionError(f"term {key} does not have {n}+{m} exponents")
            if c:
                clean[key] = clean.get(key, 0) + int(c)
                if not clean[key]:
                    del clean[key]
        self.terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, n: int, m: int, terms: dict[Exps, int]) -> LaurentPoly:
        # terms already normalized
        obj = cls.__new__(cls)
        obj.n, obj.m, obj.terms, obj._hash = n, m, terms, None
        return obj

    @classmethod
    def zero(cls, n: int, m: int) -> LaurentPoly:
        return cls._raw(n, m, {})

    @classmethod
    def constant(cls, c: int, n: int, m: int) -> LaurentPoly:
        return cls._raw(n, m, {(0,) * (n + m): c} if c else {})

    @classmethod
    def variable(cls, i: int, n: int, m: int) -> LaurentPoly:
        """The cluster variable ``x_{i+1}``."""
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        key = tuple(1 if j == i else 0 for j in range(n + m))
        return cls._raw(n, m, {key: 1})

    @classmethod
    def monomial(cls, x_exps: Exps, z_exps: Exps, coeff: int = 1) -> LaurentPoly:
        n, m = len(x_exps), len(z_exps)
        return cls(n, m, {tuple(x_exps) + tuple(z_exps): coeff})

    @classmethod
    def from_trop(cls, a: TropMonomial, n: int) -> LaurentPoly:
        return cls._raw(n, a.m, {(0,) * n + a.exps: 1})

    # -- structure -------------------------------------------------------

    def _check(self, other: LaurentPoly) -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionError(
                f"dimensions differ: (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})"
            )

    def _coerce(self, other: object) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.n, self.m)
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Exps, int]]:
        return iter(sorted(self.terms.items(), key=lambda kv: term_key(kv[0], self.n), reverse=True))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.n, self.m)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.m, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly._raw(self.n, self.m, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.n, self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exps, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return LaurentPoly._raw(self.n, self.m, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly:
        if e < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            (key, c), = self.terms.items()
            if c not in (1, -1):
                raise NotDivisible("negative power of a non-unit coefficient")
            return LaurentPoly._raw(
                self.n, self.m, {tuple(a * e for a in key): c ** (-e)}
            )
        result = LaurentPoly.constant(1, self.n, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, key: Exps) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``key``."""
        return LaurentPoly._raw(
            self.n,
            self.m,
            {tuple(a + b for a, b in zip(k, key)): c for k, c in self.terms.items()},
        )

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        return lp_exact_div(self, other)

    def __truediv__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return lp_exact_div(self, other)

    # -- inspection ------------------------------------------------------

    def z_exponents(self) -> set[Exps]:
        return {k[self.n:] for k in self.terms}

    def extend_generators(self, extra: int) -> LaurentPoly:
        """Re-home into ``m + extra`` generators (new exponents zero)."""
        pad = (0,) * extra
        return LaurentPoly._raw(self.n, self.m + extra, {k + pad: c for k, c in self.terms.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({render_poly(self)!r}, n={self.n}, m={self.m})"

    def __str__(self) -> str:
        return render_poly(self)


def term_key(key: Exps, n: int) -> tuple:
    """Graded-lex on x-exponents, ties broken graded-lex on z-exponents."""
    x, z = key[:n], key[n:]
    return (sum(x), x, sum(z), z)


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def lp_exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``q * r == p``, or raise :class:`NotDivisible`.

    Both operands are first shifted by monomials (units of the Laurent ring)
    so that every variable has minimum exponent zero.  The shifted divisor is
    then not divisible by any variable, so Laurent divisibility coincides
    with polynomial divisibility of the shifted operands, which single-divisor
    leading-term elimination decides.
    """
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if p.is_zero():
        return p
    n, width = p.n, p.n + p.m
    qmin = tuple(min(k[i] for k in q.terms) for i in range(width))
    pmin = tuple(min(k[i] for k in p.terms) for i in range(width))
    qs = q.shift(tuple(-a for a in qmin))
    rem = dict(p.shift(tuple(-a for a in pmin)).terms)

    lead_q = max(qs.terms, key=lambda k: term_key(k, n))
    lead_c = qs.terms[lead_q]
    rest_q = [(k, c) for k, c in qs.terms.items() if k != lead_q]
    quotient: dict[Exps, int] = {}
    while rem:
        lead_r = max(rem, key=lambda k: term_key(k, n))
        c = rem[lead_r]
        if c % lead_c:
            raise NotDivisible("leading coefficient does not divide")
        t = tuple(a - b for a, b in zip(lead_r, lead_q))
        if any(e < 0 for e in t):
            raise NotDivisible("leading monomial does not divide")
        f = c // lead_c
        quotient[t] = f
        del rem[lead_r]
        for k, cq in rest_q:
            key = tuple(a + b for a, b in zip(k, t))
            s = rem.get(key, 0) - f * cq
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    offset = tuple(a - b for a, b in zip(pmin, qmin))
    return LaurentPoly._raw(p.n, p.m, quotient).shift(offset)


def coeffs_in_ring(p: LaurentPoly, r: GroundRing) -> bool:
    return all(in_ground_ring(TropMonomial(z), r) for z in p.z_exponents())


def substitute(p: LaurentPoly, images: list[LaurentPoly]) -> LaurentPoly:
    """Replace ``x_i`` by ``images[i]``; z-exponents pass through unchanged.

    Negative x-powers are cleared by a single exact division at the end, so
    :class:`NotDivisible` signals that the result is not a Laurent polynomial.
    """
    if len(images) != p.n:
        raise DimensionError("need one image per cluster variable")
    if not images:
        return p
    n2, m = images[0].n, images[0].m
    if m != p.m or any((im.n, im.m) != (n2, m) for im in images):
        raise DimensionError("images must share dimensions and keep m")
    if p.is_zero():
        return LaurentPoly.zero(n2, m)
    # common denominator: prod images[i]^{max(0, -min exponent)}
    den_pows = [max(0, -min(k[i] for k in p.terms)) for i in range(p.n)]
    cache: dict[tuple[int, int], LaurentPoly] = {}

    def power(i: int, e: int) -> LaurentPoly:
        if (i, e) not in cache:
            cache[(i, e)] = images[i] ** e
        return cache[(i, e)]

    num = LaurentPoly.zero(n2, m)
    for key, c in p.terms.items():
        term = LaurentPoly._raw(n2, m, {(0,) * n2 + key[p.n:]: c})
        for i in range(p.n):
            e = key[i] + den_pows[i]
            if e:
                term = term * power(i, e)
        num = num + term
    den = LaurentPoly.constant(1, n2, m)
    for i, e in enumerate(den_pows):
        if e:
            den = den * power(i, e)
    return lp_exact_div(num, den)


# -- text format -------------------------------------------------------------


def _render_monomial(key: Exps, n: int) -> str:
    parts = []
    for i, e in enumerate(key):
        if e == 0:
            continue
        name = f"x{i + 1}" if i < n else f"z{i - n + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def render_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (key, c) in enumerate(p):
        mono = _render_monomial(key, p.n)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_VAR = re.compile(r"([xz])(\d+)(?:\^(-?\d+))?")


def _split_terms(text: str) -> list[tuple[int, str]]:
    # signs between terms are separated by whitespace; signs inside exponents are not
    tokens = text.split()
    terms: list[tuple[int, str]] = []
    sign = 1
    for tok in tokens:
        if tok in ("+", "-"):
            sign = -1 if tok == "-" else 1
            continue
        if tok.startswith("-") and not terms and sign == 1:
            sign, tok = -1, tok[1:]
        terms.append((sign, tok))
        sign = 1
    return terms


def parse_poly(text: str, n: int, m: int) -> LaurentPoly:
    """Inverse of :func:`render_poly`."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(n, m)
    terms: dict[Exps, int] = {}
    for sign, tok in _split_terms(text):
        coeff = 1
        key = [0] * (n + m)
        for factor in tok.split("*"):
            if re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
                continue
            match = _VAR.fullmatch(factor)
            if not match:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            idx = int(match.group(2)) - 1
            bound = n if match.group(1) == "x" else m
            if not 0 <= idx < bound:
                raise DimensionError(f"{factor!r} out of range (n={n}, m={m})")
            pos = idx if match.group(1) == "x" else n + idx
            key[pos] += int(match.group(3)) if match.group(3) is not None else 1
        k = tuple(key)
        terms[k] = terms.get(k, 0) + sign * coeff
    return LaurentPoly(n, m, terms)
