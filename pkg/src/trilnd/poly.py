"""Sparse multivariate polynomials over Q(i) on trinomial generator alphabets.

Generators are plain tuples: ("T", i, j) is variable j of block i and
("S", k) is the k-th free variable. A Monomial is an immutable sparse
exponent map, a Poly maps monomials to nonzero GaussianRational
coefficients.

The monomial order used everywhere is block order: any T beats any S,
higher block index beats lower, and inside one block the variable with
the smaller j is the more significant one (plain lexicographic reading).
Free variables compare by index, smaller k more significant. Under this
order the highest-index block monomial of each defining relation is the
lead term.
"""

from __future__ import annotations

import re as _re
from typing import Iterable, Mapping, Tuple, Union

from .gaussian import ONE, ZERO, GaussianRational, ScalarParseError, gq, gq_format, gq_parse

Gen = Tuple


class UnknownGenerator(ValueError):
    """A generator name outside the allowed alphabet."""


class PolyParseError(ValueError):
    """Raised when polynomial text cannot be parsed."""


class NotDivisible(ValueError):
    """exact_divide was asked for a quotient that does not exist."""


def tvar(i: int, j: int) -> Gen:
    return ("T", i, j)


def svar(k: int) -> Gen:
    return ("S", k)


def gen_name(g: Gen) -> str:
    if g[0] == "T":
        return f"T{g[1]}_{g[2]}"
    return f"S{g[1]}"


_GEN_RE = _re.compile(r"^(?:T(\d+)_(\d+)|S(\d+))$")


def parse_gen_name(name: str) -> Gen:
    m = _GEN_RE.match(name)
    if not m:
        raise UnknownGenerator(f"bad generator name: {name!r}")
    if m.group(1) is not None:
        return tvar(int(m.group(1)), int(m.group(2)))
    return svar(int(m.group(3)))


def gen_significance(g: Gen):
    """Sort key, larger means more significant in the monomial order."""
    if g[0] == "T":
        return (1, g[1], -g[2])
    return (0, -g[1])


class Monomial:
    """An immutable sparse exponent vector, hashable and totally ordered."""

    __slots__ = ("_pairs", "_key", "_hash")

    def __init__(self, exps: Union[Mapping[Gen, int], Iterable[Tuple[Gen, int]]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: dict = {}
        for g, e in items:
            if e:
                merged[g] = merged.get(g, 0) + e
        for g, e in merged.items():
            if e < 0:
                raise ValueError(f"negative exponent for {gen_name(g)}")
        pairs = tuple(
            sorted(
                ((g, e) for g, e in merged.items() if e),
                key=lambda it: gen_significance(it[0]),
                reverse=True,
            )
        )
        self._pairs = pairs
        self._key = tuple((gen_significance(g), e) for g, e in pairs)
        self._hash = hash(pairs)

    @property
    def pairs(self) -> tuple:
        return self._pairs

    def degree(self) -> int:
        return sum(e for _, e in self._pairs)

    def exponent(self, g: Gen) -> int:
        for gen, e in self._pairs:
            if gen == g:
                return e
        return 0

    def variables(self) -> tuple:
        return tuple(g for g, _ in self._pairs)

    def is_one(self) -> bool:
        return not self._pairs

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other._pairs:
            return self
        d = dict(self._pairs)
        for g, e in other._pairs:
            d[g] = d.get(g, 0) + e
        return Monomial(d)

    def __pow__(self, n: int) -> "Monomial":
        if n < 0:
            raise ValueError("negative monomial power")
        return Monomial(tuple((g, e * n) for g, e in self._pairs))

    def divides(self, other: "Monomial") -> bool:
        other_map = dict(other._pairs)
        return all(other_map.get(g, 0) >= e for g, e in self._pairs)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        d = dict(self._pairs)
        for g, e in other._pairs:
            d[g] = d.get(g, 0) - e
            if d[g] < 0:
                raise NotDivisible(f"{self} not divisible by {other}")
        return Monomial(d)

    def divisibility_count(self, other: "Monomial") -> int:
        """Largest q such that other^q divides self (other must not be 1)."""
        if not other._pairs:
            raise ValueError("divisibility_count against the unit monomial")
        mine = dict(self._pairs)
        return min(mine.get(g, 0) // e for g, e in other._pairs)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._pairs == other._pairs

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Monomial"):
        return self._key < other._key

    def __le__(self, other: "Monomial"):
        return self._key <= other._key

    def __gt__(self, other: "Monomial"):
        return self._key > other._key

    def __ge__(self, other: "Monomial"):
        return self._key >= other._key

    def __str__(self):
        if not self._pairs:
            return "1"
        out = []
        for g, e in self._pairs:
            out.append(gen_name(g) if e == 1 else f"{gen_name(g)}^{e}")
        return "*".join(out)

    def __repr__(self):
        return f"Monomial({self})"


MONO_ONE = Monomial()


class Poly:
    """A polynomial with exact Gaussian rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Monomial, GaussianRational], Iterable] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for m, c in items:
            if not isinstance(m, Monomial):
                m = Monomial(m)
            if not isinstance(c, GaussianRational):
                c = gq(c)
            if c:
                cur = acc.get(m)
                new = c if cur is None else cur + c
                if new:
                    acc[m] = new
                elif cur is not None:
                    del acc[m]
        self._terms = acc

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def constant(c) -> "Poly":
        return Poly({MONO_ONE: c if isinstance(c, GaussianRational) else gq(c)})

    @staticmethod
    def generator(g: Gen) -> "Poly":
        return Poly({Monomial(((g, 1),)): ONE})

    @staticmethod
    def monomial(m: Monomial, c=ONE) -> "Poly":
        return Poly({m: c})

    @property
    def terms(self) -> dict:
        return self._terms

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, m: Monomial) -> GaussianRational:
        return self._terms.get(m, ZERO)

    def constant_term(self) -> GaussianRational:
        return self._terms.get(MONO_ONE, ZERO)

    def degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        if not self._terms:
            return -1
        return max(m.degree() for m in self._terms)

    def lead_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no lead monomial")
        return max(self._terms)

    def variables(self) -> set:
        out: set = set()
        for m in self._terms:
            out.update(m.variables())
        return out

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self._terms)
        for m, c in other._terms.items():
            cur = d.get(m)
            new = c if cur is None else cur + c
            if new:
                d[m] = new
            elif cur is not None:
                del d[m]
        out = Poly.zero()
        out._terms = d
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.zero()
        out._terms = {m: -c for m, c in self._terms.items()}
        return out

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, GaussianRational)):
            c = other if isinstance(other, GaussianRational) else gq(other)
            if not c:
                return Poly.zero()
            out = Poly.zero()
            out._terms = {m: cc * c for m, cc in self._terms.items()}
            return out
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                c = c1 * c2
                cur = acc.get(m)
                new = c if cur is None else cur + c
                if new:
                    acc[m] = new
                elif cur is not None:
                    del acc[m]
        out = Poly.zero()
        out._terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale_generator(self, g: Gen, factor: GaussianRational) -> "Poly":
        """Substitute g -> factor * g."""
        out: dict = {}
        for m, c in self._terms.items():
            e = m.exponent(g)
            scaled = c * factor**e if e else c
            if scaled:
                out[m] = scaled
        p = Poly.zero()
        p._terms = out
        return p

    def substitute(self, assignment: Mapping[Gen, "Poly"]) -> "Poly":
        """Replace each generator by a polynomial (missing ones stay)."""
        result = Poly.zero()
        for m, c in self._terms.items():
            term = Poly.constant(c)
            for g, e in m.pairs:
                repl = assignment.get(g)
                if repl is None:
                    term = term * Poly.monomial(Monomial(((g, e),)))
                else:
                    term = term * repl**e
            result = result + term
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        return poly_format(self)

    def __repr__(self):
        return f"Poly({poly_format(self)})"


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, GaussianRational)):
        return Poly.constant(value)
    return NotImplemented


def partial_derivative(p: Poly, g: Gen) -> Poly:
    acc: dict = {}
    for m, c in p.terms.items():
        e = m.exponent(g)
        if not e:
            continue
        dm = Monomial(tuple((gg, ee - 1 if gg == g else ee) for gg, ee in m.pairs))
        coeff = c * e
        cur = acc.get(dm)
        new = coeff if cur is None else cur + coeff
        if new:
            acc[dm] = new
        elif cur is not None:
            del acc[dm]
    out = Poly.zero()
    out._terms = acc
    return out


def exact_divide(p: Poly, divisor) -> Poly:
    """Divide by a monomial, or by a single-term polynomial, exactly.

    Raises NotDivisible with a witness term when any term of p is not
    divisible. This is deliberate: callers use it where divisibility is
    a structural guarantee and a failure means a bug upstream.
    """
    if isinstance(divisor, Poly):
        if len(divisor.terms) != 1:
            raise NotDivisible("divisor must be a single term")
        (dm, dc), = divisor.terms.items()
    elif isinstance(divisor, Monomial):
        dm, dc = divisor, ONE
    else:
        raise TypeError("divisor must be a Monomial or single-term Poly")
    if not dc:
        raise ZeroDivisionError("division by zero term")
    acc: dict = {}
    for m, c in p.terms.items():
        if not dm.divides(m):
            raise NotDivisible(f"term {m} of {p} is not divisible by {dm}")
        acc[m / dm] = c / dc
    out = Poly.zero()
    out._terms = acc
    return out


def block_power(blocks, i: int, exponents=None) -> Poly:
    """The monomial T_i^{l_i} as a Poly; exponents defaults to blocks[i]."""
    exps = blocks[i] if exponents is None else exponents
    return Poly.monomial(Monomial(tuple((tvar(i, j + 1), e) for j, e in enumerate(exps))))


def normal_form(p: Poly, rules: Mapping[Monomial, Poly], strategy: str = "block") -> Poly:
    """Reduce p modulo the oriented rules lead -> replacement.

    Rules are expected to have pairwise coprime leads and lead-free
    replacements, which is what presentations produce. The "block"
    strategy divides out the maximal power of each lead per term in one
    pass; "stepwise" performs single-step rewrites to a fixed point.
    Both give the same answer (this is checked property-style in the
    test suite) but block is the fast path.
    """
    if strategy == "block":
        return _nf_block(p, rules)
    if strategy == "stepwise":
        return _nf_stepwise(p, rules)
    raise ValueError(f"unknown strategy {strategy!r}")


def _nf_block(p: Poly, rules: Mapping[Monomial, Poly]) -> Poly:
    result = Poly.zero()
    for m, c in p.terms.items():
        factor = None
        residual = m
        for lead, repl in rules.items():
            q = residual.divisibility_count(lead)
            if q:
                residual = residual / lead**q
                piece = repl**q
                factor = piece if factor is None else factor * piece
        term = Poly.monomial(residual, c)
        if factor is not None:
            term = term * factor
        result = result + term
    return result


def _nf_stepwise(p: Poly, rules: Mapping[Monomial, Poly]) -> Poly:
    current = p
    while True:
        target = None
        for m in current.terms:
            for lead, repl in rules.items():
                if lead.divides(m):
                    target = (m, lead, repl)
                    break
            if target:
                break
        if target is None:
            return current
        m, lead, repl = target
        c = current.coefficient(m)
        current = current - Poly.monomial(m, c) + Poly.monomial(m / lead, c) * repl


def is_reduced(p: Poly, rules: Mapping[Monomial, Poly]) -> bool:
    return all(not lead.divides(m) for m in p.terms for lead in rules)


def poly_format(p: Poly) -> str:
    """Canonical text form: terms in decreasing monomial order.

    Pure real or pure imaginary coefficients print bare (3*x, -2i*x is
    written -2i*x without parentheses only when the coefficient has a
    single part; mixed coefficients like 1+i are parenthesized).
    """
    if p.is_zero():
        return "0"
    chunks = []
    for m, c in p.sorted_terms():
        cs = gq_format(c)
        needs_paren = ("+" in cs[1:]) or ("-" in cs[1:])
        if m.is_one():
            body = f"({cs})" if needs_paren else cs
        elif c == ONE:
            body = str(m)
        elif c == -ONE:
            body = f"-{m}"
        elif needs_paren:
            body = f"({cs})*{m}"
        else:
            body = f"{cs}*{m}"
        if not chunks:
            chunks.append(body)
        elif body.startswith("-"):
            chunks.append(" - " + body[1:])
        else:
            chunks.append(" + " + body)
    return "".join(chunks)


def poly_parse(text: str, allowed: Iterable[Gen] = None) -> Poly:
    """Parse polynomial text: terms joined by + or -, factors by '*'.

    A factor is a parenthesized scalar, a bare scalar, or a generator
    name with an optional ^exponent. Whitespace is free between tokens.
    When ``allowed`` is given, generator names outside it raise
    UnknownGenerator.
    """
    allowed_set = set(allowed) if allowed is not None else None
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial text")
    terms = _split_terms(s)
    result = Poly.zero()
    for sign, chunk in terms:
        result = result + _parse_term(chunk, allowed_set) * sign
    return result


def _split_terms(s: str):
    terms = []
    depth = 0
    sign = 1
    current = []
    i = 0
    # leading sign
    while i < len(s) and s[i] in "+- \t":
        if s[i] == "-":
            sign = -sign
        i += 1
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
            current.append(ch)
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise PolyParseError("unbalanced parentheses")
            current.append(ch)
        elif ch in "+-" and depth == 0:
            prev = "".join(current).rstrip()
            if prev and prev[-1] in "*^/":
                current.append(ch)
            else:
                if not prev:
                    raise PolyParseError("empty term")
                terms.append((sign, prev))
                sign = 1 if ch == "+" else -1
                current = []
        else:
            current.append(ch)
        i += 1
    if depth:
        raise PolyParseError("unbalanced parentheses")
    last = "".join(current).strip()
    if not last:
        raise PolyParseError("dangling sign")
    terms.append((sign, last))
    return terms


def _parse_term(chunk: str, allowed_set) -> Poly:
    factors = [f.strip() for f in chunk.split("*")]
    coeff = ONE
    exps: dict = {}
    for f in factors:
        if not f:
            raise PolyParseError(f"empty factor in {chunk!r}")
        if f.startswith("("):
            if not f.endswith(")"):
                raise PolyParseError(f"bad parenthesized scalar {f!r}")
            coeff = coeff * gq_parse(f[1:-1])
            continue
        if f[0] in "0123456789i" or f[0] in "+-":
            try:
                coeff = coeff * gq_parse(f)
            except ScalarParseError as exc:
                raise PolyParseError(str(exc)) from None
            continue
        name, _, exp_text = f.partition("^")
        g = parse_gen_name(name.strip())
        if allowed_set is not None and g not in allowed_set:
            raise UnknownGenerator(f"generator {name.strip()} not in this presentation")
        if exp_text:
            try:
                e = int(exp_text)
            except ValueError:
                raise PolyParseError(f"bad exponent in {f!r}") from None
            if e < 0:
                raise PolyParseError("negative exponent")
        else:
            e = 1
        exps[g] = exps.get(g, 0) + e
    return Poly.monomial(Monomial(exps), coeff)
