"""Sparse multivariate polynomials over the integers.

A :class:`Polynomial` lives in Z[x1, ..., xn]; ``n`` is fixed at construction
and variables are identified by position.  Terms are stored in a dict keyed by
exponent tuples, so storage order carries no meaning: every ordered view is
produced by sorting under a :class:`MonomialOrder`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Graded lexicographic order.

    ``priority`` lists 0-based variable indices from most to least
    significant; ties in total degree are broken lexicographically along it.
    """

    priority: Tuple[int, ...]

    @classmethod
    def grlex(cls, nvars: int) -> "MonomialOrder":
        return cls(tuple(range(nvars)))

    @classmethod
    def from_variables(cls, variables: Sequence[int]) -> "MonomialOrder":
        """Build from 1-based variable numbers, highest priority first."""
        return cls(tuple(v - 1 for v in variables))

    def __post_init__(self):
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError(f"priority {self.priority} is not a permutation")

    @property
    def nvars(self) -> int:
        return len(self.priority)

    def key(self, mono: Monomial) -> tuple:
        return (sum(mono),) + tuple(mono[p] for p in self.priority)

    def compare(self, a: Monomial, b: Monomial) -> int:
        """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
        if len(a) != len(b) or len(a) != self.nvars:
            raise RingMismatch("monomials from different rings")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class Term:
    coefficient: int
    monomial: Monomial


class Polynomial:
    """Immutable polynomial in Z[x1..xn] in canonical (zero-free) form."""

    __slots__ = ("nvars", "_terms", "_hash", "_lead_cache")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, int]] = None):
        self.nvars = nvars
        clean: Dict[Monomial, int] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise RingMismatch(f"monomial {mono} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None
        self._lead_cache = {}

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, int]) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        p._lead_cache = {}
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: int) -> "Polynomial":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, index: int, power: int = 1) -> "Polynomial":
        """The polynomial ``x_index ** power`` (``index`` is 1-based)."""
        if not 1 <= index <= nvars:
            raise RingMismatch(f"x{index} is not a variable of a {nvars}-variable ring")
        e = [0] * nvars
        e[index - 1] = power
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, nvars: int, mono: Monomial, c: int = 1) -> "Polynomial":
        return cls(nvars, {tuple(mono): c})

    # views --------------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_value(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(tuple(mono), 0)

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def variables(self) -> set:
        """1-based indices of variables that occur."""
        out = set()
        for m in self._terms:
            out.update(i + 1 for i, e in enumerate(m) if e)
        return out

    # ordering -----------------------------------------------------------
    def leading(self, order: MonomialOrder) -> Term:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        t = self._lead_cache.get(order)
        if t is None:
            mono = max(self._terms, key=order.key)
            t = Term(self._terms[mono], mono)
            self._lead_cache[order] = t
        return t

    def lm(self, order: MonomialOrder) -> Monomial:
        return self.leading(order).monomial

    def lc(self, order: MonomialOrder) -> int:
        return self.leading(order).coefficient

    def sorted_terms(self, order: MonomialOrder):
        return sorted(self._terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise RingMismatch(f"{self.nvars}-variable vs {other.nvars}-variable polynomial")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) > len(other._terms):
            a, b = self._terms, other._terms
        else:
            a, b = other._terms, self._terms
        out: Dict[Monomial, int] = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: c * v for m, v in self._terms.items()})

    def mul_term(self, c: int, mono: Monomial) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            self.nvars, {tuple(x + y for x, y in zip(m, mono)): c * v for m, v in self._terms.items()}
        )

    def exact_div_int(self, c: int) -> "Polynomial":
        out = {}
        for m, v in self._terms.items():
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError(f"{c} does not divide {self}")
            out[m] = q
        return Polynomial._raw(self.nvars, out)

    def exact_div(self, other: "Polynomial", order: Optional[MonomialOrder] = None) -> "Polynomial":
        """Quotient of an exact division in Z[X]; raises if ``other`` does not divide."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        order = order or MonomialOrder.grlex(self.nvars)
        lt = other.leading(order)
        rem = dict(self._terms)
        quot: Dict[Monomial, int] = {}
        while rem:
            mono = max(rem, key=order.key)
            c = rem[mono]
            if not mono_divides(lt.monomial, mono) or c % lt.coefficient:
                raise ArithmeticError("inexact polynomial division")
            qm = mono_div(mono, lt.monomial)
            qc = c // lt.coefficient
            quot[qm] = qc
            for m, v in other._terms.items():
                mm = tuple(x + y for x, y in zip(m, qm))
                nv = rem.get(mm, 0) - qc * v
                if nv:
                    rem[mm] = nv
                else:
                    del rem[mm]
        return Polynomial._raw(self.nvars, quot)

    # equality -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == (Polynomial.constant(self.nvars, other)._terms)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # homomorphisms ------------------------------------------------------
    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise RingMismatch(f"point of length {len(point)} for {self.nvars} variables")
        total = 0
        for mono, c in self._terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= x**e
            total += v
        return total

    def substitute(self, assignment: Mapping[int, "Polynomial | int"], nvars: Optional[int] = None) -> "Polynomial":
        """Apply the ring map ``x_i -> assignment[i]`` (1-based keys).

        Unassigned variables map to themselves, which requires the target ring
        to have at least as many variables as they need.  Pass ``nvars`` to
        land in a different ring (for instance the one-variable ring of t).
        """
        for i in assignment:
            if not 1 <= i <= self.nvars:
                raise RingMismatch(f"x{i} is not a variable of a {self.nvars}-variable ring")
        target = self.nvars if nvars is None else nvars
        images = []
        for i in range(1, self.nvars + 1):
            if i in assignment:
                img = assignment[i]
                if isinstance(img, int):
                    img = Polynomial.constant(target, img)
                elif img.nvars != target:
                    raise RingMismatch(f"image of x{i} lives in a {img.nvars}-variable ring")
            else:
                img = None
            images.append(img)
        result: Dict[Monomial, int] = {}
        powers: Dict[Tuple[int, int], Polynomial] = {}
        for mono, c in self._terms.items():
            acc = Polynomial.constant(target, c)
            keep = [0] * target
            for i, e in enumerate(mono):
                if not e:
                    continue
                img = images[i]
                if img is None:
                    if i >= target:
                        raise RingMismatch(f"x{i + 1} has no image in a {target}-variable ring")
                    keep[i] += e
                else:
                    pw = powers.get((i, e))
                    if pw is None:
                        pw = img**e
                        powers[(i, e)] = pw
                    acc = acc * pw
            if any(keep):
                acc = acc.mul_term(1, tuple(keep))
            for m, v in acc._terms.items():
                result[m] = result.get(m, 0) + v
        return Polynomial._raw(target, {m: v for m, v in result.items() if v})

    # text ---------------------------------------------------------------
    def to_string(self, order: Optional[MonomialOrder] = None, var: str = "x") -> str:
        return canonical_string(self, order, var)

    def __str__(self):
        return canonical_string(self)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {canonical_string(self)!r})"


def _mono_str(mono: Monomial, var: str, nvars: int) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 0:
            continue
        name = var if (var == "t" and nvars == 1) else f"{var}{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def canonical_string(p: Polynomial, order: Optional[MonomialOrder] = None, var: str = "x") -> str:
    """Render ``p`` with terms in descending ``order`` (default: standard grlex).

    The format is ``c*x1^2*x3 - x2 + 5``: ``^1`` and unit coefficients are
    elided except on constants; the zero polynomial renders as ``0``.
    """
    if p.is_zero():
        return "0"
    order = order or MonomialOrder.grlex(p.nvars)
    out = []
    for k, (mono, c) in enumerate(p.sorted_terms(order)):
        body = _mono_str(mono, var, p.nvars)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if k == 0:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*?)(\d*)(?:\^(\d+))?|(\*\*|[-+*^()]))")


def parse_polynomial(text: str, nvars: int, var: str = "x") -> Polynomial:
    """Parse the text format produced by :func:`canonical_string`.

    Also accepts parentheses, ``**`` for powers and implicit products
    separated by whitespace, which is convenient for transcribing
    hand-written polynomials.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        num, name, idx, powr, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            if name == var and not idx and nvars == 1:
                i = 1
            elif name == var and idx:
                i = int(idx)
            else:
                raise ValueError(f"unknown variable {name}{idx}")
            p = Polynomial.var(nvars, i)
            if powr:
                p = p ** int(powr)
            tokens.append(("poly", p))
        else:
            tokens.append(("op", "^" if op == "**" else op))

    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def expr():
        nonlocal pos
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            pos += 1
        acc = term().scale(sign)
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                pos += 1
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term():
        nonlocal pos
        acc = power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                pos += 1
                acc = acc * power()
            elif kind in ("num", "poly") or (kind == "op" and val == "("):
                acc = acc * power()
            else:
                return acc

    def power():
        nonlocal pos
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            pos += 1
            k, e = peek()
            if k != "num":
                raise ValueError("exponent must be an integer")
            pos += 1
            base = base**e
        return base

    def atom():
        nonlocal pos
        kind, val = peek()
        pos += 1
        if kind == "num":
            return Polynomial.constant(nvars, val)
        if kind == "poly":
            return val
        if kind == "op" and val == "(":
            inner = expr()
            k, v = peek()
            if (k, v) != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            pos += 1
            return inner
        if kind == "op" and val == "-":
            return -atom()
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def prod(polys: Iterable[Polynomial], nvars: int) -> Polynomial:
    acc = Polynomial.constant(nvars, 1)
    for p in polys:
        acc = acc * p
    return acc


def variables(nvars: int):
    """Tuple ``(x1, ..., xn)`` of the ring's generators."""
    return tuple(Polynomial.var(nvars, i) for i in range(1, nvars + 1))
