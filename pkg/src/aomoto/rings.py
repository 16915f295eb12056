"""Coefficient rings with exact arithmetic.

Supported: the integers ``Z``, the rationals ``Q``, residues ``Z/m``, prime
fields ``F_p`` and cyclotomic fields ``Q(zeta_n)``.  Integers and rationals are
represented by plain ``int`` and ``Fraction`` values; residues and cyclotomic
numbers get small immutable element classes so that ``+``, ``*`` and ``/``
work uniformly in the linear algebra code.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Sequence

from sympy import factorint, isprime


class RingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# residues


class ModInt:
    __slots__ = ("v", "m")

    def __init__(self, v: int, m: int):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "v", v % m)

    def __setattr__(self, name, value):
        raise AttributeError("ModInt is immutable")

    def _coerce(self, other) -> int | None:
        if isinstance(other, ModInt):
            if other.m != self.m:
                raise RingError(f"moduli differ: {self.m} vs {other.m}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction) and other.denominator == 1:
            return other.numerator
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(self.v + o, self.m)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(self.v - o, self.m)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(o - self.v, self.m)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(self.v * o, self.m)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.m)

    def inverse(self) -> ModInt:
        if gcd(self.v, self.m) != 1:
            raise ZeroDivisionError(f"{self.v} is not invertible mod {self.m}")
        return ModInt(pow(self.v, -1, self.m), self.m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * ModInt(o, self.m).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(o, self.m) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ModInt(pow(self.v, e, self.m), self.m)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.m == 0

    def __hash__(self):
        return hash((self.v, self.m))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModInt({self.v}, {self.m})"

    def __str__(self):
        return str(self.v)


# ---------------------------------------------------------------------------
# cyclotomic fields


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Long division of coefficient lists (lowest degree first)."""
    rem = [Fraction(c) for c in p]
    _poly_trim(rem)
    q = list(q)
    _poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(rem) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(rem) >= len(q):
        shift = len(rem) - len(q)
        c = rem[-1] / lead
        quo[shift] = c
        for i, b in enumerate(q):
            rem[shift + i] -= c * b
        rem.pop()
        _poly_trim(rem)
    return quo, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first.

    Computed by dividing x^n - 1 by every proper cyclotomic factor.
    """
    if n < 1:
        raise RingError("cyclotomic order must be >= 1")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            quo, rem = _poly_divmod(p, cyclotomic_polynomial(d))
            assert not rem
            p = quo
    assert all(c.denominator == 1 for c in p)
    return tuple(int(c) for c in p)


class Cyclo:
    """Element of Q(zeta_n) as a coefficient vector modulo Phi_n."""

    __slots__ = ("c", "n")

    def __init__(self, coeffs: Sequence, n: int):
        phi = cyclotomic_polynomial(n)
        deg = len(phi) - 1
        coeffs = [Fraction(x) for x in coeffs]
        if len(coeffs) > deg:
            _, coeffs = _poly_divmod(coeffs, phi)
        coeffs = list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
        object.__setattr__(self, "c", tuple(coeffs))
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclo is immutable")

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> Cyclo:
        k %= n
        return cls([0] * k + [1], n)

    def _coerce(self, other) -> Cyclo | None:
        if isinstance(other, Cyclo):
            if other.n != self.n:
                raise RingError(f"cyclotomic orders differ: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo([other], self.n)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo([a + b for a, b in zip(self.c, o.c)], self.n)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo([-a for a in self.c], self.n)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo(_poly_mul(self.c, o.c), self.n)

    __rmul__ = __mul__

    def inverse(self) -> Cyclo:
        # extended Euclid in Q[x] against Phi_n
        a = _poly_trim(list(self.c))
        if not a:
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.n)
        r0, r1 = [Fraction(x) for x in cyclotomic_polynomial(self.n)], a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s_new = _poly_trim([x - y for x, y in _zip_pad(s0, _poly_mul(q, s1))])
            r0, r1 = r1, r
            s0, s1 = s1, s_new
        # r1 is a nonzero constant since Phi_n is irreducible
        return Cyclo([x / r1[0] for x in s1], self.n)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self.inverse()

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Cyclo([1], self.n)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.c, self.n))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"Cyclo({[str(x) for x in self.c]}, {self.n})"

    def __str__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(str(a))
            elif a == 1:
                terms.append(mono)
            elif a == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{a}*{mono}")
        return "+".join(terms).replace("+-", "-") if terms else "0"


def _zip_pad(p, q):
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return zip(p, q)


# ---------------------------------------------------------------------------
# ring descriptors

INTEGERS = "integers"
RATIONALS = "rationals"
INTEGERS_MOD = "integers-mod"
PRIME_FIELD = "prime-field"
CYCLOTOMIC = "cyclotomic"

_SPEC_RE = re.compile(
    r"^\s*(?:(?P<z>Z)|(?P<q>Q)|Z/(?P<m>\d+)|F_(?P<p>\d+)|Q\(zeta_(?P<n>\d+)\))\s*$"
)


@dataclass(frozen=True)
class RingSpec:
    """A supported coefficient ring.

    ``factorization`` is populated for ``Z/m`` (and ``F_p``) as a tuple of
    ``(prime, exponent)`` pairs in increasing prime order.
    """

    kind: str
    modulus: int | None = None
    factorization: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind in (INTEGERS, RATIONALS):
            if self.modulus is not None:
                raise RingError(f"{self.kind} takes no modulus")
        elif self.kind == INTEGERS_MOD:
            if self.modulus is None or self.modulus < 2:
                raise RingError("Z/m requires m >= 2")
        elif self.kind == PRIME_FIELD:
            if self.modulus is None or not isprime(self.modulus):
                raise RingError(f"F_{self.modulus}: {self.modulus} is not prime")
        elif self.kind == CYCLOTOMIC:
            if self.modulus is None or self.modulus < 1:
                raise RingError("Q(zeta_n) requires n >= 1")
        else:
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind in (INTEGERS_MOD, PRIME_FIELD) and not self.factorization:
            fac = tuple(sorted(factorint(self.modulus).items()))
            object.__setattr__(self, "factorization", fac)

    # -- descriptors -------------------------------------------------------

    def __str__(self):
        return {
            INTEGERS: "Z",
            RATIONALS: "Q",
            INTEGERS_MOD: f"Z/{self.modulus}",
            PRIME_FIELD: f"F_{self.modulus}",
            CYCLOTOMIC: f"Q(zeta_{self.modulus})",
        }[self.kind]

    @property
    def is_field(self) -> bool:
        if self.kind == INTEGERS_MOD:
            return isprime(self.modulus)
        return self.kind != INTEGERS

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind in (INTEGERS_MOD, PRIME_FIELD) else 0

    # -- elements ----------------------------------------------------------

    def __call__(self, x: Any):
        """Coerce ``x`` (int, Fraction, str, element, or coefficient list)."""
        if isinstance(x, str):
            return self.parse_element(x)
        k = self.kind
        if k == INTEGERS:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise RingError(f"{x} is not an integer")
                return x.numerator
            if isinstance(x, ModInt) or isinstance(x, Cyclo):
                raise RingError(f"cannot coerce {x!r} into Z")
            return int(x)
        if k == RATIONALS:
            if isinstance(x, (ModInt, Cyclo)):
                raise RingError(f"cannot coerce {x!r} into Q")
            return Fraction(x)
        if k in (INTEGERS_MOD, PRIME_FIELD):
            if isinstance(x, ModInt):
                if x.m != self.modulus:
                    raise RingError(f"{x!r} is not in {self}")
                return x
            if isinstance(x, Fraction):
                num = ModInt(x.numerator, self.modulus)
                return num / x.denominator
            if isinstance(x, Cyclo):
                raise RingError(f"cannot coerce {x!r} into {self}")
            return ModInt(int(x), self.modulus)
        if isinstance(x, Cyclo):
            if x.n != self.modulus:
                raise RingError(f"{x!r} is not in {self}")
            return x
        if isinstance(x, (list, tuple)):
            return Cyclo(x, self.modulus)
        if isinstance(x, ModInt):
            raise RingError(f"cannot coerce {x!r} into {self}")
        return Cyclo([x], self.modulus)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def zeta(self, k: int = 1) -> Cyclo:
        if self.kind != CYCLOTOMIC:
            raise RingError(f"{self} has no distinguished root of unity")
        return Cyclo.zeta(self.modulus, k)

    def is_zero(self, x) -> bool:
        return not x

    def is_unit(self, x) -> bool:
        x = self(x)
        if self.kind == INTEGERS:
            return x in (1, -1)
        if self.kind in (INTEGERS_MOD, PRIME_FIELD):
            return gcd(x.v, self.modulus) == 1
        return bool(x)

    def inverse(self, x):
        """The inverse witness of a unit; raises ``ZeroDivisionError`` otherwise."""
        x = self(x)
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit in {self}")
        if self.kind == INTEGERS:
            return x
        if self.kind == RATIONALS:
            return 1 / x
        return x.inverse()

    def lift(self, x) -> int:
        """Integer representative of an element of Z or Z/m."""
        x = self(x)
        if self.kind == INTEGERS:
            return x
        if self.kind in (INTEGERS_MOD, PRIME_FIELD):
            return x.v
        raise RingError(f"no integer lift in {self}")

    def parse_element(self, s: str):
        s = s.strip()
        if self.kind == CYCLOTOMIC:
            return self(_parse_cyclotomic(s, self.modulus))
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise RingError(f"malformed element {s!r} for {self}") from exc
        return self(value)

    def format_element(self, x) -> Any:
        """JSON-ready form: decimal string, "a/b", or list of coefficient strings."""
        x = self(x)
        if self.kind == CYCLOTOMIC:
            return [str(c) for c in x.c]
        return str(x)


_TERM_RE = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*(z(?:eta)?(?:\^(-?[0-9]+))?)?")


def _parse_cyclotomic(s: str, n: int) -> Cyclo:
    """Parse ``"1+2*z^3"`` style strings (``zeta`` is accepted for ``z``)."""
    s = s.replace(" ", "")
    if not s:
        raise RingError("empty cyclotomic element")
    out = Cyclo([0], n)
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise RingError(f"malformed cyclotomic element {s!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        term = Cyclo([sign * coef], n)
        if m.group(3):
            term = term * Cyclo.zeta(n, 1) ** int(m.group(4) or 1)
        out = out + term
        pos = m.end()
    return out


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``Z | Q | Z/<m> | F_<p> | Q(zeta_<n>)``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise RingError(f"malformed ring descriptor {text!r}")
    if m.group("z"):
        return RingSpec(INTEGERS)
    if m.group("q"):
        return RingSpec(RATIONALS)
    if m.group("m"):
        return RingSpec(INTEGERS_MOD, int(m.group("m")))
    if m.group("p"):
        return RingSpec(PRIME_FIELD, int(m.group("p")))
    return RingSpec(CYCLOTOMIC, int(m.group("n")))


ZZ = RingSpec(INTEGERS)
QQ = RingSpec(RATIONALS)


def is_unit(spec: RingSpec, x) -> bool:
    return spec.is_unit(x)


def cyclotomic_arith(n: int, op: str, *args):
    """Apply ``add``, ``mul``, ``invert`` or ``power`` in Q(zeta_n).

    ``power`` takes an element and an integer exponent.
    """
    ring = RingSpec(CYCLOTOMIC, n)
    if op == "add":
        return sum((ring(a) for a in args), ring.zero)
    if op == "mul":
        out = ring.one
        for a in args:
            out = out * ring(a)
        return out
    if op == "invert":
        (a,) = args
        return ring.inverse(a)
    if op == "power":
        a, e = args
        return ring(a) ** int(e)
    raise RingError(f"unknown cyclotomic operation {op!r}")
