"""Exact coefficient fields: arbitrary-precision rationals and odd prime fields.

Every computation in this package is exact.  A "field" object bundles the
arithmetic for one of two coefficient domains:

* ``QQ`` — rationals, elements are ``fractions.Fraction`` (always normalized,
  positive denominator);
* ``GF(p)`` — integers mod an odd prime ``p``, elements are plain ints in
  ``range(p)``.

p = 2 is rejected on purpose: sign conventions (graded commutativity, odd
squares) degenerate in characteristic 2 and nothing downstream supports it.

Scalars serialize as strings: ``"5"``, ``"-3/4"`` over the rationals,
``"2 mod 5"`` over GF(5).
"""

from __future__ import annotations

from fractions import Fraction


class ScalarError(ValueError):
    """Raised for malformed scalars, bad moduli, or field mismatches."""


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Rationals:
    """The field of rational numbers with Fraction elements."""

    name = "q"
    characteristic = 0

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise ScalarError(f"cannot coerce {value!r} into the rationals")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def pow(self, a, k):
        if k < 0 and a == 0:
            raise ZeroDivisionError("negative power of zero")
        return Fraction(a) ** k

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        text = text.strip()
        if "mod" in text:
            raise ScalarError(f"modular scalar {text!r} given for the rationals")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"bad rational scalar {text!r}") from exc

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """Integers mod an odd prime, elements stored as ints in range(p)."""

    characteristic = None  # set per instance

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ScalarError(f"modulus {p!r} is not prime")
        if p == 2:
            raise ScalarError("characteristic 2 is not supported")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ScalarError(
                    f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, str):
            return self.parse(value)
        raise ScalarError(f"cannot coerce {value!r} into GF({self.p})")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, k):
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(a, k, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, text):
        text = text.strip()
        if "mod" in text:
            left, _, right = text.partition("mod")
            try:
                k, q = int(left), int(right)
            except ValueError as exc:
                raise ScalarError(f"bad modular scalar {text!r}") from exc
            if q != self.p:
                raise ScalarError(
                    f"scalar {text!r} has modulus {q}, field has {self.p}")
            return k % self.p
        try:
            return int(text) % self.p
        except ValueError:
            pass
        # allow rational strings like "1/2" to mean num * den^-1 mod p
        try:
            return self.coerce(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"bad scalar {text!r} for GF({self.p})") from exc

    def format(self, a):
        return f"{a % self.p} mod {self.p}"

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()

_gf_cache = {}


def GF(p):
    """Return the (cached) prime field with p elements, p an odd prime."""
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_tag(tag):
    """Resolve a field tag: "q", "f3", "f5", or "fp:P" for odd prime P."""
    tag = tag.strip().lower()
    if tag == "q":
        return QQ
    if tag.startswith("fp:"):
        try:
            return GF(int(tag[3:]))
        except ValueError as exc:
            raise ScalarError(f"bad field tag {tag!r}") from exc
    if tag.startswith("f") and tag[1:].isdigit():
        return GF(int(tag[1:]))
    raise ScalarError(f"unknown field tag {tag!r}")


def field_tag(field):
    if field.characteristic in (3, 5):
        return f"f{field.characteristic}"
    return field.name


def same_field(*fields):
    """Check that all arguments are the same field; raise otherwise."""
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise ScalarError(f"mixed coefficient fields: {first!r} vs {f!r}")
    return first
