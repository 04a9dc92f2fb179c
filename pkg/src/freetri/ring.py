"""Finite local rings with maximal ideal (pi), pi^2 = 0, and residue field F_{2^m}.

Three families are supported:

    zmod4    Z/4, pi = 2
    galois4  GR(4, m) = Z/4[x]/(h), pi = 2
    dual2    F_{2^m}[eps]/(eps^2), pi = eps

Every element is stored as a non-negative integer code ``lo | (hi << m)``
meaning ``lift(lo) + pi * lift(hi)``, where ``lo`` and ``hi`` are elements of
the residue field written as bit masks (bit j is the coefficient of x^j) and
``lift`` is the coefficient-wise {0,1} section k -> R.  The code is a
bijection with the canonical coefficient vector, so equality is structural.
All arithmetic works elementwise on numpy integer arrays as well as on ints.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

import numpy as np

KINDS = ("zmod4", "galois4", "dual2")


# rings with at most this many elements get full operation tables
FULL_TABLE_LIMIT = 256


class InvalidDescriptorError(ValueError):
    pass


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials over F_2 as int bit masks

def _gf2_degree(p: int) -> int:
    return p.bit_length() - 1


def _gf2_mod(a: int, p: int) -> int:
    dp = _gf2_degree(p)
    while a and _gf2_degree(a) >= dp:
        a ^= p << (_gf2_degree(a) - dp)
    return a


def _gf2_mulmod(a: int, b: int, p: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
    return _gf2_mod(out, p)


def gf2_is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    d = _gf2_degree(p)
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if _gf2_mod(p, g) == 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def default_poly(m: int) -> tuple[int, ...]:
    """Smallest irreducible polynomial of degree m over F_2, ascending coefficients."""
    for p in range(1 << m, 1 << (m + 1)):
        if gf2_is_irreducible(p):
            return tuple((p >> j) & 1 for j in range(m + 1))
    raise InvalidDescriptorError(f"no irreducible polynomial of degree {m}")


# ---------------------------------------------------------------------------
# descriptors

@dataclass(frozen=True)
class RingDescriptor:
    kind: str
    m: int = 1
    modulus_poly: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidDescriptorError(f"unknown ring kind {self.kind!r}")
        if self.kind == "zmod4":
            object.__setattr__(self, "m", 1)
            object.__setattr__(self, "modulus_poly", (0, 1))
        if not self.modulus_poly:
            if self.m < 1:
                raise InvalidDescriptorError("m must be a positive integer")
            object.__setattr__(self, "modulus_poly", default_poly(self.m))
        object.__setattr__(self, "modulus_poly", tuple(int(c) for c in self.modulus_poly))

    @property
    def pi_symbol(self) -> str:
        return "eps" if self.kind == "dual2" else "2"

    def __str__(self) -> str:
        if self.kind == "zmod4":
            return "zmod4"
        poly = ",".join(str(c) for c in self.modulus_poly)
        return f"{self.kind} m={self.m} poly={poly}"

    def token(self) -> str:
        """Space-free name used in summary lines; round-trips through ``parse``."""
        if self.kind == "zmod4":
            return "zmod4"
        if self.modulus_poly == default_poly(self.m):
            return f"{self.kind}:{self.m}"
        return f"{self.kind}:{self.m}:" + ",".join(str(c) for c in self.modulus_poly)

    @classmethod
    def parse(cls, text: str) -> "RingDescriptor":
        """Accept ``zmod4``, ``galois4 m=2 poly=1,1,1``, ``dual2 m=1 poly=0,1``,
        and the short forms ``galois4:2`` / ``dual2:2:1,1,1``."""
        text = text.strip()
        if ":" in text and " " not in text:
            parts = text.split(":")
            kind = parts[0]
            if kind == "zmod4":
                return cls("zmod4")
            try:
                m = int(parts[1])
                poly = tuple(int(c) for c in parts[2].split(",")) if len(parts) > 2 else ()
            except (IndexError, ValueError):
                raise InvalidDescriptorError(f"bad ring descriptor {text!r}") from None
            return cls(kind, m, poly)
        fields = text.split()
        if not fields:
            raise InvalidDescriptorError("empty ring descriptor")
        kind, opts = fields[0], {}
        for item in fields[1:]:
            mt = re.fullmatch(r"(m|poly)=(\S+)", item)
            if not mt:
                raise InvalidDescriptorError(f"bad ring descriptor field {item!r}")
            opts[mt.group(1)] = mt.group(2)
        if kind == "zmod4":
            if opts:
                raise InvalidDescriptorError("zmod4 takes no options")
            return cls("zmod4")
        try:
            m = int(opts.get("m", 1))
            poly = tuple(int(c) for c in opts["poly"].split(",")) if "poly" in opts else ()
        except ValueError:
            raise InvalidDescriptorError(f"bad ring descriptor {text!r}") from None
        return cls(kind, m, poly)


# ---------------------------------------------------------------------------
# carriers

class _Carrier:
    """Shared surface of R and k used by the generic linear algebra."""

    size: int
    zero = 0
    one = 1

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def inv(self, x):
        x = np.asarray(x, dtype=np.int64)
        if not np.all(self.is_unit(x)):
            raise ZeroDivisionError("element is not a unit")
        out = self._inv[x]
        return out if out.ndim else int(out)


class ResidueField(_Carrier):
    """F_{2^m} with elements as bit masks; addition is XOR."""

    is_field = True

    def __init__(self, m: int, poly_mask: int):
        self.m = m
        self.poly_mask = poly_mask
        self.size = 1 << m
        q = self.size
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                table[a, b] = table[b, a] = _gf2_mulmod(a, b, poly_mask)
        self._mul = table
        self._inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self._inv[a] = int(np.flatnonzero(table[a] == 1)[0])

    def __repr__(self):
        return f"ResidueField(2^{self.m})"

    def add(self, x, y):
        return np.bitwise_xor(x, y)

    def neg(self, x):
        return x

    def mul(self, x, y):
        out = self._mul[x, y]
        return out if np.ndim(out) else int(out)

    def is_unit(self, x):
        return np.asarray(x) != 0

    def coeffs(self, x) -> tuple:
        return tuple((int(x) >> j) & 1 for j in range(self.m))

    def format(self, x) -> str:
        """Bit coefficients b0,...,b_{m-1} of the residue class."""
        return ",".join(map(str, self.coeffs(x)))

    def parse(self, text: str) -> int:
        try:
            bits = [int(t) for t in text.strip().split(",")]
        except ValueError:
            bits = []
        if len(bits) != self.m or any(b not in (0, 1) for b in bits):
            raise ValueError(f"bad residue-field literal {text!r}")
        return sum(b << j for j, b in enumerate(bits))


class Ring(_Carrier):
    """Handle for one of the supported local rings; build with ``make_ring``."""

    is_field = False

    def __init__(self, descriptor: RingDescriptor):
        d = descriptor
        m, poly = d.m, d.modulus_poly
        if m < 1:
            raise InvalidDescriptorError("m must be a positive integer")
        if len(poly) != m + 1:
            raise InvalidDescriptorError(f"modulus must have degree m={m}, got {len(poly) - 1}")
        if d.kind == "dual2":
            if any(c not in (0, 1) for c in poly):
                raise InvalidDescriptorError("dual2 modulus coefficients must be bits")
        elif any(c not in (0, 1, 2, 3) for c in poly):
            raise InvalidDescriptorError("galois4 modulus coefficients must lie in 0..3")
        if poly[-1] != 1:
            raise InvalidDescriptorError("modulus polynomial must be monic")
        mask = sum((c & 1) << j for j, c in enumerate(poly))
        if not gf2_is_irreducible(mask):
            raise InvalidDescriptorError("modulus is reducible over F_2")
        if m > 8:
            raise InvalidDescriptorError("residue fields larger than 2^8 are not supported")

        self.descriptor = d
        self.kind = d.kind
        self.m = m
        self.char2 = d.kind == "dual2"
        self.field = ResidueField(m, mask)
        self.q = self.field.size
        self.mask = self.q - 1
        self.size = self.q * self.q
        self.pi = 1 << m
        self._carry = self._carry_table() if not self.char2 else None
        self._add_tab = self._mul_tab = self._neg_tab = None
        if self.size <= FULL_TABLE_LIMIT:
            # small rings: whole operation tables turn every op into one lookup
            codes = self.elements()
            self._add_tab = self._add_formula(codes[:, None], codes[None, :])
            self._mul_tab = self._mul_formula(codes[:, None], codes[None, :])
            self._neg_tab = np.asarray(self._neg_formula(codes), dtype=np.int64)
        self._inv = self._inverse_table()

    def __repr__(self):
        return f"Ring({self.descriptor})"

    def __reduce__(self):
        return (make_ring, (self.descriptor,))

    # -- construction helpers -------------------------------------------------

    def _carry_table(self) -> np.ndarray:
        """carry[a, b] = hi part of lift(a) * lift(b) computed in Z/4[x]/(h)."""
        m, q = self.m, self.q
        h = np.array(self.descriptor.modulus_poly, dtype=np.int64)
        bits = (np.arange(q)[:, None] >> np.arange(m)[None, :]) & 1
        prod = np.zeros((q, q, 2 * m - 1), dtype=np.int64)
        for s in range(m):
            for t in range(m):
                prod[:, :, s + t] += bits[:, None, s] * bits[None, :, t]
        for deg in range(2 * m - 2, m - 1, -1):
            lead = prod[:, :, deg].copy()
            prod[:, :, deg - m:deg + 1] -= lead[:, :, None] * h[None, None, :]
        digits = prod[:, :, :m] % 4
        lo = (digits & 1) << np.arange(m)
        hi = (digits >> 1) << np.arange(m)
        assert np.array_equal(lo.sum(axis=2), self.field._mul)
        return hi.sum(axis=2)

    def _inverse_table(self) -> np.ndarray:
        codes = self.elements()
        inv = np.zeros(self.size, dtype=np.int64)
        units = codes[self.is_unit(codes)]
        if self.size <= 256:
            prods = self.mul(units[:, None], codes[None, :])
            for row, u in zip(prods, units):
                inv[u] = int(np.flatnonzero(row == 1)[0])
        else:
            # y = lift(res(x)^-1), then x^-1 = y (2 - x y)
            y = self.field._inv[units & self.mask]
            two = self.from_int(2)
            inv[units] = self.mul(y, self.sub(two, self.mul(units, y)))
        return inv

    # -- arithmetic on codes ---------------------------------------------------

    def _split(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x & self.mask, x >> self.m

    def _join(self, lo, hi):
        out = lo | (hi << self.m)
        return out if np.ndim(out) else int(out)

    @staticmethod
    def _lookup(table, *args):
        out = table[tuple(np.asarray(a, dtype=np.int64) for a in args)]
        return out if np.ndim(out) else int(out)

    def add(self, x, y):
        if self._add_tab is not None:
            return self._lookup(self._add_tab, x, y)
        return self._add_formula(x, y)

    def _add_formula(self, x, y):
        xl, xh = self._split(x)
        yl, yh = self._split(y)
        hi = xh ^ yh
        if not self.char2:
            hi = hi ^ (xl & yl)
        return self._join(xl ^ yl, hi)

    def neg(self, x):
        if self._neg_tab is not None:
            return self._lookup(self._neg_tab, x)
        return self._neg_formula(x)

    def _neg_formula(self, x):
        if self.char2:
            x = np.asarray(x, dtype=np.int64)
            return x if x.ndim else int(x)
        lo, hi = self._split(x)
        return self._join(lo, hi ^ lo)

    def mul(self, x, y):
        if self._mul_tab is not None:
            return self._lookup(self._mul_tab, x, y)
        return self._mul_formula(x, y)

    def _mul_formula(self, x, y):
        xl, xh = self._split(x)
        yl, yh = self._split(y)
        k = self.field._mul
        hi = k[xl, yh] ^ k[xh, yl]
        if not self.char2:
            hi = hi ^ self._carry[xl, yl]
        return self._join(k[xl, yl], hi)

    def is_unit(self, x):
        return (np.asarray(x) & self.mask) != 0

    def residue(self, x):
        out = np.asarray(x, dtype=np.int64) & self.mask
        return out if out.ndim else int(out)

    def lift(self, c):
        out = np.asarray(c, dtype=np.int64)
        return out if out.ndim else int(out)

    def in_pi_ideal(self, x):
        return (np.asarray(x) & self.mask) == 0

    def half(self, x):
        """The unique c in k with x = pi * lift(c); requires x in pi R."""
        x = np.asarray(x, dtype=np.int64)
        if not np.all(self.in_pi_ideal(x)):
            raise ValueError("element is not in the maximal ideal")
        out = x >> self.m
        return out if out.ndim else int(out)

    def times_pi(self, x):
        """pi * x; depends only on residue(x)."""
        out = (np.asarray(x, dtype=np.int64) & self.mask) << self.m
        return out if out.ndim else int(out)

    def from_int(self, n: int) -> int:
        if self.char2:
            return n & 1
        n %= 4
        return (n & 1) | (((n >> 1) & 1) << self.m)

    def classify(self, x):
        """Return ``(is_unit, residue, half)``; ``half`` is None for units."""
        x = int(x)
        res = x & self.mask
        if res:
            return True, res, None
        return False, 0, x >> self.m

    # -- literals ------------------------------------------------------------

    def coeffs(self, x) -> tuple:
        """Canonical coefficient vector of an element code."""
        lo, hi = int(x) & self.mask, int(x) >> self.m
        if self.char2:
            return (tuple((lo >> j) & 1 for j in range(self.m)),
                    tuple((hi >> j) & 1 for j in range(self.m)))
        return tuple(((lo >> j) & 1) + 2 * ((hi >> j) & 1) for j in range(self.m))

    def from_coeffs(self, coeffs) -> int:
        if self.char2:
            a, b = coeffs
            if len(a) != self.m or len(b) != self.m or any(c not in (0, 1) for c in (*a, *b)):
                raise ValueError(f"bad dual-number coefficients {coeffs!r}")
            lo = sum(c << j for j, c in enumerate(a))
            hi = sum(c << j for j, c in enumerate(b))
            return lo | (hi << self.m)
        if len(coeffs) != self.m or any(c not in (0, 1, 2, 3) for c in coeffs):
            raise ValueError(f"bad Galois-ring coefficients {coeffs!r}")
        lo = sum((c & 1) << j for j, c in enumerate(coeffs))
        hi = sum((c >> 1) << j for j, c in enumerate(coeffs))
        return lo | (hi << self.m)

    def format(self, x) -> str:
        c = self.coeffs(x)
        if self.char2:
            return ",".join(map(str, c[0])) + "|" + ",".join(map(str, c[1]))
        return ",".join(map(str, c))

    def parse(self, text: str) -> int:
        text = text.strip()
        try:
            if self.char2:
                a, b = text.split("|")
                return self.from_coeffs((tuple(int(t) for t in a.split(",")),
                                         tuple(int(t) for t in b.split(","))))
            return self.from_coeffs(tuple(int(t) for t in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad element literal {text!r} for {self.descriptor}") from exc

    def __call__(self, value) -> "Element":
        """Wrap an element code (or int literal for Z/4-style rings) as an Element."""
        if isinstance(value, Element):
            if value.ring is not self:
                raise RingMismatchError("element belongs to a different ring")
            return value
        if isinstance(value, str):
            return Element(self, self.parse(value))
        if not 0 <= int(value) < self.size:
            raise ValueError(f"element code {value} out of range")
        return Element(self, int(value))


@functools.lru_cache(maxsize=None)
def _make_ring_cached(descriptor: RingDescriptor) -> Ring:
    return Ring(descriptor)


def make_ring(descriptor) -> Ring:
    """Build (or fetch the cached) ring handle for a descriptor or descriptor text."""
    if isinstance(descriptor, str):
        descriptor = RingDescriptor.parse(descriptor)
    return _make_ring_cached(descriptor)


class Element:
    """A ring element with operator support; mixing rings raises RingMismatchError."""

    __slots__ = ("ring", "code")

    def __init__(self, ring: Ring, code: int):
        self.ring = ring
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, Element):
            if other.ring is not self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.ring.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        return Element(self.ring, self.ring.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.ring, self.ring.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return Element(self.ring, self.ring.sub(self._other(other), self.code))

    def __mul__(self, other):
        return Element(self.ring, self.ring.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.code))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring is other.ring and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self.ring.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self.code))

    def __repr__(self):
        return f"Element({self.ring.format(self.code)})"

    def is_unit(self) -> bool:
        return bool(self.ring.is_unit(self.code))

    def inverse(self) -> "Element":
        return Element(self.ring, self.ring.inv(self.code))

    def residue(self) -> int:
        return self.ring.residue(self.code)

    def classify(self):
        return self.ring.classify(self.code)
