"""Finite fields F_q, q = p^m, with exp/log/Zech tables.

Elements are plain ints in ``[0, q)``: the base-p digits of the integer are the
coefficients (low to high) of the residue polynomial modulo ``ctx.modulus``.
"""

from __future__ import annotations

import itertools
import math

from .errors import DivisionByZero, FieldMismatch, FieldTooLarge, LogOfZero, NotPrime

DEFAULT_MAX_SIZE = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- dense polynomials over F_p, coefficient lists low-to-high -------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, b, p):
    """Remainder of a by monic b over F_p."""
    a = list(a)
    db = len(b) - 1
    while len(_trim(a)) - 1 >= db:
        shift = len(a) - 1 - db
        lead = a[-1]
        for i, coef in enumerate(b):
            a[shift + i] = (a[shift + i] - lead * coef) % p
    return a


def _is_irreducible(f, p):
    m = len(f) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_trim(_polymod(f, list(low) + [1], p))):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Smallest monic irreducible of degree m over F_p.

    Candidates are scanned in increasing order of the integer whose base-p
    digits are the non-leading coefficients, which is the same as comparing
    coefficient tuples from the top down.
    """
    for k in range(p**m):
        f = [(k // p**i) % p for i in range(m)] + [1]
        if m == 1 or (f[0] != 0 and _is_irreducible(f, p)):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The finite field F_{p^m} with a fixed primitive element ``c``.

    Instances are immutable and compare equal iff ``(p, m)`` agree, since the
    modulus and primitive element are chosen deterministically.
    """

    __slots__ = (
        "p", "m", "q", "modulus", "c", "exp_table", "log_table",
        "_zech", "_neg", "_digits", "add", "_frob_cache",
    )

    def __init__(self, p: int, m: int = 1, max_size: int = DEFAULT_MAX_SIZE):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime", witness={"p": p})
        if m < 1:
            raise FieldTooLarge(f"extension degree must be >= 1, got {m}", witness={"m": m})
        if p**m > max_size:
            raise FieldTooLarge(f"q = {p}^{m} exceeds the bound {max_size}",
                                witness={"q": p**m, "max_size": max_size})
        self.p, self.m, self.q = p, m, p**m
        self.modulus = tuple(smallest_irreducible(p, m))
        q = self.q
        self._digits = [tuple((a // p**i) % p for i in range(m)) for a in range(q)]
        self.c = self._find_primitive()

        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        x = 1
        for k in range(q - 1):
            exp[k] = exp[k + q - 1] = x
            log[x] = k
            x = self._slow_mul(x, self.c)
        self.exp_table, self.log_table = exp, log

        self._neg = [self._encode([(-d) % p for d in self._digits[a]]) for a in range(q)]
        if p == 2:
            self.add = int.__xor__
        elif m == 1:
            self.add = lambda a, b: (a + b) % p
        else:
            # zech[k] = log(1 + c^k), or -1 when 1 + c^k = 0
            zech = []
            for k in range(q - 1):
                e = exp[k]
                d0 = e % p
                s = e - d0 + (d0 + 1) % p
                zech.append(log[s] if s else -1)
            self._zech = zech
            self.add = self._zech_add
        self._frob_cache = {}

    # construction helpers

    def _encode(self, digits) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        r = _polymod(prod, self.modulus, p)
        return self._encode(r[:m])

    def _slow_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return r

    def _find_primitive(self) -> int:
        q = self.q
        if q == 2:
            return 1
        factors = prime_factors(q - 1)
        for g in range(1, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    # arithmetic

    def _zech_add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self.log_table[a], self.log_table[b]
        z = self._zech[lb - la] if lb >= la else self._zech[lb - la + self.q - 1]
        if z < 0:
            return 0
        return self.exp_table[la + z]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if k == 0 else 0
        return self.exp_table[(self.log_table[a] * k) % (self.q - 1)]

    def frobenius(self, a: int, j: int = 1) -> int:
        """a ** (p ** j)."""
        if a == 0:
            return 0
        e = pow(self.p, j, self.q - 1) if self.q > 2 else 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def dlog(self, a: int) -> int:
        if a == 0:
            raise LogOfZero("discrete logarithm of zero")
        return self.log_table[a]

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> F_p -> F_q."""
        return k % self.p

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.q):
            raise FieldMismatch(f"{a!r} is not an element of F_{self.q}", witness={"value": a})
        return a

    # identity / display

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((FieldCtx, self.p, self.m))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m})"

    def element_str(self, a: int) -> str:
        """Render an element as a polynomial in t (the class of the modulus root)."""
        if self.m == 1:
            return str(a)
        parts = []
        for i, d in reversed(list(enumerate(self._digits[a]))):
            if d:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = "" if (d == 1 and i) else str(d)
                parts.append(coef + mono)
        return "+".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "c": self.c}


_FIELD_CACHE: dict = {}


def field_new(p: int, m: int = 1, max_size: int = DEFAULT_MAX_SIZE) -> FieldCtx:
    """Build (or fetch from cache) the field with p^m elements."""
    key = (p, m)
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, m, max_size)
        _FIELD_CACHE[key] = ctx
    elif p**m > max_size:
        raise FieldTooLarge(f"q = {p}^{m} exceeds the bound {max_size}",
                            witness={"q": p**m, "max_size": max_size})
    return ctx


def field_of_order(q: int, max_size: int = DEFAULT_MAX_SIZE) -> FieldCtx:
    factors = prime_factors(q) if q > 1 else []
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power", witness={"q": q})
    p = factors[0]
    return field_new(p, round(math.log(q, p)), max_size)


def prime_powers(upto: int) -> list[int]:
    return [q for q in range(2, upto + 1) if len(prime_factors(q)) == 1]


def signed_binomial_check(ctx: FieldCtx) -> bool:
    """C(q-1, i) == (-1)^i in F_q for every 0 <= i <= q-1."""
    q, p = ctx.q, ctx.p
    return all(math.comb(q - 1, i) % p == (-1) ** i % p for i in range(q))
