"""Finite field arithmetic: prime fields F_p, extensions F_{p^k}, and
univariate polynomials over them.

Field elements are plain Python ints everywhere.  In F_p an element is its
residue, in F_{p^k} an element encodes its coefficient vector (lowest degree
first) in base p; for p = 2 this is just the usual bit-packed polynomial
representation, and multiplication runs on ints with carry-less arithmetic
plus table-driven reduction.  Zero and one are always encoded as 0 and 1,
and elements of the prime field keep their encoding inside any extension.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable


class OrderFactorizationError(Exception):
    """Raised when p^k - 1 cannot be factored within the configured budget."""


# ---------------------------------------------------------------------------
# Integer helpers: primality and factoring (used for primitive elements).

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
_MR_BASES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
             59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113]


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set (deterministic behaviour)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, budget: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor or 0 on budget."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        steps = 0
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = _gcd_int(abs(x - y), n)
            steps += 1
            if steps > budget:
                return 0
        if d != n:
            return d
    return 0


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def factorize(n: int, trial_bound: int = 100_000, rho_budget: int = 1 << 22) -> dict[int, int]:
    """Prime factorization of n as {prime: exponent}.

    Trial division up to trial_bound, then Pollard rho on what remains.
    Raises OrderFactorizationError if a composite cofactor survives the
    rho budget.
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    factors: dict[int, int] = {}
    d = 2
    while d <= trial_bound and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    stack = [n] if n > 1 else []
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            factors[c] = factors.get(c, 0) + 1
            continue
        f = _pollard_rho(c, rho_budget)
        if f == 0 or f == c:
            raise OrderFactorizationError(
                f"order factorization too large: composite cofactor {c}")
        stack.append(f)
        stack.append(c // f)
    return factors


# ---------------------------------------------------------------------------
# GF(2)[X] on ints: bit i = coefficient of X^i.

_SPREAD8 = [0] * 256
for _b in range(256):
    _v = 0
    for _i in range(8):
        if _b >> _i & 1:
            _v |= 1 << (2 * _i)
    _SPREAD8[_b] = _v
del _b, _v, _i


def _gf2_square_int(a: int) -> int:
    r = 0
    shift = 0
    while a:
        r |= _SPREAD8[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return r


def _gf2_mul_int(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_mod_int(a: int, f: int) -> int:
    df = f.bit_length() - 1
    da = a.bit_length() - 1
    while da >= df:
        a ^= f << (da - df)
        da = a.bit_length() - 1
    return a


def _gf2_gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod_int(a, b)
    return a


def _gf2_is_irreducible_int(f: int, k: int) -> bool:
    """Irreducibility of a degree-k polynomial over F_2, int-encoded."""
    if k <= 0:
        return False
    if not (f & 1):
        return k == 1 and f == 2  # divisible by X unless f = X itself
    x_red = _gf2_mod_int(2, f)  # X reduced (a constant when k == 1)
    h = x_red
    for d in range(1, k + 1):
        h = _gf2_mod_int(_gf2_square_int(h), f)
        if d == k:
            return h == x_red
        if k % d == 0 and _gf2_gcd_int(h ^ x_red, f) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Fields.


class PrimeField:
    """The prime field F_p; elements are ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    # Uniform field protocol -------------------------------------------------
    @property
    def order(self) -> int:
        return self.p

    @property
    def char(self) -> int:
        return self.p

    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def square(self, a: int) -> int:
        return a * a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def embed(self, c: int) -> int:
        return c % self.p

    def is_base(self, a: int) -> bool:
        return 0 <= a < self.p

    def random_element(self, rng) -> int:
        return rng.randrange(self.p)

    def elements(self) -> Iterable[int]:
        return range(self.p)

    def element_coeffs(self, a: int) -> list[int]:
        return [a % self.p]

    def descriptor(self) -> dict:
        return {"p": self.p, "k": 1, "modulus": [0, 1]}

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class ExtField:
    """The extension field F_{p^k} = F_p[z] / (modulus).

    Elements are ints: the base-p digits of the int are the coefficients of
    the residue polynomial, lowest degree first.  For p = 2 multiplication
    is carry-less int arithmetic with byte-table modular reduction.
    """

    __slots__ = ("base", "k", "modulus", "p", "_modint", "_mask",
                 "_redtab", "_modlow")

    def __init__(self, base: PrimeField, k: int, modulus: "UniPoly"):
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus.field != base or modulus.degree != k or not modulus.is_monic():
            raise ValueError("modulus must be monic of degree k over the base field")
        if not is_irreducible(modulus):
            raise ValueError("modulus is reducible")
        self.base = base
        self.k = k
        self.p = base.p
        self.modulus = modulus
        if self.p == 2:
            self._modint = sum(c << i for i, c in enumerate(modulus.coeffs))
            self._mask = (1 << k) - 1
            self._redtab = self._build_redtab()
            self._modlow = None
        else:
            self._modint = None
            self._mask = None
            self._redtab = None
            self._modlow = modulus.coeffs[:-1]  # monic: X^k = -modlow

    def _build_redtab(self):
        # z^(k+i) mod modulus for i in [0, k-1], then byte tables over them.
        k = self.k
        zpow = []
        cur = self._modint ^ (1 << k)
        zpow.append(cur)
        for _ in range(1, k):
            cur <<= 1
            if cur >> k & 1:
                cur ^= self._modint
            zpow.append(cur)
        ntab = (k + 7) // 8
        tabs = []
        for t in range(ntab):
            tab = [0] * 256
            for byte in range(1, 256):
                lsb = byte & -byte
                j = lsb.bit_length() - 1
                src = 8 * t + j
                tab[byte] = tab[byte ^ lsb] ^ (zpow[src] if src < k else 0)
            tabs.append(tab)
        return tabs

    # Uniform field protocol -------------------------------------------------
    @property
    def order(self) -> int:
        return self.p ** self.k

    @property
    def char(self) -> int:
        return self.p

    zero = 0
    one = 1

    def _reduce2(self, x: int) -> int:
        lo = x & self._mask
        hi = x >> self.k
        t = 0
        redtab = self._redtab
        while hi:
            lo ^= redtab[t][hi & 0xFF]
            hi >>= 8
            t += 1
        return lo

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = [0] * self.k
        for i in range(self.k):
            a, out[i] = divmod(a, p)
        return out

    def _undigits(self, v: list[int]) -> int:
        p = self.p
        out = 0
        for c in reversed(v[:self.k]):
            out = out * p + c
        return out

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x - y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._undigits([-x % self.p for x in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.p == 2:
            if a == 0 or b == 0:
                return 0
            # 4-bit windowed carry-less multiply, then table reduction
            t1 = a
            t2 = a << 1
            t4 = t2 << 1
            t8 = t4 << 1
            tb = (0, t1, t2, t2 ^ t1, t4, t4 ^ t1, t4 ^ t2, t4 ^ t2 ^ t1,
                  t8, t8 ^ t1, t8 ^ t2, t8 ^ t2 ^ t1, t8 ^ t4, t8 ^ t4 ^ t1,
                  t8 ^ t4 ^ t2, t8 ^ t4 ^ t2 ^ t1)
            acc = 0
            shift = 0
            while b:
                w = b & 15
                if w:
                    acc ^= tb[w] << shift
                b >>= 4
                shift += 4
            return self._reduce2(acc)
        da, db = self._digits(a), self._digits(b)
        p = self.p
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self._undigits(self._reduce_digits(prod))

    def _reduce_digits(self, v: list[int]) -> list[int]:
        p = self.p
        modlow = self._modlow
        for i in range(len(v) - 1, self.k - 1, -1):
            c = v[i]
            if c:
                v[i] = 0
                for j, md in enumerate(modlow):
                    if md:
                        v[i - self.k + j] = (v[i - self.k + j] - c * md) % p
        return v[:self.k]

    def square(self, a: int) -> int:
        if self.p == 2:
            return self._reduce2(_gf2_square_int(a))
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 2:
            # extended Euclid on int-encoded polynomials
            r0, r1 = self._modint, a
            s0, s1 = 0, 1
            while r1:
                d0, d1 = r0.bit_length() - 1, r1.bit_length() - 1
                if d0 < d1:
                    r0, r1, s0, s1 = r1, r0, s1, s0
                    continue
                q = 0
                while r0.bit_length() >= r1.bit_length() and r0:
                    sh = r0.bit_length() - r1.bit_length()
                    q ^= 1 << sh
                    r0 ^= r1 << sh
                s0 ^= _gf2_mul_int(q, s1)
                r0, r1, s0, s1 = r1, r0, s1, s0
            # r0 == gcd == 1 since modulus is irreducible
            return self._reduce2(s0)
        # generic: Fermat
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.square(a)
            e >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def embed(self, c: int) -> int:
        return c % self.p

    def is_base(self, a: int) -> bool:
        return 0 <= a < self.p

    def random_element(self, rng) -> int:
        return rng.randrange(self.order)

    def elements(self) -> Iterable[int]:
        return range(self.order)

    def element_coeffs(self, a: int) -> list[int]:
        return self._digits(a)

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus.coeffs)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExtField) and other.p == self.p
                and other.k == self.k and other.modulus.coeffs == self.modulus.coeffs)

    def __hash__(self) -> int:
        return hash(("ExtField", self.p, self.k, self.modulus.coeffs))

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, k={self.k})"


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def extension_field(p: int, k: int) -> ExtField:
    """F_{p^k} with the deterministic modulus from find_irreducible."""
    base = prime_field(p)
    return ExtField(base, k, find_irreducible(base, k))


def field_from_descriptor(desc: dict):
    p, k = desc["p"], desc["k"]
    if k == 1:
        return prime_field(p)
    base = prime_field(p)
    mod = UniPoly(base, tuple(c % p for c in desc["modulus"]))
    return ExtField(base, k, mod)


# ---------------------------------------------------------------------------
# Univariate polynomials.


class UniPoly:
    """Dense univariate polynomial; coeffs lowest-first, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field) -> "UniPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field) -> "UniPoly":
        return cls(field, (1,))

    @classmethod
    def x(cls, field) -> "UniPoly":
        return cls(field, (0, 1))

    @classmethod
    def from_roots(cls, field, roots) -> "UniPoly":
        out = cls.one(field)
        for r in roots:
            out = out * cls(field, (field.neg(r), 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self) -> "UniPoly":
        if self.is_zero() or self.is_monic():
            return self
        inv = self.field.inv(self.coeffs[-1])
        return self.scale(inv)

    def scale(self, c: int) -> "UniPoly":
        f = self.field
        if c == 0:
            return UniPoly.zero(f)
        return UniPoly(f, (f.mul(a, c) for a in self.coeffs))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return UniPoly(f, out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            x = self.coeffs[i] if i < len(self.coeffs) else 0
            y = other.coeffs[i] if i < len(other.coeffs) else 0
            out.append(f.sub(x, y))
        return UniPoly(f, out)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        f = self.field
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = f.add(out[i + j], f.mul(a, b))
        return UniPoly(f, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, UniPoly) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def divmod_by(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        dl = other.degree
        lead_inv = f.inv(other.coeffs[-1])
        rem = list(self.coeffs)
        quo = [0] * max(len(rem) - dl, 0)
        for i in range(len(rem) - 1, dl - 1, -1):
            c = rem[i]
            if c:
                q = f.mul(c, lead_inv)
                quo[i - dl] = q
                for j, b in enumerate(other.coeffs):
                    if b:
                        rem[i - dl + j] = f.sub(rem[i - dl + j], f.mul(q, b))
        return UniPoly(f, quo), UniPoly(f, rem)

    def mod(self, other: "UniPoly") -> "UniPoly":
        return self.divmod_by(other)[1]

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.mod(b)
        return a.monic()

    def pow_mod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = UniPoly.one(self.field)
        base = self.mod(modulus)
        while e:
            if e & 1:
                result = (result * base).mod(modulus)
            base = (base * base).mod(modulus)
            e >>= 1
        return result

    def evaluate(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)})"


# ---------------------------------------------------------------------------
# Irreducibility and field construction.


def is_irreducible(f: UniPoly) -> bool:
    """True iff the monic polynomial f has no nontrivial factor.

    Tests gcd(X^{q^d} - X, f) = 1 for every proper divisor d of deg f and
    X^{q^k} = X mod f, over the coefficient field of order q.
    """
    if not f.is_monic():
        raise ValueError("is_irreducible expects a monic polynomial")
    k = f.degree
    if k < 1:
        raise ValueError("degree must be >= 1")
    field = f.field
    if isinstance(field, PrimeField) and field.p == 2:
        return _gf2_is_irreducible_int(sum(c << i for i, c in enumerate(f.coeffs)), k)
    if k == 1:
        return True
    q = field.order
    x = UniPoly.x(field)
    h = x
    for d in range(1, k + 1):
        h = h.pow_mod(q, f)
        if d == k:
            return h == x.mod(f)
        if k % d == 0 and (h - x).gcd(f).degree > 0:
            return False
    return True


def find_irreducible(base: PrimeField, k: int) -> UniPoly:
    """Deterministic monic irreducible of degree k over the base field.

    Search order: trinomials X^k + X^j + 1 with increasing j, then all
    monic polynomials ordered by the integer encoding of their lower
    coefficients (base-p digits, lowest degree least significant).
    """
    if k < 1:
        raise ValueError("degree must be >= 1")
    p = base.p
    for j in range(1, k):
        coeffs = [0] * (k + 1)
        coeffs[0] = 1
        coeffs[j] = (coeffs[j] + 1) % p
        coeffs[k] = 1
        cand = UniPoly(base, coeffs)
        if cand.degree == k and is_irreducible(cand):
            return cand
    for n in range(p ** k):
        coeffs = []
        v = n
        for _ in range(k):
            v, c = divmod(v, p)
            coeffs.append(c)
        # quick screens: constant term 0 means X divides; over F_2 an even
        # weight means X+1 divides
        if k > 1 and coeffs[0] == 0:
            continue
        if p == 2 and k > 1 and (sum(coeffs) + 1) % 2 == 0:
            continue
        cand = UniPoly(base, coeffs + [1])
        if is_irreducible(cand):
            return cand
    raise RuntimeError("unreachable: irreducibles of every degree exist")


def find_primitive_element(field, trial_bound: int = 100_000,
                           rho_budget: int = 1 << 22) -> int:
    """Deterministic generator of the multiplicative group of the field.

    Verified by g^{(q-1)/l} != 1 for every prime l dividing q - 1; raises
    OrderFactorizationError when q - 1 cannot be factored in budget.
    """
    n = field.order - 1
    if n == 0:
        raise ValueError("field of order 1?")
    if n == 1:
        return 1
    primes = sorted(factorize(n, trial_bound, rho_budget))
    cofactors = [n // q for q in primes]
    for g in range(2, field.order):
        if all(field.pow(g, c) != 1 for c in cofactors):
            assert field.pow(g, n) == 1
            return g
    raise RuntimeError("unreachable: cyclic group has a generator")


# ---------------------------------------------------------------------------
# Root extraction (Berlekamp root-finding specialization).


def berlekamp_roots(f: UniPoly) -> dict[int, int]:
    """All roots of f in its coefficient field, mapped to multiplicities.

    deg(f) - sum(multiplicities) is the degree of the rootless cofactor,
    so a caller can detect factors that do not split into linear pieces.
    Deterministic: the equal-degree splitting walks a fixed element
    sequence instead of sampling.
    """
    if f.is_zero():
        raise ValueError("berlekamp_roots expects a nonzero polynomial")
    field = f.field
    fm = f.monic()
    if fm.degree == 0:
        return {}
    if field.char == 2:
        roots = _roots_distinct_char2(fm, field)
    else:
        q = field.order
        x = UniPoly.x(field)
        xq = x.pow_mod(q, fm)
        g = (xq - x).gcd(fm)
        roots = _split_linear_odd(g, field) if g.degree > 0 else []
    out: dict[int, int] = {}
    for r in sorted(roots):
        mult = 0
        poly = fm
        linear = UniPoly(field, (field.neg(r), 1))
        while True:
            quo, rem = poly.divmod_by(linear)
            if not rem.is_zero():
                break
            poly = quo
            mult += 1
        out[r] = mult
    return out


# Char-2 fast path: polynomials as plain coefficient lists (lowest first,
# trimmed), addition is elementwise xor, muls go through the bound field op.


def _c2_trim(v: list) -> list:
    while v and not v[-1]:
        v.pop()
    return v


def _c2_mod(a: list, m: list, fmul, minv) -> list:
    # minv: inverse of the leading coefficient of m
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            qc = fmul(c, minv) if minv != 1 else c
            off = i - dm
            for j in range(dm):
                mj = m[j]
                if mj:
                    a[off + j] ^= fmul(qc, mj)
            a[i] = 0
    del a[dm:]
    return _c2_trim(a)


def _c2_gcd(a: list, b: list, fmul, finv) -> list:
    while b:
        a, b = b, _c2_mod(a, b, fmul, finv(b[-1]))
    if a and a[-1] != 1:
        inv = finv(a[-1])
        a = [fmul(c, inv) if c else 0 for c in a]
    return a


def _c2_sqmod(a: list, m: list, fsquare, fmul, minv) -> list:
    out = [0] * (2 * len(a) - 1) if a else []
    for i, c in enumerate(a):
        if c:
            out[2 * i] = fsquare(c)
    return _c2_mod(out, m, fmul, minv)


def _roots_distinct_char2(fm: UniPoly, field) -> list[int]:
    """Distinct roots of fm over a char-2 field of order 2^kappa.

    Computes g = gcd(fm, X^q - X) via a Frobenius squaring chain, then
    splits g with trace polynomials Tr(uX) mod g.  Traces are computed
    once at the top and reduced down the splitting tree.
    """
    fmul, finv, fsquare = field.mul, field.inv, field.square
    kappa = (field.order - 1).bit_length()  # q = 2^kappa
    m = list(fm.coeffs)
    if len(m) == 2:  # linear: root is the constant term in char 2
        return [m[0]]
    frob = []  # X^{2^i} mod fm for i = 0..kappa-1
    h = [0, 1]
    for _ in range(kappa):
        frob.append(h)
        h = _c2_sqmod(h, m, fsquare, fmul, 1)
    # h = X^q mod fm
    hx = h[:]
    if len(hx) < 2:
        hx += [0] * (2 - len(hx))
    hx[1] ^= 1
    g = _c2_gcd(m, _c2_trim(hx), fmul, finv)
    if len(g) <= 1:
        return []
    traces: dict[int, list] = {}

    def trace_at_root(u: int) -> list:
        w = [0] * (len(g) - 1)
        uu = u
        for fb in frob:
            fbr = _c2_mod(fb, g, fmul, 1)
            for i, c in enumerate(fbr):
                if c:
                    w[i] ^= fmul(uu, c) if uu != 1 else c
            uu = fsquare(uu)
        return _c2_trim(w)

    roots: list[int] = []
    stack = [g]
    while stack:
        hcur = stack.pop()
        if len(hcur) == 2:
            c0, c1 = hcur
            roots.append(c0 if c1 == 1 else fmul(c0, finv(c1)))
            continue
        # u walks the power basis z^j: the trace form is nondegenerate, so
        # some basis element separates any fixed pair of distinct roots
        for j in range(kappa):
            u = 1 << j if field.order > 2 else 1
            w = traces.get(u)
            if w is None:
                w = traces[u] = trace_at_root(u)
            wr = _c2_mod(w, hcur, fmul, finv(hcur[-1])) if len(w) >= len(hcur) else _c2_trim(w[:])
            d = _c2_gcd(hcur, wr, fmul, finv)
            if 1 < len(d) < len(hcur):
                stack.append(d)
                stack.append(_c2_quot(hcur, d, fmul, finv))
                break
        else:
            raise RuntimeError("trace splitting failed on distinct roots")
    return roots


def _c2_quot(a: list, b: list, fmul, finv) -> list:
    a = a[:]
    db = len(b) - 1
    binv = finv(b[-1])
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            qc = fmul(c, binv) if binv != 1 else c
            quo[i - db] = qc
            off = i - db
            for j in range(db + 1):
                bj = b[j]
                if bj:
                    a[off + j] ^= fmul(qc, bj)
    return _c2_trim(quo)


def _split_linear_odd(g: UniPoly, field) -> list[int]:
    """Split a product of distinct linear factors over an odd-order field
    via the quadratic character of X + u, u walking a fixed sequence."""
    half = (field.order - 1) // 2
    one = UniPoly.one(field)
    roots: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        if h.degree == 1:
            roots.append(field.neg(h.monic().coeffs[0]))
            continue
        for u in field.elements():
            shifted = UniPoly(field, (u, 1))
            w = shifted.pow_mod(half, h) - one
            d = w.gcd(h)
            if 0 < d.degree < h.degree:
                stack.append(d)
                stack.append(h.divmod_by(d)[0])
                break
        else:
            raise RuntimeError("character splitting failed on distinct roots")
    return roots
