"""Exact arithmetic over prime-power finite fields GF(p^m).

Elements are encoded as integers: the polynomial a_0 + a_1*x + ... with
coefficients a_i in [0, p) is stored as sum(a_i * p**i).  For prime fields
(m = 1) this is ordinary arithmetic mod p.  For extension fields a canonical
irreducible modulus is chosen deterministically: the lexicographically least
coefficient list [a_0, ..., a_{m-1}, 1] among monic irreducibles of degree m.

Multiplication and inversion go through discrete-log (exp/log) tables built
once per field, so every field up to the size cap of 2**20 supports O(1)
scalar arithmetic.  Dense q x q tables for the vectorized kernels are built
lazily for small fields only.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 2**20

# q x q lookup tables are only materialized below this size.
_DENSE_TABLE_LIMIT = 4096


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial helpers over GF(p).  Polynomials are coefficient lists in
# ascending degree with no trailing zeros (except [] for the zero polynomial).
# ---------------------------------------------------------------------------


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    while len(num) - 1 >= dd and num:
        shift = len(num) - 1 - dd
        factor = (num[-1] * inv_lead) % p
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * d) % p
        _poly_trim(num)
    return num


def _poly_is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    m = len(coeffs) - 1
    if m < 1:
        return False
    if coeffs[0] == 0:  # divisible by x
        return m == 1
    # Degree-1 divisors: root search.
    for r in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
        if acc == 0:
            return m == 1
    if m <= 3:
        return True  # no roots and degree <= 3 => irreducible
    for d in range(2, m // 2 + 1):
        # all monic polynomials of degree d
        for idx in range(p**d):
            div = []
            t = idx
            for _ in range(d):
                div.append(t % p)
                t //= p
            div.append(1)
            if not _poly_mod(coeffs, div, p):
                return False
    return True


@lru_cache(maxsize=None)
def _canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible [a_0..a_{m-1}, 1] over GF(p)."""
    for idx in range(p**m):
        low = []
        t = idx
        for _ in range(m):
            low.append(t % p)
            t //= p
        coeffs = low + [1]
        if _poly_is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """A finite field GF(q), q = p^m, with canonical integer element encoding.

    Parameters
    ----------
    p : int
        Prime characteristic.
    m : int
        Extension degree (1 for prime fields).
    modulus : sequence of int, optional
        Coefficient list [a_0, ..., a_{m-1}, 1] of a monic irreducible of
        degree m over GF(p).  Defaults to the canonical (lex-least) one.
    """

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {q} exceeds cap {MAX_FIELD_SIZE}")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            self.modulus: tuple[int, ...] = ()
        elif modulus is not None:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if not _poly_is_irreducible(list(modulus), p):
                raise ValueError("modulus is not irreducible over GF(p)")
            self.modulus = modulus
        else:
            self.modulus = _canonical_modulus(p, m)
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self._mul_table: np.ndarray | None = None
        self._add_table: np.ndarray | None = None
        if m > 1 or q <= _DENSE_TABLE_LIMIT:
            self._build_exp_log()

    # -- encoding ----------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        """Base-p coefficient vector of an encoded element (length m)."""
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def pack(self, coeffs) -> int:
        acc = 0
        for c in reversed(list(coeffs)):
            acc = acc * self.p + c % self.p
        return acc

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"element {a} out of range for GF({self.q})")
        return a

    # -- raw polynomial arithmetic (used to bootstrap tables) --------------

    def _raw_mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % self.p
        prod = _poly_mod(prod, list(self.modulus), self.p)
        return self.pack(prod + [0] * (self.m - len(prod)))

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _build_exp_log(self) -> None:
        q = self.q
        factors = _prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            if all(self._raw_pow(g, (q - 1) // f) != 1 for f in factors):
                gen = g
                break
        if gen is None:  # only GF(2): q - 1 == 1
            gen = 1
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, gen)
        exp[q - 1 :] = exp[: q - 1]
        self._exp, self._log = exp, log

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.pack(
            (ca + cb) % self.p for ca, cb in zip(self.digits(a), self.digits(b))
        )

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.pack((-c) % self.p for c in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self.check(a)
        self.check(b)
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return (a * b) % self.p
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        self.check(a)
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self._exp is None:
            return pow(a, -1, self.p)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        if self._exp is None:
            return pow(a, e, self.p)
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    # -- vectorized helpers ------------------------------------------------

    def add_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.m):
            out += ((a // pw % self.p + b // pw % self.p) % self.p) * pw
            pw *= self.p
        return out

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._exp is None:
            return (a * b) % self.p
        nz = (a != 0) & (b != 0)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        la = self._log[a * nz]
        lb = self._log[b * nz]
        out[...] = self._exp[la + lb]
        out[~nz] = 0
        return out

    # -- dense tables for the jit kernels ----------------------------------

    def dense_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add_table, mul_table), each q x q int64.  Small fields only."""
        if self.q > _DENSE_TABLE_LIMIT:
            raise ValueError(
                f"dense tables unsupported for q={self.q} (limit {_DENSE_TABLE_LIMIT})"
            )
        if self._mul_table is None:
            idx = np.arange(self.q, dtype=np.int64)
            self._add_table = self.add_vec(idx[:, None], idx[None, :])
            self._mul_table = self.mul_vec(idx[:, None], idx[None, :])
        return self._add_table, self._mul_table

    # -- misc --------------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "Field":
        modulus = obj.get("modulus") or None
        return cls(int(obj["p"]), int(obj.get("m", 1)), modulus)


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int) -> Field:
    return Field(p, m)


def field_new(p: int, m: int = 1) -> Field:
    """Construct GF(p^m) with the canonical modulus (cached)."""
    return _cached_field(p, m)


def field_from_size(q: int) -> Field:
    """Construct GF(q) by factoring q as a prime power."""
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q}")
    for p in _prime_factors(q):
        m = 0
        t = q
        while t % p == 0:
            t //= p
            m += 1
        if t == 1:
            return field_new(p, m)
        break
    raise ValueError(f"{q} is not a prime power")


def field_mul(f: Field, a: int, b: int) -> int:
    return f.mul(a, b)


def field_inv(f: Field, a: int) -> int:
    return f.inv(a)


def field_add(f: Field, a: int, b: int) -> int:
    return f.add(f.check(a), f.check(b))
