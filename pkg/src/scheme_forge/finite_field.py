"""Concrete models of F_{p^f} with full log / antilog / trace tables.

Elements are encoded as integers in [0, q): the base-p digit string of the
code is the coefficient vector (constant term first) of the residue modulo
the chosen primitive polynomial.  The generator gamma is always the residue
of the indeterminate x, so discrete logs are defined relative to the
lexicographically least primitive modulus (or the seed-th one).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import (DegreeZero, FieldTooLarge, InvalidElement, NotCoprime,
                     NotPrime, ZeroElement)

DEFAULT_CAP = 1 << 26


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(m: int, n: int) -> int:
    """Least e >= 1 with m^e = 1 (mod n)."""
    if n < 1:
        raise NotCoprime(f"invalid modulus {n}")
    import math

    if math.gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) != 1")
    if n == 1:
        return 1
    acc = m % n
    e = 1
    while acc != 1:
        acc = (acc * m) % n
        e += 1
    return e


# --- polynomial helpers over F_p (lists, constant term first) ---------------

def _poly_mul_mod(a, b, mlow, f, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by x^f = -mlow
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(f):
                prod[k - f + i] = (prod[k - f + i] - c * mlow[i]) % p
    prod = prod[:f]
    return prod + [0] * (f - len(prod))


def _poly_pow_mod(base, e, mlow, f, p):
    result = [1] + [0] * (f - 1)
    acc = list(base)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, acc, mlow, f, p)
        acc = _poly_mul_mod(acc, acc, mlow, f, p)
        e >>= 1
    return result


def _x_is_primitive(mlow, f, p, q, q1_factors):
    """True iff the residue of x has multiplicative order q-1 mod (mlow, p).

    Order exactly q-1 forces the quotient ring to be a field (it then has
    q-1 units), so this single test subsumes irreducibility.
    """
    if mlow[0] == 0:  # x divides the modulus
        return False
    one = [1] + [0] * (f - 1)
    x = ([0, 1] + [0] * (f - 2))[:f] if f > 1 else [(-mlow[0]) % p]
    if _poly_pow_mod(x, q - 1, mlow, f, p) != one:
        return False
    for r in q1_factors:
        if _poly_pow_mod(x, (q - 1) // r, mlow, f, p) == one:
            return False
    return True


@dataclass
class FieldSpec:
    """Immutable model of F_{p^f}; share freely, never mutate the tables."""

    p: int
    f: int
    q: int
    modulus: tuple[int, ...]      # monic, constant term first, length f+1
    gamma_poly: tuple[int, ...]   # coefficients of gamma, length f
    antilog_table: np.ndarray     # exponent -> element code, length q-1
    log_table: np.ndarray         # element code -> exponent, log[0] = -1
    trace_table: np.ndarray       # element code -> tr(x) in [0, p)
    _places: np.ndarray = dataclass_field(repr=False, default=None)

    def __post_init__(self):
        if self._places is None:
            self._places = self.p ** np.arange(self.f, dtype=np.int64)

    # --- element operations -------------------------------------------------

    def check_element(self, x: int) -> int:
        if not (0 <= x < self.q):
            raise InvalidElement(f"code {x} outside [0, {self.q})")
        return x

    def trace(self, x: int) -> int:
        return int(self.trace_table[self.check_element(x)])

    def discrete_log(self, x: int) -> int:
        self.check_element(x)
        if x == 0:
            raise ZeroElement("discrete log of 0")
        return int(self.log_table[x])

    def power_of_gamma(self, e: int) -> int:
        return int(self.antilog_table[e % (self.q - 1)])

    def add(self, x: int, y: int) -> int:
        p = self.p
        res, pl = 0, 1
        for _ in range(self.f):
            res += ((x + y) % p) * pl
            x //= p
            y //= p
            pl *= p
        return res

    def neg(self, x: int) -> int:
        p = self.p
        res, pl = 0, 1
        for _ in range(self.f):
            res += ((-x) % p) * pl
            x //= p
            pl *= p
        return res

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        e = (int(self.log_table[x]) + int(self.log_table[y])) % (self.q - 1)
        return int(self.antilog_table[e])

    def frobenius(self, x: int) -> int:
        if x == 0:
            return 0
        return int(self.antilog_table[(self.p * int(self.log_table[x])) % (self.q - 1)])

    def norm(self, x: int) -> int:
        """Norm down to F_p, returned as an integer in [0, p)."""
        if x == 0:
            return 0
        e = int(self.log_table[x]) * ((self.q - 1) // (self.p - 1))
        return int(self.antilog_table[e % (self.q - 1)])

    # --- vectorised code arithmetic ------------------------------------------

    def sub_vec(self, z: int, codes: np.ndarray) -> np.ndarray:
        """z - codes, elementwise over an int array of codes."""
        p = self.p
        res = np.zeros(codes.shape, dtype=np.int64)
        zz = z
        cc = codes.astype(np.int64)
        for i in range(self.f):
            res += (((zz % p) - (cc % p)) % p) * int(self._places[i])
            zz //= p
            cc = cc // p
        return res

    # --- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "modulus_coeffs": list(self.modulus),
            "gamma_coeffs": list(self.gamma_poly),
        }

    @classmethod
    def from_json(cls, doc: dict, cap: int = DEFAULT_CAP) -> "FieldSpec":
        obj = doc if isinstance(doc, dict) else json.loads(doc)
        mod = list(obj["modulus_coeffs"])
        fld = _build_from_modulus(obj["p"], obj["f"], mod[:-1], cap)
        if list(fld.gamma_poly) != list(obj["gamma_coeffs"]):
            raise InvalidElement("gamma_coeffs do not match the rebuilt field")
        return fld


def _build_from_modulus(p: int, f: int, mlow: list[int], cap: int) -> FieldSpec:
    q = p ** f
    if q > cap:
        raise FieldTooLarge(f"q = {p}^{f} = {q} exceeds cap {cap}")
    q1_factors = prime_factors(q - 1)
    if not _x_is_primitive(mlow, f, p, q, q1_factors):
        raise InvalidElement("modulus is not primitive")

    antilog = np.asarray(_kernels.antilog_table(p, f, q, mlow), dtype=np.int32)
    log = np.full(q, -1, dtype=np.int32)
    log[antilog] = np.arange(q - 1, dtype=np.int32)

    # trace is F_p-linear: tr(code) = sum_i digit_i * tr(x^i)
    basis_tr = []
    x = ([0, 1] + [0] * (f - 2))[:f] if f > 1 else [(-mlow[0]) % p]
    for i in range(f):
        xi = _poly_pow_mod(x, i, mlow, f, p) if i else [1] + [0] * (f - 1)
        acc = [0] * f
        for j in range(f):
            frob = _poly_pow_mod(xi, p ** j, mlow, f, p)
            acc = [(a + b) % p for a, b in zip(acc, frob)]
        if any(acc[1:]):
            raise InvalidElement("trace of basis element not in the prime field")
        basis_tr.append(acc[0])

    codes = np.arange(q, dtype=np.int64)
    tr = np.zeros(q, dtype=np.int64)
    tmp = codes
    for i in range(f):
        tr += (tmp % p) * basis_tr[i]
        tmp = tmp // p
    trace = (tr % p).astype(np.int32)

    gamma = tuple(x + [0] * (f - len(x))) if f > 1 else (x[0],)
    return FieldSpec(p=p, f=f, q=q,
                     modulus=tuple(mlow) + (1,),
                     gamma_poly=gamma,
                     antilog_table=antilog,
                     log_table=log,
                     trace_table=trace)


def _primitive_constant_terms(p: int, f: int) -> set[int]:
    """Constant terms a primitive degree-f polynomial can have.

    The product of the roots of a primitive polynomial is the norm of a
    generator, a primitive root of F_p, so c_0 = (-1)^f * (primitive root).
    Pruning on this cuts the lexicographic scan by orders of magnitude.
    """
    p1_factors = prime_factors(p - 1)
    roots = {g for g in range(1, p)
             if all(pow(g, (p - 1) // r, p) != 1 for r in p1_factors)}
    if p == 2:
        roots = {1}
    sign = 1 if f % 2 == 0 else -1
    return {(sign * g) % p for g in roots}


@lru_cache(maxsize=32)
def _build_field_cached(p: int, f: int, seed: int | None, cap: int) -> FieldSpec:
    q = p ** f
    q1_factors = prime_factors(q - 1)
    good_c0 = _primitive_constant_terms(p, f)
    want = 0 if seed is None else int(seed)
    found = 0
    # lexicographic on (c_0, ..., c_{f-1}): c_0 is the most significant digit
    for c0 in sorted(good_c0):
        for rest in range(p ** (f - 1)):
            digs = []
            r = rest
            for _ in range(f - 1):
                digs.append(r % p)
                r //= p
            mlow = [c0] + digs[::-1]
            if _x_is_primitive(mlow, f, p, q, q1_factors):
                if found == want:
                    return _build_from_modulus(p, f, mlow, cap)
                found += 1
    raise InvalidElement(f"no primitive polynomial found for p={p}, f={f}")


def build_field(p: int, f: int, seed: int | None = None,
                cap: int = DEFAULT_CAP) -> FieldSpec:
    """Deterministic construction of F_{p^f}.

    Scans monic degree-f polynomials in lexicographic order of their
    constant-first coefficient list and takes the seed-th one whose root
    generates the multiplicative group (seed None or 0: the least).
    Results are cached; treat the returned tables as read-only.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {f}")
    if p ** f > cap:
        raise FieldTooLarge(f"q = {p}^{f} = {p ** f} exceeds cap {cap}")
    return _build_field_cached(p, f, seed, cap)
