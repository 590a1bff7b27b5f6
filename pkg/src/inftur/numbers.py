"""Prime-field arithmetic, primality and the prime-window search."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoPrimeInWindow, OrderUnavailable

# Deterministic for all n < 3.3e24, which covers the 64-bit range.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin primality test for non-negative integers."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m < 2:
        return False
    for q in _WITNESSES:
        if m % q == 0:
            return m == q
    d, r = m - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _WITNESSES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be prime and at least 3, got {self.p!r}")

    def __int__(self):
        return self.p

    def element(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.p:
            raise ValueError(f"value {self.value} not reduced mod {self.modulus.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("field elements from different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return self.modulus.element(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.modulus.element(self.value - self._coerce(other))

    def __neg__(self):
        return self.modulus.element(-self.value)

    def __mul__(self, other):
        return self.modulus.element(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self.modulus.element(pow(self.value, e, self.modulus.p))

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.modulus.element(pow(self.value, -1, self.modulus.p))

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return self.value == other % self.modulus.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus.p))

    def __repr__(self):
        return f"{self.value} (mod {self.modulus.p})"


def multiplicative_order(g: int, p: int) -> int:
    if g % p == 0:
        raise ValueError("0 has no multiplicative order")
    n = p - 1
    order = n
    for q in _prime_factors(n):
        while order % q == 0 and pow(g, order // q, p) == 1:
            order //= q
    return order


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def element_of_order(p: PrimeModulus | int, t: int) -> FieldElement:
    """Smallest g in F_p^* whose multiplicative order is exactly ``t``."""
    if not isinstance(p, PrimeModulus):
        p = PrimeModulus(p)
    q = p.p
    if t < 1 or (q - 1) % t:
        raise OrderUnavailable(f"t={t} does not divide p-1={q - 1}")
    for g in range(1, q):
        if multiplicative_order(g, q) == t:
            return p.element(g)
    raise AssertionError("cyclic group has elements of every order dividing p-1")


def prime_window(n: int, t: int) -> tuple[float, float]:
    """Closed window [sqrt(nt) - n^(1/3), sqrt(nt)] searched by :func:`prime_search`."""
    hi = math.sqrt(n * t)
    return hi - n ** (1.0 / 3.0), hi


def prime_search(n: int, t: int) -> int:
    """Largest odd prime p = 1 (mod t) with sqrt(nt) - n^(1/3) <= p <= sqrt(nt)."""
    if n < 2 or t < 1:
        raise ValueError("need n >= 2 and t >= 1")
    lo, _ = prime_window(n, t)
    top = math.isqrt(n * t)  # exact floor of sqrt(nt)
    for p in range(top, max(2, math.ceil(lo)) - 1, -1):
        if p >= 3 and p >= lo and (p - 1) % t == 0 and is_prime(p):
            return p
    raise NoPrimeInWindow(f"no prime p = 1 (mod {t}) in [{lo:.6g}, {math.sqrt(n * t):.6g}]")
