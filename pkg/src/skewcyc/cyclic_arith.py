"""Exact modular and multiplicative number theory on small integers.

Everything here works on plain Python ints.  Residues of Z_n are
0-based: the multiplicative notation b^k for a fixed generator b is
identified with the additive residue k mod n throughout the package.
Factoring is plain trial division, which is all we need for moduli up
to a few times 10^4.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class Residue:
    """A residue k mod m, i.e. the exponent k in b^k for a generator b."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} not in [0, {self.modulus})")

    def __add__(self, other: "Residue") -> "Residue":
        self._check_compatible(other)
        return Residue((self.value + other.value) % self.modulus, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue((-self.value) % self.modulus, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check_compatible(other)
        return Residue((self.value * other.value) % self.modulus, self.modulus)

    def _check_compatible(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} != {other.modulus}")

    def __int__(self) -> int:
        return self.value


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division."""
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    """Number of units mod n, i.e. |{k : 1 <= k <= n, gcd(k, n) = 1}|."""
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    phi = n
    for p in factorize(n):
        phi -= phi // p
    return phi


def divisors(n: int) -> list[int]:
    """All divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def units(m: int) -> list[int]:
    """Sorted units mod m: all s in [1, m) with gcd(s, m) = 1 (empty for m = 1)."""
    if m < 1:
        raise ValueError(f"expected m >= 1, got {m}")
    return [s for s in range(1, m) if gcd(s, m) == 1]


def mult_order(s: int, m: int) -> int:
    """Least t >= 1 with s^t = 1 (mod m); requires gcd(s, m) = 1."""
    if m < 1:
        raise ValueError(f"expected m >= 1, got {m}")
    if gcd(s, m) != 1:
        raise ValueError(f"{s} is not a unit mod {m}")
    one = 1 % m
    t, cur = 1, s % m
    while cur != one:
        cur = cur * s % m
        t += 1
    return t


def dlog_cyclic(d: int, y: int, m: int) -> int:
    """The x in [0, m) with x*d = y (mod m), for d a generator of the additive Z_m.

    This is the discrete logarithm base b^d in a cyclic group written
    multiplicatively; additively it is just division by the unit d.
    """
    if m < 1:
        raise ValueError(f"expected m >= 1, got {m}")
    if gcd(d, m) != 1:
        raise ValueError(f"{d} does not generate Z_{m}")
    return y * pow(d, -1, m) % m


def largest_prime_divisor(n: int) -> int | None:
    """Largest prime dividing n, or None for n = 1."""
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    if n == 1:
        return None
    return max(factorize(n))
