"""Quotients of skew morphisms of Z_n.

Every skew morphism f of Z_n with order m induces a skew morphism of
Z_m relative to a chosen generator g of Z_n, called the quotient of f.
With the generator orbit t_i = f^i(g), the quotient is given in closed
form by partial sums of power-function values:

    Q(k) = sum_{i<k} pi(t_i)   (mod m),   k in [0, m).

The quotient classifies f: it is the identity exactly when f is an
automorphism, and (for proper f) a non-trivial automorphism exactly
when f is coset-preserving.  `check_quotient_laws` exposes the three
compatibility laws between f and Q as a checkable report.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .skew_core import (
    InternalCheckError,
    SkewMorphism,
    SkewMorphismError,
    verify,
    _require,
)


class QuotientNotSkewError(InternalCheckError):
    """The partial-sum quotient failed verification: an implementation bug."""


@dataclass(frozen=True)
class QuotientData:
    """The quotient skew morphism on Z_m together with its provenance."""

    quotient: SkewMorphism
    generator_g: int

    @property
    def m(self) -> int:
        return self.quotient.n

    @property
    def images_bar(self) -> tuple[int, ...]:
        return self.quotient.images

    @property
    def pi_bar(self) -> tuple[int, ...]:
        return self.quotient.pi

    @property
    def ord_bar(self) -> int:
        return self.quotient.order


def generator_orbit(phi: SkewMorphism, g: int) -> list[int]:
    """The orbit g, f(g), ..., f^{ord-1}(g); always of length ord(f)."""
    orbit = [g % phi.n]
    for _ in range(phi.order - 1):
        orbit.append(phi.images[orbit[-1]])
    _require(len(set(orbit)) == phi.order, "generator orbit must have ord(f) elements")
    return orbit


def quotient_of(phi: SkewMorphism, g: int = 1) -> QuotientData:
    """The quotient of f with respect to the generator g (default 1)."""
    n = phi.n
    if n == 1:
        g = 0  # Z_1 has only the zero residue
    elif gcd(g, n) != 1:
        raise ValueError(f"{g} is not a unit mod {n}")
    m = phi.order
    orbit = generator_orbit(phi, g)
    imgs = []
    acc = 0
    for i in range(m):
        imgs.append(acc % m)
        acc += phi.pi[orbit[i]]
    try:
        q = verify(m, tuple(imgs))
    except SkewMorphismError as exc:  # pragma: no cover - guaranteed skew
        raise QuotientNotSkewError(f"quotient of {phi!r} failed verification: {exc}") from exc

    _require(q.order == n // phi.kernel_order, "ord of quotient must be n/|kernel|")
    _require(q.is_identity == phi.automorphism, "identity quotient iff automorphism")
    if phi.proper:
        _require(
            q.automorphism == phi.coset_preserving,
            "automorphism quotient iff coset-preserving (proper case)",
        )
    return QuotientData(quotient=q, generator_g=g)


def barpi_index(phi: SkewMorphism, g: int, k: int) -> int:
    """Coset index t with f^k(g) in K + t*g, i.e. f^k(g) * g^{-1} mod n/|K|."""
    n = phi.n
    if n > 1 and gcd(g, n) != 1:
        raise ValueError(f"{g} is not a unit mod {n}")
    r = n // phi.kernel_order
    if r == 1:
        return 0
    x = g % n
    for _ in range(k % phi.order):
        x = phi.images[x]
    return x * pow(g, -1, r) % r


@dataclass
class QuotientLawReport:
    """Outcome of the quotient-law checks; empty failure list means pass."""

    n: int
    generator_g: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_quotient_laws(phi: SkewMorphism, g: int = 1) -> QuotientLawReport:
    """Check the three compatibility laws between f and its quotient Q.

    (a) pi(k*g) = Q^k(1) (mod m) for all k in [0, n);
    (b) the periodicity of f equals m / |ker Q|;
    (c) the coset index of f^k(g) equals Q's power function at k (mod ord Q).
    """
    n = phi.n
    qd = quotient_of(phi, g)
    q = qd.quotient
    m = qd.m
    g = qd.generator_g
    failures: list[str] = []

    # (a): walk the Q-orbit of the quotient generator alongside pi
    if m == 1:
        if any(v != 1 for v in phi.pi):
            failures.append("law (a): trivial quotient but non-constant power function")
    else:
        z = 1
        for k in range(n):
            if phi.pi[k * g % n] % m != z % m:
                failures.append(
                    f"law (a) fails at k={k}: pi={phi.pi[k * g % n]} vs Q^k(1)={z}"
                )
                break
            z = q.images[z]

    # (b): periodicity from the kernel of the quotient
    expect_p = m // q.kernel_order
    if phi.periodicity != expect_p:
        failures.append(
            f"law (b) fails: periodicity {phi.periodicity} != m/|ker Q| = {expect_p}"
        )

    # (c): coset index of f^k(g) against pi_bar
    r = q.order
    for k in range(m):
        want = q.pi[k] % r if r > 1 else 0
        got = barpi_index(phi, g, k)
        if got != want:
            failures.append(f"law (c) fails at k={k}: coset index {got} != pi_bar {want}")
            break

    return QuotientLawReport(n=n, generator_g=g, failures=failures)
