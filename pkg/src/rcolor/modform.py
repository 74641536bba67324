"""Eta-quotients, the holomorphy/level criteria, Sturm bounds and Hecke T_p."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import series as S
from .arith import is_prime, kronecker, prime_divisors


@dataclass(frozen=True)
class EtaQuotient:
    """prod over delta | N of eta(delta z)^r_delta."""

    level: int
    factors: tuple  # sorted ((delta, r_delta), ...)

    def __init__(self, level, factors):
        items = factors.items() if isinstance(factors, dict) else factors
        clean = tuple(sorted((int(d), int(r)) for d, r in items if int(r) != 0))
        if level < 1:
            raise ValueError("level must be positive")
        if not clean:
            raise ValueError("eta-quotient needs at least one nonzero exponent")
        for d, _ in clean:
            if d < 1 or level % d:
                raise ValueError(f"delta={d} does not divide level {level}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "factors", clean)

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["N"]), {int(k): int(v) for k, v in obj["factors"].items()})

    def to_json(self):
        return {"N": self.level, "factors": {str(d): r for d, r in self.factors}}

    @property
    def exponents(self):
        return dict(self.factors)


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass
class FormMeta:
    weight: Fraction
    offset24: int
    character_disc: int
    cond_sum1: int
    cond_sum2: int
    cusp_orders: dict
    sturm: int
    eisenstein_weight: int = 0
    failures: list = field(default_factory=list)

    @property
    def passes(self):
        return not self.failures

    @property
    def total_weight(self):
        return self.weight + self.eisenstein_weight

    def to_json(self):
        return {
            "weight": str(self.weight),
            "total_weight": str(self.total_weight),
            "offset24": self.offset24,
            "leading_exponent": str(Fraction(self.offset24, 24)),
            "character_disc": self.character_disc,
            "cond_sum1_mod24": self.cond_sum1,
            "cond_sum2_mod24": self.cond_sum2,
            "cusp_orders": {str(d): str(v) for d, v in self.cusp_orders.items()},
            "sturm": self.sturm,
            "passes": self.passes,
            "failures": list(self.failures),
        }


def sturm_bound(k, level):
    """floor(k N / 12 * prod_{t | N prime} (1 + 1/t))."""
    if k <= 0 or level <= 0:
        raise ValueError("weight and level must be positive")
    b = Fraction(k * level, 12)
    for t in prime_divisors(level):
        b *= Fraction(t + 1, t)
    return b.numerator // b.denominator


def analyze(eq, e4_power=0):
    """Weight, character and the three eta-quotient conditions for eq.

    e4_power multiplies in E_4^e4_power, which only raises the weight; E_4 is
    taken to be a level-1 form of weight 4.
    """
    N = eq.level
    r = eq.exponents
    weight = Fraction(sum(r.values()), 2)
    sum1 = sum(d * x for d, x in r.items())
    sum2 = sum((N // d) * x for d, x in r.items())
    prod = Fraction(1)
    for d, x in r.items():
        prod *= Fraction(d) ** x
    failures = []
    if weight.denominator != 1:
        failures.append("weight is not an integer")
    if sum1 % 24:
        failures.append(f"sum delta*r = {sum1} is not 0 mod 24")
    if sum2 % 24:
        failures.append(f"sum (N/delta)*r = {sum2} is not 0 mod 24")
    cusps = {}
    for d in divisors(N):
        v = sum(Fraction(gcd(d, dl) ** 2 * x, dl) for dl, x in r.items())
        cusps[d] = v
        if v < 0:
            failures.append(f"negative order {v} at cusp d={d}")
    if weight.denominator == 1 and prod.denominator == 1:
        disc = (-1) ** int(weight) * prod.numerator
    elif prod.denominator == 1:
        disc = prod.numerator
    else:
        # character undefined for a non-integral product; keep numerator*denominator
        disc = prod.numerator * prod.denominator
        failures.append("prod delta^r is not an integer")
    total = weight + 4 * e4_power
    sturm = sturm_bound(int(total), N) if total.denominator == 1 and total > 0 else 0
    return FormMeta(weight, sum1, disc, sum1 % 24, sum2 % 24, cusps, sturm,
                    4 * e4_power, failures)


def character_at(eq, d):
    return kronecker(analyze(eq).character_disc, d)


def eta_expansion(eq, trunc, modulus=0, materialize=True):
    """q-expansion of the eta-quotient; integral leading powers are folded in."""
    out = S.one(trunc, modulus)
    for d, x in eq.factors:
        out = S.mul(out, S.euler_factor(d, x, trunc, modulus))
    off = sum(d * x for d, x in eq.factors)
    out = S.shift_offset(out, off)
    if materialize and off % 24 == 0:
        out = S.shift_offset(out, 0, materialize=True)
    return out


def hecke_Tp(f, p, k, chi_p, out_trunc=None):
    """b(n) = a(pn) + chi(p) p^(k-1) a(n/p), with a(n/p) = 0 unless p | n."""
    if not is_prime(p):
        raise ValueError(f"T_p needs a prime, got {p}")
    if k < 1:
        raise ValueError("T_p is implemented for positive integral weight")
    if f.offset24 != 0:
        raise S.SeriesError("Hecke operator needs integral exponents; materialise first")
    if out_trunc is None:
        out_trunc = f.trunc // p
    if p * out_trunc > f.trunc:
        raise S.SeriesError(f"T_{p} to order {out_trunc} needs input order {p * out_trunc}")
    m = f.modulus
    coeffs = f.coeffs
    b = coeffs[: p * out_trunc + 1 : p].copy()
    lam = chi_p * p ** (k - 1)
    if lam:
        if m:
            lam %= m
        if lam:
            tail = coeffs[: out_trunc // p + 1]
            b[::p] = b[::p] + lam * tail if not m else (b[::p] + (lam * tail) % m) % m
    return S.TruncatedSeries._wrap(np.ascontiguousarray(b), m, 0)


def hecke_dilation(f, p, times=1):
    """The mod-p reduction of T_p for k > 1: b(n) = a(pn), applied `times` times."""
    out = f
    for _ in range(times):
        out = S.extract(out, p)
    return out
