"""Generating functions for a_r(n) and c(n), with brute-force oracles."""

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import series as S

ORACLE_MAX_N = 14


@dataclass(frozen=True)
class PartitionSeriesRequest:
    r: int
    trunc: int
    modulus: int = 0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"r must be at least 1, got {self.r}")
        if self.trunc < 0:
            raise ValueError("trunc must be non-negative")


@dataclass(frozen=True)
class CSeries:
    trunc: int
    modulus: int
    series: S.TruncatedSeries

    def __getitem__(self, n):
        return self.series[n]

    @property
    def coefficients(self):
        return self.series.tolist()


def a_r_series(req):
    """sum a_r(n) q^n = f_2^(r-1) / f_1^r, exact or mod req.modulus."""
    num = S.euler_factor(2, req.r - 1, req.trunc, req.modulus)
    den = S.euler_factor(1, -req.r, req.trunc, req.modulus)
    return S.mul(num, den)


def a_r(r, trunc, modulus=0):
    return a_r_series(PartitionSeriesRequest(r, trunc, modulus))


def c_series(trunc, modulus=0):
    """Coefficients of f_1 * f_2^2 as a product of three sparse factors."""
    f1 = S.pentagonal(1, trunc, modulus)
    f2 = S.pentagonal(2, trunc, modulus)
    return CSeries(trunc, modulus, S.mul(S.mul(f1, f2), f2))


def c_by_literal_product(trunc):
    """c(0..trunc) from the literal products prod(1-q^n) (1-q^2n)^2, no pentagonal shortcut."""
    coeffs = [1] + [0] * trunc
    factors = [(k, 1) for k in range(1, trunc + 1)]
    factors += [(2 * k, 2) for k in range(1, trunc // 2 + 1)]
    for step, times in factors:
        for _ in range(times):
            for n in range(trunc, step - 1, -1):
                coeffs[n] -= coeffs[n - step]
    return coeffs


def enumerate_colored_partitions(n, r):
    """Count partitions of n whose odd parts each carry one of r colours.

    Walks part sizes from largest to smallest; a part size used j times
    contributes 1 way when even and C(j + r - 1, r - 1) ways (a multiset of
    colours) when odd.
    """
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_N}, got {n}")
    if r < 1:
        raise ValueError("r must be positive")

    @lru_cache(maxsize=None)
    def count(rest, largest):
        if rest == 0:
            return 1
        if largest == 0:
            return 0
        total = 0
        for j in range(rest // largest + 1):
            ways = comb(j + r - 1, r - 1) if largest % 2 else 1
            total += ways * count(rest - j * largest, largest - 1)
        return total

    return count(n, n)


def p_euler_oracle(n_max):
    """p(0..n_max) by the pentagonal recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p
