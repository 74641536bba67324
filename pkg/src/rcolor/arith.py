"""Elementary number theory: Legendre/Kronecker symbols and primality."""

from math import gcd, isqrt

# Deterministic Miller-Rabin witnesses for every n < 3.3e24 (covers 64-bit).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n):
    """Deterministic primality test, exact for all n < 2**64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def trial_division_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def prime_divisors(n):
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primes_in(lo, hi):
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def legendre(n, p):
    """Legendre symbol (n/p) for an odd prime p, by Euler's criterion.

    Returns 1, 0 or -1.
    """
    if p < 3 or not is_prime(p):
        raise ValueError(f"legendre symbol needs an odd prime, got {p}")
    r = pow(n % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def legendre_table(n, p):
    """Legendre symbol from the exhaustive table of squares mod p."""
    n %= p
    if n == 0:
        return 0
    squares = {x * x % p for x in range(1, p)}
    return 1 if n in squares else -1


def jacobi(a, n):
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol needs an odd positive bottom")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a, n):
    """Kronecker symbol (a/n) for arbitrary integers a and n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = 0
        while n % 2 == 0:
            n //= 2
            v += 1
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


def coprime(a, b):
    return gcd(a, b) == 1
