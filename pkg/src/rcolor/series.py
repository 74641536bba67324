"""Truncated power series in q over Z or Z/mZ.

Exact series store Python integers in an object array; modular series
store canonical residues in an int64 array.  Every series carries an
offset in 1/24 units so that eta-quotient prefactors q^(k/24) can be
tracked without rational arithmetic.
"""

import numpy as np

from .arith import is_prime

MAX_MODULUS = 2**31
_ACC_LIMIT = 2**62
SPARSE_RATIO = 8
_BASE_BLOCK = 32

# Toggle for the Frobenius shortcut in power(); tests flip it off to compare.
FROBENIUS = True


class SeriesError(ValueError):
    pass


def _dtype(modulus):
    return np.int64 if modulus else object


def _check_modulus(modulus):
    if modulus < 0 or modulus >= MAX_MODULUS:
        raise SeriesError(f"modulus must lie in [0, 2**31), got {modulus}")


class TruncatedSeries:
    """q^(offset24/24) * sum(coeffs[n] q^n), valid for n <= trunc."""

    __slots__ = ("coeffs", "trunc", "modulus", "offset24")

    def __init__(self, coeffs, trunc=None, modulus=0, offset24=0):
        _check_modulus(modulus)
        if trunc is None:
            trunc = len(coeffs) - 1
        if trunc < 0:
            raise SeriesError("truncation order must be non-negative")
        vals = [int(c) for c in list(coeffs)[: trunc + 1]]
        if modulus:
            vals = [v % modulus for v in vals]
        arr = np.zeros(trunc + 1, dtype=_dtype(modulus))
        arr[: len(vals)] = vals
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "offset24", offset24)

    @classmethod
    def _wrap(cls, arr, modulus, offset24=0):
        # arr must already be canonical for the modulus; takes ownership.
        obj = cls.__new__(cls)
        arr.setflags(write=False)
        object.__setattr__(obj, "coeffs", arr)
        object.__setattr__(obj, "trunc", len(arr) - 1)
        object.__setattr__(obj, "modulus", modulus)
        object.__setattr__(obj, "offset24", offset24)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    def __getitem__(self, n):
        if isinstance(n, slice):
            return [int(c) for c in self.coeffs[n]]
        if n < 0 or n > self.trunc:
            raise IndexError(f"coefficient {n} outside 0..{self.trunc}")
        return int(self.coeffs[n])

    def __len__(self):
        return self.trunc + 1

    def tolist(self):
        return [int(c) for c in self.coeffs]

    def nonzero_count(self):
        return int(np.count_nonzero(self.coeffs))

    def is_sparse(self):
        return self.nonzero_count() * SPARSE_RATIO < len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.trunc == other.trunc
            and self.modulus == other.modulus
            and self.offset24 == other.offset24
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.trunc, self.modulus, self.offset24, tuple(self.tolist()[:16])))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.tolist()[:8])
        more = ", ..." if self.trunc >= 8 else ""
        return (f"TruncatedSeries([{head}{more}], trunc={self.trunc}, "
                f"modulus={self.modulus}, offset24={self.offset24})")

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            return power(invert(self), -e)
        return power(self, e)


def zeros(trunc, modulus=0, offset24=0):
    return TruncatedSeries._wrap(np.zeros(trunc + 1, dtype=_dtype(modulus)), modulus, offset24)


def one(trunc, modulus=0):
    arr = np.zeros(trunc + 1, dtype=_dtype(modulus))
    arr[0] = 1 % modulus if modulus else 1
    return TruncatedSeries._wrap(arr, modulus)


def monomial(k, trunc, modulus=0, coeff=1):
    arr = np.zeros(trunc + 1, dtype=_dtype(modulus))
    if k <= trunc:
        arr[k] = coeff % modulus if modulus else coeff
    return TruncatedSeries._wrap(arr, modulus)


def from_sparse(terms, trunc, modulus=0, offset24=0):
    """Build a series from {exponent: coefficient}; exponents beyond trunc are dropped."""
    arr = np.zeros(trunc + 1, dtype=_dtype(modulus))
    for k, c in terms.items():
        if 0 <= k <= trunc:
            arr[k] += c
    if modulus:
        arr %= modulus
    return TruncatedSeries._wrap(arr, modulus, offset24)


def _same_modulus(a, b):
    if a.modulus != b.modulus:
        raise SeriesError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def add(a, b):
    _same_modulus(a, b)
    if a.offset24 != b.offset24:
        raise SeriesError(f"offset mismatch: {a.offset24} vs {b.offset24}; shift explicitly")
    n = min(a.trunc, b.trunc) + 1
    out = a.coeffs[:n] + b.coeffs[:n]
    if a.modulus:
        out %= a.modulus
    return TruncatedSeries._wrap(out, a.modulus, a.offset24)


def neg(a):
    out = -a.coeffs
    if a.modulus:
        out %= a.modulus
    return TruncatedSeries._wrap(out, a.modulus, a.offset24)


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if a.modulus:
        out = (a.coeffs * (c % a.modulus)) % a.modulus
    else:
        out = a.coeffs * c
    return TruncatedSeries._wrap(out, a.modulus, a.offset24)


def truncate(a, trunc):
    if trunc > a.trunc:
        raise SeriesError(f"cannot extend truncation {a.trunc} to {trunc}")
    return TruncatedSeries._wrap(a.coeffs[: trunc + 1].copy(), a.modulus, a.offset24)


def reduce(a, modulus):
    """Reduce an exact series modulo m."""
    _check_modulus(modulus)
    if a.modulus and a.modulus % modulus:
        raise SeriesError(f"cannot reduce modulus {a.modulus} to {modulus}")
    out = np.array([int(c) % modulus for c in a.coeffs], dtype=np.int64)
    return TruncatedSeries._wrap(out, modulus, a.offset24)


def _signed(c, m):
    c = int(c)
    if m and c > m // 2:
        return c - m
    return c


def _sparse_terms(a, limit):
    idx = np.flatnonzero(a.coeffs[: limit + 1])
    return [(int(j), _signed(a.coeffs[j], a.modulus)) for j in idx]


def _accumulate(dense, terms, n, m):
    """sum over (j, c) of c * q^j * dense, truncated to length n."""
    out = np.zeros(n, dtype=_dtype(m))
    if m:
        bound = max(1, (m // 2 + 1) * (m - 1))
        batch = max(1, _ACC_LIMIT // bound)
    pending = 0
    for j, c in terms:
        if j >= n:
            break
        seg = dense[: n - j]
        if c == 1:
            out[j:] += seg
        elif c == -1:
            out[j:] -= seg
        else:
            out[j:] += c * seg
        if m:
            pending += 1
            if pending >= batch:
                out %= m
                pending = 0
    if m:
        out %= m
    return out


def mul(a, b):
    """Cauchy product to order min(a.trunc, b.trunc); offsets add."""
    _same_modulus(a, b)
    m = a.modulus
    n = min(a.trunc, b.trunc) + 1
    da, db = a.coeffs[:n], b.coeffs[:n]
    nza, nzb = int(np.count_nonzero(da)), int(np.count_nonzero(db))
    off = a.offset24 + b.offset24
    if min(nza, nzb) * SPARSE_RATIO < n:
        dense, sparse = (da, b) if nzb <= nza else (db, a)
        out = _accumulate(dense, _sparse_terms(sparse, n - 1), n, m)
        return TruncatedSeries._wrap(out, m, off)
    if m == 0 or (m - 1) ** 2 * n < 2**63:
        out = np.convolve(da, db)[:n]
        if m:
            out %= m
        return TruncatedSeries._wrap(np.ascontiguousarray(out), m, off)
    out = _accumulate(da, _sparse_terms(b, n - 1), n, m)
    return TruncatedSeries._wrap(out, m, off)


def dilate(a, t, trunc=None):
    """Substitute q -> q^t.  The result is valid up to trunc (default t*a.trunc)."""
    if t < 1:
        raise SeriesError("dilation factor must be positive")
    if trunc is None:
        trunc = t * a.trunc
    if trunc // t > a.trunc:
        raise SeriesError(f"dilation to order {trunc} needs input order {trunc // t}")
    out = np.zeros(trunc + 1, dtype=_dtype(a.modulus))
    k = trunc // t + 1
    out[::t] = a.coeffs[:k]
    return TruncatedSeries._wrap(out, a.modulus, a.offset24 * t)


def extract(a, step, start=0):
    """Series sum a[step*n + start] q^n over the indices available."""
    if not 0 <= start:
        raise SeriesError("start must be non-negative")
    if start > a.trunc:
        raise SeriesError(f"start {start} beyond truncation {a.trunc}")
    out = a.coeffs[start::step].copy()
    return TruncatedSeries._wrap(out, a.modulus, 0)


def _power_plain(a, e):
    n = a.trunc
    if e == 0:
        return one(n, a.modulus)
    if a.is_sparse() and e <= 64:
        result = a
        for _ in range(e - 1):
            result = mul(result, a)
        return result
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def power(a, e, frobenius=None):
    """a**e for e >= 0.

    With a prime modulus t the Frobenius identity a(q)^t = a(q^t) (mod t)
    splits e = t*e' + e0 and recurses on a shorter series.
    """
    if e < 0:
        raise SeriesError("use invert for negative powers")
    if frobenius is None:
        frobenius = FROBENIUS
    t = a.modulus
    if frobenius and t and e >= t and is_prime(t):
        hi, lo = divmod(e, t)
        inner = power(truncate(a, a.trunc // t), hi, frobenius=True)
        outer = dilate(TruncatedSeries._wrap(inner.coeffs.copy(), t, 0), t, a.trunc)
        res = mul(outer, _power_plain(a, lo)) if lo else outer
        return TruncatedSeries._wrap(res.coeffs.copy(), t, a.offset24 * e)
    res = _power_plain(a, e)
    if res.offset24 != a.offset24 * e:
        res = TruncatedSeries._wrap(res.coeffs.copy(), res.modulus, a.offset24 * e)
    return res


pow_series = power


def _inverse_unit(c, m):
    c = int(c)
    if m:
        try:
            return pow(c, -1, m)
        except ValueError:
            raise SeriesError(f"constant term {c} not invertible mod {m}") from None
    if c not in (1, -1):
        raise SeriesError(f"constant term {c} is not a unit in Z")
    return c


def invert(a):
    """Multiplicative inverse to order a.trunc; offset24 negates.

    Runs the recurrence b_n = -a0^-1 * sum_{j>=1} a_j b_{n-j} by divide and
    conquer so that the inner sums become vectorised slice updates.
    """
    m = a.modulus
    n = a.trunc + 1
    inv0 = _inverse_unit(a.coeffs[0], m)
    terms = [(j, c) for j, c in _sparse_terms(a, n - 1) if j > 0]
    b = np.zeros(n, dtype=_dtype(m))
    acc = np.zeros(n, dtype=_dtype(m))
    b[0] = inv0
    if m:
        bound = max(1, (m // 2 + 1) * (m - 1))
        batch = max(1, _ACC_LIMIT // bound)

    def base(lo, hi):
        for k in range(max(lo, 1), hi):
            s = int(acc[k])
            for j, c in terms:
                if j > k - lo:
                    break
                s += c * int(b[k - j])
            v = -inv0 * s
            b[k] = v % m if m else v

    def solve(lo, hi):
        if hi - lo <= _BASE_BLOCK:
            base(lo, hi)
            return
        mid = (lo + hi) // 2
        solve(lo, mid)
        pending = 0
        for j, c in terms:
            if j >= hi - lo:
                break
            s = max(lo, mid - j)
            e = min(mid, hi - j)
            if s >= e:
                continue
            if c == 1:
                acc[s + j:e + j] += b[s:e]
            elif c == -1:
                acc[s + j:e + j] -= b[s:e]
            else:
                acc[s + j:e + j] += c * b[s:e]
            if m:
                pending += 1
                if pending >= batch:
                    acc[mid:hi] %= m
                    pending = 0
        if m:
            acc[mid:hi] %= m
        solve(mid, hi)

    solve(0, n)
    return TruncatedSeries._wrap(b, m, -a.offset24)


def pentagonal(delta, trunc, modulus=0):
    """(q^delta; q^delta)_inf = sum_k (-1)^k q^(delta k(3k-1)/2), truncated."""
    terms = {0: 1}
    k = 1
    while True:
        g1 = delta * k * (3 * k - 1) // 2
        if g1 > trunc:
            break
        sign = -1 if k % 2 else 1
        terms[g1] = sign
        g2 = delta * k * (3 * k + 1) // 2
        if g2 <= trunc:
            terms[g2] = sign
        k += 1
    return from_sparse(terms, trunc, modulus)


def euler_factor(delta, r, trunc, modulus=0):
    """(q^delta; q^delta)_inf ** r to order trunc, offset24 = 0."""
    if delta < 1:
        raise SeriesError("delta must be positive")
    if r == 0:
        return one(trunc, modulus)
    inner = trunc // delta
    base = pentagonal(1, inner, modulus)
    if r > 0:
        core = power(base, r)
    else:
        core = invert(power(base, -r))
    if delta == 1:
        return core
    return dilate(core, delta, trunc)


def shift_offset(a, delta24, materialize=False):
    """Adjust offset24; with materialize, fold an integral offset into the coefficients.

    A positive integral offset k multiplies by q^k keeping trunc; a negative one
    drops k leading coefficients (which must vanish) and lowers trunc by k.
    """
    off = a.offset24 + delta24
    if not materialize:
        return TruncatedSeries._wrap(a.coeffs.copy(), a.modulus, off)
    if off % 24:
        raise SeriesError(f"offset {off}/24 is not an integral power of q")
    k = off // 24
    if k >= 0:
        out = np.zeros(a.trunc + 1, dtype=_dtype(a.modulus))
        out[k:] = a.coeffs[: a.trunc + 1 - k]
        return TruncatedSeries._wrap(out, a.modulus, 0)
    k = -k
    if k > a.trunc or np.count_nonzero(a.coeffs[:k]):
        raise SeriesError("materialising a negative offset would drop nonzero terms")
    return TruncatedSeries._wrap(a.coeffs[k:].copy(), a.modulus, 0)


def sigma(n, k):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein_e4(trunc, modulus=0):
    """E4 = 1 + 240 sum sigma_3(n) q^n."""
    s = np.zeros(trunc + 1, dtype=object)
    for d in range(1, trunc + 1):
        s[d::d] += d**3
    s *= 240
    s[0] = 1
    if modulus:
        return TruncatedSeries._wrap(np.array([int(c) % modulus for c in s], dtype=np.int64), modulus)
    return TruncatedSeries._wrap(s, 0)
