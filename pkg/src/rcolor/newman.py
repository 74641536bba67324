"""Newman's recurrence for c(n), the xi/omega profile of a prime, and the
mod-5 congruence families for a_3 that follow from it."""

from dataclasses import dataclass

from .arith import is_prime, legendre

SCAN_CEILING = 10**7


def newman_shift(p):
    """5(p^2 - 1)/24, the index shift in the recurrence."""
    return 5 * (p * p - 1) // 24


def legendre_arg(p):
    """(5/12)(p^2 - 1)."""
    return 5 * (p * p - 1) // 12


def _need_prime(p, lo=5):
    if p < lo or not is_prime(p):
        raise ValueError(f"need a prime >= {lo}, got {p}")


def _need_exact(c, top):
    if c.modulus:
        raise ValueError("exact c-series required")
    if c.trunc < top:
        raise ValueError(f"c-series truncated at {c.trunc}, need index {top}")


def xi(p, c):
    """c(5(p^2-1)/24) + ((5/12)(p^2-1) / p), computed exactly."""
    _need_prime(p)
    _need_exact(c, newman_shift(p))
    return c[newman_shift(p)] + legendre(legendre_arg(p), p)


def _pm(x, *vals):
    return x % 5 in {v % 5 for v in vals}


def omega(xi_mod5, p_mod5):
    """The exponent period attached to (xi mod 5, p mod 5)."""
    x, q = xi_mod5 % 5, p_mod5 % 5
    if q == 0:
        raise ValueError("omega is undefined for p = 5")
    if x == 0:
        return 4
    one, two = _pm(x, 1, -1), _pm(x, 2, -2)
    if (one and q == 1) or (two and q == 4):
        return 6
    if (two and q == 2) or (one and q == 3):
        return 8
    if (two and q == 1) or (one and q == 4):
        return 10
    return 12


# (xi class, p mod 5) -> omega, written out row by row for cross-checking.
OMEGA_TABLE = {
    **{("0", q): 4 for q in (1, 2, 3, 4)},
    ("pm1", 1): 6, ("pm2", 4): 6,
    ("pm2", 2): 8, ("pm1", 3): 8,
    ("pm2", 1): 10, ("pm1", 4): 10,
    ("pm1", 2): 12, ("pm2", 3): 12,
}


def xi_class(x):
    x %= 5
    return "0" if x == 0 else ("pm1" if x in (1, 4) else "pm2")


@dataclass(frozen=True)
class NewmanProfile:
    p: int
    xi: int
    xi_mod5: int
    p_mod5: int
    omega: int | None

    def to_json(self):
        return {"p": self.p, "xi": self.xi, "xi_mod5": self.xi_mod5,
                "p_mod5": self.p_mod5, "omega": self.omega}


def signed_mod5(x):
    x %= 5
    return x - 5 if x > 2 else x


def profile(p, c):
    x = xi(p, c)
    w = None if p == 5 else omega(x % 5, p % 5)
    return NewmanProfile(p, x, signed_mod5(x), p % 5, w)


@dataclass
class RecurrenceReport:
    p: int
    n_max: int
    xi: int
    ok: bool
    counterexample: dict | None = None

    def to_json(self):
        return {"p": self.p, "n_max": self.n_max, "xi": self.xi, "ok": self.ok,
                "counterexample": self.counterexample}


def recurrence_terms(p, n, c, x):
    """(left, right) of c(p^2 n + s) = (xi - (( -2n + 2s)/p)) c(n) - p c((n - s)/p^2)."""
    s = newman_shift(p)
    left = c[p * p * n + s]
    sym = legendre(-2 * n + legendre_arg(p), p)
    right = (x - sym) * c[n]
    t = n - s
    if t >= 0 and t % (p * p) == 0:
        right -= p * c[t // (p * p)]
    return left, right


def verify_recurrence(p, n_max, c):
    _need_prime(p)
    _need_exact(c, p * p * n_max + newman_shift(p))
    x = xi(p, c)
    for n in range(n_max + 1):
        left, right = recurrence_terms(p, n, c, x)
        if left != right:
            return RecurrenceReport(p, n_max, x, False, {"n": n, "left": left, "right": right})
    return RecurrenceReport(p, n_max, x, True)


@dataclass(frozen=True)
class CongruenceFamily:
    """Progression A n + B for which series(A n + B) = 0 (mod m).

    series is "a" (a_r) or "c" (coefficients of f_1 f_2^2).  n_filter restricts
    n to residues mod a prime.  When ref is set the claim is instead
    series(A n + B) = factor * series(A' n + B') (mod m).
    """

    r: int
    A: int
    B: int
    m: int
    n_filter: tuple | None = None  # (p, frozenset of residues)
    series: str = "a"
    ref: tuple | None = None  # (A', B', factor)
    label: str = ""

    def __post_init__(self):
        if self.A <= 0 or self.B < 0 or self.m <= 0:
            raise ValueError(f"bad family A={self.A} B={self.B} m={self.m}")
        if self.series not in ("a", "c"):
            raise ValueError(f"unknown series {self.series!r}")

    def admissible(self, n):
        if self.n_filter is None:
            return True
        p, res = self.n_filter
        return n % p in res

    @property
    def vacuous(self):
        return self.n_filter is not None and not self.n_filter[1]

    def to_json(self):
        out = {"r": self.r, "A": self.A, "B": self.B, "mod": self.m}
        if self.n_filter is not None:
            out["filter"] = {"p": self.n_filter[0], "residues": sorted(self.n_filter[1])}
        if self.series != "a":
            out["series"] = self.series
        if self.ref is not None:
            out["ref"] = {"A": self.ref[0], "B": self.ref[1], "factor": self.ref[2]}
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, obj):
        flt = obj.get("filter")
        ref = obj.get("ref")
        return cls(
            r=int(obj.get("r", 3)),
            A=int(obj["A"]),
            B=int(obj["B"]),
            m=int(obj.get("mod", obj.get("m", 0))),
            n_filter=(int(flt["p"]), frozenset(int(j) for j in flt["residues"])) if flt else None,
            series=obj.get("series", "a"),
            ref=(int(ref["A"]), int(ref["B"]), int(ref.get("factor", 1))) if ref else None,
            label=obj.get("label", ""),
        )


def _b_from(p, e):
    num = 25 * p**e - 1
    if num % 24:
        raise ArithmeticError(f"24 does not divide 25*{p}^{e} - 1")
    return num // 24


def _not_divisible(p):
    return (p, frozenset(range(1, p)))


def families_part1(p, k, prof):
    """a_3(5 p^(w(k+1)-1) n + (25 p^(w(k+1)) - 1)/24) = 0 (mod 5) for p not dividing n."""
    _need_prime(p)
    if p == 5:
        raise ValueError("p = 5 is covered by part 3")
    if prof.omega is None:
        raise ValueError("profile has no omega")
    e = prof.omega * (k + 1)
    return CongruenceFamily(3, 5 * p ** (e - 1), _b_from(p, e), 5, _not_divisible(p),
                            label=f"part1 p={p} k={k}")


def part2_residues(p, x):
    """Residues j mod p with ((-2j + (5/12)(p^2-1)) / p) = xi (mod 5)."""
    arg = legendre_arg(p)
    return frozenset(j for j in range(p) if (legendre(-2 * j + arg, p) - x) % 5 == 0)


def families_part2(p, k, prof):
    """a_3(5 p^(wk+2) n + (25 p^(wk+2) - 1)/24) = 0 (mod 5) on the Legendre-filtered n."""
    _need_prime(p)
    if prof.xi % 5 == 0:
        raise ValueError("part 2 needs xi(p) != 0 mod 5")
    if prof.omega is None:
        raise ValueError("profile has no omega")
    e = prof.omega * k + 2
    return CongruenceFamily(3, 5 * p**e, _b_from(p, e), 5, (p, part2_residues(p, prof.xi)),
                            label=f"part2 p={p} k={k}")


def family_part3(k):
    """a_3(25*5^(2(k+1)) n + (25*5^(2(k+2)) - 1)/24) = 2^(k+1) a_3(25n + 26) (mod 5)."""
    B = _b_from(5, 2 * (k + 2))
    return CongruenceFamily(3, 25 * 5 ** (2 * (k + 1)), B, 5, ref=(25, 26, pow(2, k + 1, 5)),
                            label=f"part3 k={k}")


def c_level_families(p, k, prof):
    """c-level families mod 5 that the recurrence yields for this profile."""
    _need_prime(p)
    if p == 5:
        e_mult = 2 * (k + 1) + 1
        return [CongruenceFamily(0, p**e_mult, 5 * (p ** (2 * (k + 2)) - 1) // 24, 5, series="c",
                                 ref=(p, newman_shift(p), pow(2, k + 1, 5)),
                                 label=f"c p=5 k={k}")]
    w = prof.omega
    out = [CongruenceFamily(0, p ** (w * (k + 1) - 1), 5 * (p ** (w * (k + 1)) - 1) // 24, 5,
                            _not_divisible(p), series="c", label=f"c p={p} exp {w}k+{w - 1}")]
    if prof.xi % 5:
        e = w * k + 2
        out.append(CongruenceFamily(0, p**e, 5 * (p**e - 1) // 24, 5,
                                    (p, part2_residues(p, prof.xi)), series="c",
                                    label=f"c p={p} exp {w}k+2"))
    return out


def max_k(p, prof, ceiling=SCAN_CEILING, part=1):
    """Largest k whose family offset B stays under the ceiling (-1 if none)."""
    k = -1
    while True:
        nxt = k + 1
        if part == 1:
            e = prof.omega * (nxt + 1)
        else:
            e = prof.omega * nxt + 2
        if _b_from(p, e) > ceiling:
            return k
        k = nxt
