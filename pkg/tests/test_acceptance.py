"""The acceptance gate: thirteen criteria, one test each, exact residues throughout."""

import random
import time

import pytest

from rcolor import series as S
from rcolor.arith import legendre, primes_in
from rcolor.modform import EtaQuotient, analyze, hecke_Tp, sturm_bound
from rcolor.newman import (
    CongruenceFamily,
    OMEGA_TABLE,
    family_part3,
    newman_shift,
    omega,
    profile,
    verify_recurrence,
    xi,
    xi_class,
)
from rcolor.partitions import a_r, c_series, enumerate_colored_partitions
from rcolor.verify import (
    PASS,
    SeriesCache,
    check_family,
    check_selfsimilar,
    p11_filtered_family,
    hecke_reproductions,
    mod7_families,
    verify_dissection,
)


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


@pytest.fixture(scope="module")
def c_exact():
    need = max(p * p * 60 + newman_shift(p) for p in (5, 7, 11, 13))
    return c_series(need).series


def test_01_oracle_agreement(criterion):
    criterion(1, "series a_r(n) equals brute-force enumeration, r<=5, n<=12")
    with Clock() as clk:
        for r in range(1, 6):
            assert a_r(r, 12).tolist() == [enumerate_colored_partitions(n, r) for n in range(13)]
        assert a_r(3, 2)[2] == 7
        assert a_r(1, 5)[5] == 7
    assert clk.elapsed < 5


def test_02_mod7_scans(criterion):
    criterion(2, "a1(7n+5), a3(7n+2), a4(7n+4), a5(7n+6), a7(7n+3) = 0 mod 7, n<=500")
    cache = SeriesCache()
    with Clock() as clk:
        reports = [check_family(f, 500, cache) for f in mod7_families()]
    assert [(f.r, f.B) for f in mod7_families()] == [(1, 5), (3, 2), (4, 4), (5, 6), (7, 3)]
    assert all(r.result == PASS for r in reports), [r.counterexample for r in reports]
    assert clk.elapsed < 5


def test_03_a3_5n1_vs_c(criterion):
    criterion(3, "a3(5n+1) = 3c(n) mod 5, n<=2000")
    with Clock() as clk:
        c = c_series(2000, 5)
        a3 = a_r(3, 5 * 2000 + 1, 5)
        bad = [n for n in range(2001) if (a3[5 * n + 1] - 3 * c[n]) % 5]
    assert bad == []
    assert clk.elapsed < 2


def test_04_newman_recurrence(criterion, c_exact):
    criterion(4, "Newman recurrence exact for p in {5,7,11,13}, n<=60")
    with Clock() as clk:
        c = c_series(c_exact.trunc).series
        reports = [verify_recurrence(p, 60, c) for p in (5, 7, 11, 13)]
    assert all(r.ok for r in reports), [r.counterexample for r in reports]
    assert clk.elapsed < 30


def test_05_xi_and_omega(criterion, c_exact):
    criterion(5, "xi(5) = 2, xi(11) = 1 mod 5, omega(11) = 6 from the table")
    assert xi(5, c_exact) == 2
    x11 = xi(11, c_exact)
    assert x11 % 5 == 1
    assert OMEGA_TABLE[(xi_class(x11), 11 % 5)] == 6
    assert omega(x11 % 5, 11 % 5) == 6
    assert profile(11, c_exact).omega == 6


def test_06_p11_filtered_family(criterion, c_exact):
    criterion(6, "a3(6655n + 605j + 126) = 0 mod 5, j in {1,4,6,7,8}, 11n+j<=33, via c")
    with Clock() as clk:
        fam, _ = p11_filtered_family(c_exact)
        rep = check_family(fam, 33, SeriesCache())
    assert (fam.A, fam.B) == (605, 126)
    assert fam.n_filter == (11, frozenset({1, 4, 6, 7, 8}))
    assert rep.scan["route"] == "c"
    assert rep.scan["admissible"] == 15
    assert rep.result == PASS, rep.counterexample
    assert clk.elapsed < 10
    # the same indices read directly from a3 mod 5
    idx = [605 * n + 126 for n in range(34) if fam.admissible(n)]
    a3 = a_r(3, max(idx), 5)
    assert all(a3[i] == 0 for i in idx)


def test_07_part3_k0(criterion):
    criterion(7, "a3(625n + 651) = 2 a3(25n + 26) mod 5, n<=30")
    fam = family_part3(0)
    a3 = a_r(3, 625 * 30 + 651, 5)
    assert all((a3[625 * n + 651] - 2 * a3[25 * n + 26]) % 5 == 0 for n in range(31))
    assert check_family(fam, 30).result == PASS


def test_08_a5_5n3(criterion):
    criterion(8, "a5(5n+3) = 0 mod 5, n<=1000")
    assert check_family(CongruenceFamily(5, 5, 3, 5), 1000).result == PASS


def test_09_mod3_instances(criterion):
    criterion(9, "a5(27n+19) = 0, a5(9n+1) = a5(81n+10), a5(243n+172) = 0 mod 3")
    cache = SeriesCache()
    assert check_family(CongruenceFamily(5, 27, 19, 3), 370, cache).result == PASS
    assert check_selfsimilar(120, cache).result == PASS
    assert check_family(CongruenceFamily(5, 243, 172, 3), 40, cache).result == PASS


def test_10_sturm_and_hecke(criterion):
    criterion(10, "Sturm bounds 47, 425, 11 and the three Hecke images through them")
    assert (sturm_bound(94, 4), sturm_bound(850, 4), sturm_bound(22, 4)) == (47, 425, 11)
    with Clock() as clk:
        reports = hecke_reproductions(SeriesCache())
    assert [r.scan["through"] for r in reports] == [47, 425, 11]
    for r in reports:
        assert r.result == PASS, (r.check_id, r.counterexample)
    assert clk.elapsed < 60


def test_11_eta_quotient_verdicts(criterion):
    criterion(11, "the four forms pass with weights 94, 850, 850, 22; eta^-1 fails")
    f1 = EtaQuotient(4, {1: 184, 2: 4})
    h3 = EtaQuotient(4, {1: 1696, 2: 4})
    f2 = EtaQuotient(4, {1: 40, 2: 4})
    cases = [(analyze(f1), 94), (analyze(f1, e4_power=189), 94 + 756),
             (analyze(h3), 850), (analyze(f2), 22)]
    for meta, weight in cases:
        assert meta.passes, meta.failures
        assert meta.total_weight == weight
        odd_part = meta.character_disc // (-2) ** 4
        assert meta.character_disc == (-2) ** 4 * odd_part
        assert odd_part % 2 == 1 and int(odd_part ** 0.5) ** 2 == odd_part
    bad = analyze(EtaQuotient(1, {1: -1}))
    assert not bad.passes


def test_12_dissection(criterion):
    criterion(12, "7-dissection of a3(7n+2) as an exact series identity to order 30")
    with Clock() as clk:
        rep = verify_dissection(30)
    assert rep.result == PASS, rep.counterexample
    assert clk.elapsed < 30


def _rand_series(rng, n, m):
    return S.TruncatedSeries([rng.randrange(m) if m else rng.randrange(-20, 21)
                              for _ in range(n + 1)], modulus=m)


def test_13_property_suites(criterion):
    criterion(13, "ring axioms, Frobenius, inversion, Hecke-dilation product, Legendre")
    rng = random.Random(13)
    for _ in range(50):
        m = rng.choice((0, 3, 5, 7, 2**31 - 1))
        n = rng.randrange(1, 60)
        a, b, c = (_rand_series(rng, n, m) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + S.neg(a) == S.zeros(n, m)

    for _ in range(50):
        t = rng.choice((2, 3, 5, 7))
        a = _rand_series(rng, rng.randrange(5, 80), t)
        e = rng.randrange(0, 400)
        assert S.power(a, e, frobenius=True) == S.power(a, e, frobenius=False)

    for _ in range(50):
        m = rng.choice((0, 3, 5, 7))
        vals = [rng.randrange(1, 50) * rng.choice((-1, 1)) if m == 0 else rng.randrange(m)
                for _ in range(rng.randrange(2, 70))]
        vals[0] = rng.choice((1, -1)) if m == 0 else rng.randrange(1, m)
        a = S.TruncatedSeries(vals, modulus=m)
        assert a * S.invert(a) == S.one(a.trunc, m)

    for trial in range(50):
        p = (3, 5)[trial % 2]
        n = rng.randrange(10, 61)
        f = _rand_series(rng, n, 0)
        g_small = _rand_series(rng, n // p, 0)
        g = S.dilate(g_small, p, n)
        k = rng.randrange(2, 30)
        chi = rng.choice((-1, 1))
        left = hecke_Tp(f * g, p, k, chi)
        right = hecke_Tp(f, p, k, chi) * S.truncate(g_small, n // p)
        assert S.reduce(left, p) == S.reduce(right, p)

    for p in primes_in(3, 200):
        for _ in range(20):
            x, y = rng.randrange(-500, 500), rng.randrange(-500, 500)
            assert legendre(x * y, p) == legendre(x, p) * legendre(y, p)
            assert legendre(x + p, p) == legendre(x, p)
