import json

import pytest

from rcolor import series as S
from rcolor.arith import legendre, primes_in
from rcolor.newman import (
    OMEGA_TABLE,
    CongruenceFamily,
    NewmanProfile,
    c_level_families,
    families_part1,
    families_part2,
    family_part3,
    newman_shift,
    omega,
    part2_residues,
    profile,
    verify_recurrence,
    xi,
    xi_class,
)
from rcolor.partitions import c_by_literal_product, c_series


@pytest.fixture(scope="module")
def c_exact():
    return c_series(13 * 13 * 60 + newman_shift(13)).series


def test_xi_5(c_exact):
    assert xi(5, c_exact) == 2


def test_xi_11_is_1_mod_5(c_exact):
    assert xi(11, c_exact) % 5 == 1


def test_xi_7_and_13_against_literal_product():
    lit = c_by_literal_product(40)
    assert newman_shift(7) == 10 and newman_shift(13) == 35
    assert xi(7, c_series(40).series) == lit[10] + legendre(20, 7)
    assert xi(13, c_series(40).series) == lit[35] + legendre(70, 13)


def test_xi_errors():
    with pytest.raises(ValueError):
        xi(4, c_series(10).series)
    with pytest.raises(ValueError):
        xi(13, c_series(20).series)
    with pytest.raises(ValueError):
        xi(7, c_series(20, 5).series)


def test_omega_cases():
    assert all(omega(0, q) == 4 for q in (1, 2, 3, 4))
    assert omega(1, 1) == 6
    assert omega(2, 3) == 12
    with pytest.raises(ValueError):
        omega(1, 0)


def test_omega_table_and_decision_tree_agree():
    for x in range(5):
        for q in (1, 2, 3, 4):
            assert omega(x, q) == OMEGA_TABLE[(xi_class(x), q)]
            assert omega(x - 5, q) == omega(x, q)


def test_profile_11(c_exact):
    prof = profile(11, c_exact)
    assert prof.omega == 6
    assert prof.p_mod5 == 1 and prof.xi_mod5 == 1


def test_recurrence_p5_n0_reduces_to_xi():
    c = c_series(10).series
    # c(5) = gamma(0) = xi(5) - (10/5)
    assert c[5] == xi(5, c) - legendre(10, 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_recurrence_holds(p, c_exact):
    rep = verify_recurrence(p, 60, c_exact)
    assert rep.ok, rep.counterexample


def test_recurrence_detects_corruption():
    c = c_series(7 * 7 * 10 + 10)
    vals = c.series.tolist()
    vals[49 * 3 + 10] += 1
    rep = verify_recurrence(7, 10, S.TruncatedSeries(vals))
    assert not rep.ok
    assert rep.counterexample["n"] == 3


def test_recurrence_needs_truncation(c_exact):
    with pytest.raises(ValueError):
        verify_recurrence(13, 61, c_exact)


def test_part1_p11():
    prof = NewmanProfile(11, -4, 1, 1, 6)
    fam = families_part1(11, 0, prof)
    assert fam.A == 5 * 11**5
    assert (25 * 11**6 - 1) % 24 == 0
    assert fam.B == (25 * 11**6 - 1) // 24
    assert not fam.admissible(0) and fam.admissible(1)


def test_part_families_in_class_1_mod_5(c_exact):
    for p in primes_in(7, 31):
        prof = profile(p, c_exact)
        for k in range(3):
            fam = families_part1(p, k, prof)
            assert fam.B % 5 == 1 and fam.A % 5 == 0
            if prof.xi % 5:
                fam2 = families_part2(p, k, prof)
                assert fam2.B % 5 == 1 and fam2.A % 5 == 0
    for k in range(4):
        fam = family_part3(k)
        assert fam.B % 5 == 1 and fam.A % 5 == 0


def test_part2_p11():
    prof = NewmanProfile(11, -4, 1, 1, 6)
    fam = families_part2(11, 0, prof)
    assert (fam.A, fam.B) == (605, 126)
    assert fam.n_filter == (11, frozenset({1, 4, 6, 7, 8}))
    assert 5 * (11**2 - 1) // 12 == 50
    assert 605 * 11 == 6655


def test_part2_residues_exclude_symbol_zero():
    for p in primes_in(7, 60):
        arg = 5 * (p * p - 1) // 12
        for x in (1, -1, 4):
            for j in part2_residues(p, x):
                assert (-2 * j + arg) % p != 0


def test_part2_vacuous_for_pm2():
    assert part2_residues(13, -2) == frozenset()
    prof = NewmanProfile(13, -2, -2, 3, 12)
    assert families_part2(13, 0, prof).vacuous


def test_part2_rejects_xi_zero():
    with pytest.raises(ValueError):
        families_part2(7, 0, NewmanProfile(7, 0, 0, 2, 4))


def test_part3_k0():
    fam = family_part3(0)
    assert (fam.A, fam.B) == (625, 651)
    assert fam.ref == (25, 26, 2)
    assert 15624 // 24 == 651


def test_derived_families_cases():
    p7 = NewmanProfile(7, 0, 0, 2, 4)
    fams = c_level_families(7, 0, p7)
    assert [(f.A, f.B) for f in fams] == [(7**3, 5 * (7**4 - 1) // 24)]
    p11 = NewmanProfile(11, -4, 1, 1, 6)
    fams = c_level_families(11, 0, p11)
    assert (fams[0].A, fams[0].B) == (11**5, 5 * (11**6 - 1) // 24)
    assert (fams[1].A, fams[1].B) == (11**2, 5 * (11**2 - 1) // 24)


def test_derived_p11_spot_check():
    p11 = NewmanProfile(11, -4, 1, 1, 6)
    fam = c_level_families(11, 0, p11)[0]
    top = fam.A * 2 + fam.B
    c = c_series(top, 5)
    assert c[fam.A + fam.B] == 0 and c[2 * fam.A + fam.B] == 0


def test_family_json_round_trip():
    fam = CongruenceFamily(3, 605, 126, 5, (11, frozenset({1, 4, 6, 7, 8})))
    obj = fam.to_json()
    assert obj == {"r": 3, "A": 605, "B": 126, "mod": 5,
                   "filter": {"p": 11, "residues": [1, 4, 6, 7, 8]}}
    assert CongruenceFamily.from_json(json.loads(json.dumps(obj))) == fam


def test_family_validation():
    with pytest.raises(ValueError):
        CongruenceFamily(3, 0, 1, 5)
    with pytest.raises(ValueError):
        CongruenceFamily(3, 5, -1, 5)
