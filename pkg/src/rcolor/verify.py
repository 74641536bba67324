"""Congruence scans, the modular-form reproductions, and the full suite."""

import time
from dataclasses import dataclass, field

import numpy as np

from . import series as S
from .arith import kronecker, legendre, legendre_table, primes_in
from .modform import EtaQuotient, analyze, eta_expansion, hecke_dilation, hecke_Tp
from .newman import (
    CongruenceFamily,
    c_level_families,
    families_part1,
    families_part2,
    family_part3,
    profile,
    verify_recurrence,
)
from .partitions import a_r, c_series, enumerate_colored_partitions, p_euler_oracle

REPORT_VERSION = 1

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


class ResourceError(RuntimeError):
    """A scan would need coefficients beyond the configured ceiling."""


@dataclass
class Config:
    a_ceiling: int = 10**6
    c_ceiling: int = 5 * 10**6
    exact_ceiling: int = 5 * 10**3
    newman_primes: tuple = (5, 7, 11, 13)
    newman_nmax: int = 60
    profile_max_p: int = 31
    dissection_order: int = 30
    c_family_index_cap: int = 10**6

    @classmethod
    def from_json(cls, obj):
        known = cls.__dataclass_fields__
        kw = {k: (tuple(v) if isinstance(v, list) else v) for k, v in obj.items() if k in known}
        unknown = set(obj) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**kw)


@dataclass
class CheckReport:
    check_id: str
    params: dict
    scan: dict
    result: str
    counterexample: dict | None = None
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.result == FAIL and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    @property
    def ok(self):
        return self.result != FAIL

    def to_json(self):
        out = {"check": self.check_id, "params": self.params, "scan": self.scan,
               "result": self.result, "counterexample": self.counterexample,
               "wall_time": round(self.wall_time, 4)}
        if self.details:
            out["details"] = self.details
        return out


def _round_up(n):
    # grow caches in coarse steps so nearby requests share one expansion
    step = 1 << max(10, n.bit_length() - 3)
    return -(-n // step) * step


class SeriesCache:
    """Reusable a_r mod m and c mod m expansions, bounded by the config ceilings."""

    def __init__(self, config=None):
        self.config = config or Config()
        self._a = {}
        self._c = {}

    def a(self, r, modulus, top):
        if top > self.config.a_ceiling:
            raise ResourceError(f"a_{r} mod {modulus} to index {top} exceeds ceiling {self.config.a_ceiling}")
        got = self._a.get((r, modulus))
        if got is None or got.trunc < top:
            n = min(_round_up(top), self.config.a_ceiling)
            got = a_r(r, n, modulus)
            self._a[(r, modulus)] = got
        return got

    def c(self, modulus, top):
        if top > self.config.c_ceiling:
            raise ResourceError(f"c mod {modulus} to index {top} exceeds ceiling {self.config.c_ceiling}")
        got = self._c.get(modulus)
        if got is None or got.trunc < top:
            n = min(_round_up(top), self.config.c_ceiling)
            got = c_series(n, modulus).series
            self._c[modulus] = got
        return got


def _c_route(fam):
    """a_3(5n+1) = 3 c(n) (mod 5) lets an a_3 family be read off c."""
    if fam.series != "a" or fam.r != 3 or fam.m != 5:
        return False
    if fam.A % 5 or fam.B % 5 != 1:
        return False
    if fam.ref is not None and (fam.ref[0] % 5 or fam.ref[1] % 5 != 1):
        return False
    return True


def check_family(fam, n_max, cache=None, check_id=None):
    """Scan series(A n + B) = 0 (or = factor * series(A' n + B')) mod m for n <= n_max."""
    cache = cache or SeriesCache()
    t0 = time.perf_counter()
    ns = np.array([n for n in range(n_max + 1) if fam.admissible(n)], dtype=np.int64)
    params = fam.to_json()
    scan = {"n_min": 0, "n_max": n_max, "admissible": int(len(ns))}
    cid = check_id or "family"
    if len(ns) == 0:
        return CheckReport(cid, params, scan, VACUOUS, wall_time=time.perf_counter() - t0)

    A, B = fam.A, fam.B
    refA, refB, factor = fam.ref if fam.ref is not None else (0, 0, 0)
    top = max(A * int(ns[-1]) + B, refA * int(ns[-1]) + refB)
    if _c_route(fam):
        route = "c"
        A, B, refA, refB = A // 5, (B - 1) // 5, refA // 5, (refB - 1) // 5
        src = cache.c(5, (top - 1) // 5)
    elif fam.series == "c":
        route = "c"
        src = cache.c(fam.m, top)
    else:
        route = "a"
        src = cache.a(fam.r, fam.m, top)
    scan["route"] = route
    scan["max_index"] = top

    coeffs = src.coeffs
    idx = A * ns + B
    vals = coeffs[idx] % fam.m
    if fam.ref is not None:
        ref_vals = coeffs[refA * ns + refB] % fam.m
        bad = (vals - factor * ref_vals) % fam.m != 0
    else:
        ref_vals = None
        bad = vals != 0
    wall = time.perf_counter() - t0
    if bad.any():
        i = int(np.argmax(bad))
        n = int(ns[i])
        ce = {"n": n, "index": fam.A * n + fam.B, "residue": int(vals[i])}
        if ref_vals is not None:
            ce["ref_index"] = fam.ref[0] * n + fam.ref[1]
            ce["ref_residue"] = int(ref_vals[i])
        return CheckReport(cid, params, scan, FAIL, ce, wall)
    return CheckReport(cid, params, scan, PASS, wall_time=wall)


def check_selfsimilar(n_max, cache=None):
    fam = CongruenceFamily(5, 81, 10, 3, ref=(9, 1, 1), label="a5(81n+10) = a5(9n+1) mod 3")
    return check_family(fam, n_max, cache, "selfsimilar_mod3")


def _timed(check_id, params, scan, fn):
    t0 = time.perf_counter()
    ok, ce, details = fn()
    wall = time.perf_counter() - t0
    return CheckReport(check_id, params, scan, PASS if ok else FAIL, None if ok else ce, wall,
                       details or {})


def _first_mismatch(x, y, upto):
    for n in range(upto + 1):
        if x[n] != y[n]:
            return {"index": n, "left": x[n], "right": y[n]}
    return None


FORM_F1 = EtaQuotient(4, {1: 184, 2: 4})
FORM_H3 = EtaQuotient(4, {1: 1696, 2: 4})
FORM_F2 = EtaQuotient(4, {1: 40, 2: 4})
E4_POWER_H2 = 189


def _progression_times_eta(a_series, step, start, eta_power, upto, modulus):
    """(sum a(step n + start) q^(n+1)) * f_1^eta_power, to order upto."""
    sub = S.extract(a_series, step, start)
    shifted = S.shift_offset(S.truncate(sub, upto), 24, materialize=True)
    return S.mul(shifted, S.euler_factor(1, eta_power, upto, modulus))


def _hecke_iter(f, p, times, k, chi_p):
    out = f
    for _ in range(times):
        out = hecke_Tp(out, p, k, chi_p)
    return out


def _hecke_check(eq, p, times, e4_power=0, bound=None):
    """Expand eq mod p far enough to apply T_p `times` times through the Sturm bound.

    E_4 = 1 (mod p) for p in {3, 5}, so an E_4 power only changes the weight.
    """
    meta = analyze(eq, e4_power)
    if not meta.passes:
        raise ValueError(f"{eq} fails the eta-quotient criteria: {meta.failures}")
    k = int(meta.total_weight)
    chi_p = kronecker(meta.character_disc, p)
    if bound is None:
        bound = meta.sturm
    f = eta_expansion(eq, p**times * bound, p)
    image = _hecke_iter(f, p, times, k, chi_p)
    dil = hecke_dilation(f, p, times)
    return meta, chi_p, image, dil


def hecke_reproductions(cache=None):
    """Sturm-bound arguments for a_5 mod 3 and mod 5, recomputed from the forms."""
    cache = cache or SeriesCache()
    reports = []

    def sub_a():
        meta, chi_p, image, dil = _hecke_check(FORM_F1, 3, 3)
        bound = meta.sturm
        a5 = cache.a(5, 3, 27 * bound + 19)
        struct = _progression_times_eta(a5, 27, 19, 7, bound, 3)
        nz = [n for n in range(bound + 1) if image[n]]
        # the expansion itself against q^8 * A5(q) * f_1^189
        direct = S.mul(_shifted(a5, 8, 27 * bound), S.euler_factor(1, 189, 27 * bound, 3))
        f = eta_expansion(FORM_F1, 27 * bound, 3)
        details = {"weight": str(meta.weight), "sturm": bound, "chi(3)": chi_p,
                   "image_is_dilation": image == dil,
                   "structure_matches": _first_mismatch(image, struct, bound) is None,
                   "expansion_matches_product": f == direct}
        ok = not nz and all(v is True for k, v in details.items() if isinstance(v, bool))
        ce = {"index": nz[0], "residue": image[nz[0]]} if nz else {"details": details}
        return ok, ce, details

    reports.append(_timed("hecke_f1_T3^3_mod3", {"form": FORM_F1.to_json(), "p": 3, "times": 3},
                          {"through": analyze(FORM_F1).sturm}, sub_a))

    def sub_b():
        meta_h2 = analyze(FORM_F1, E4_POWER_H2)
        meta_h3 = analyze(FORM_H3)
        bound = meta_h3.sturm
        # h2 = f1 * E4^189 = f1 (mod 3)
        _, _, img2, dil2 = _hecke_check(FORM_F1, 3, 2, E4_POWER_H2)
        _, _, img3, dil3 = _hecke_check(FORM_H3, 3, 4)
        a5 = cache.a(5, 3, 81 * bound + 10)
        s2 = _progression_times_eta(a5, 9, 1, 21, bound, 3)
        s3 = _progression_times_eta(a5, 81, 10, 21, bound, 3)
        mismatch = _first_mismatch(img2, img3, bound)
        e4 = S.eisenstein_e4(200, 3)
        details = {"sturm_h2": meta_h2.sturm, "sturm_h3": bound,
                   "weight_h2": str(meta_h2.total_weight), "weight_h3": str(meta_h3.weight),
                   "images_are_dilations": img2 == dil2 and img3 == dil3,
                   "h2_structure_matches": _first_mismatch(img2, s2, bound) is None,
                   "h3_structure_matches": _first_mismatch(img3, s3, bound) is None,
                   "e4_is_1_mod_3": e4 == S.one(200, 3)}
        ok = mismatch is None and all(v is True for v in details.values() if isinstance(v, bool))
        return ok, mismatch or {"details": details}, details

    reports.append(_timed("hecke_h2T3^2_vs_h3T3^4_mod3",
                          {"h2": {**FORM_F1.to_json(), "E4_power": E4_POWER_H2},
                           "h3": FORM_H3.to_json(), "p": 3},
                          {"through": analyze(FORM_H3).sturm}, sub_b))

    def sub_c():
        meta, chi_p, image, dil = _hecke_check(FORM_F2, 5, 1)
        bound = meta.sturm
        a5 = cache.a(5, 5, 5 * bound + 3)
        struct = _progression_times_eta(a5, 5, 3, 9, bound, 5)
        nz = [n for n in range(bound + 1) if image[n]]
        details = {"weight": str(meta.weight), "sturm": bound, "chi(5)": chi_p,
                   "image_is_dilation": image == dil,
                   "structure_matches": _first_mismatch(image, struct, bound) is None}
        ok = not nz and all(v is True for v in details.values() if isinstance(v, bool))
        ce = {"index": nz[0], "residue": image[nz[0]]} if nz else {"details": details}
        return ok, ce, details

    reports.append(_timed("hecke_f2_T5_mod5", {"form": FORM_F2.to_json(), "p": 5, "times": 1},
                          {"through": analyze(FORM_F2).sturm}, sub_c))
    return reports


def _shifted(a, k, trunc):
    """q^k * a to order trunc."""
    return S.shift_offset(S.truncate(a, trunc), 24 * k, materialize=True)


def e4_power_check(power=E4_POWER_H2, order=100, modulus=3):
    """Exact E4^power reduced mod p equals 1 to the given order."""
    def run():
        e = S.power(S.eisenstein_e4(order), power)
        red = S.reduce(e, modulus)
        bad = _first_mismatch(red, S.one(order, modulus), order)
        return bad is None, bad, {}
    return _timed("e4_power_mod", {"power": power, "mod": modulus}, {"through": order}, run)


DISSECTION_TERMS = (
    (1024, 8, {2: 8, 14: 18, 1: -20, 7: -7}),
    (1344, 6, {2: 9, 14: 11, 1: -21}),
    (-1024, 5, {2: 16, 14: 10, 1: -24, 7: -3}),
    (72, 4, {2: 10, 7: 7, 14: 4, 1: -22}),
    (-320, 3, {2: 17, 7: 4, 14: 3, 1: -25}),
    (-40, 2, {2: 11, 7: 14, 1: -23, 14: -3}),
    (56, 1, {2: 18, 7: 11, 1: -26, 14: -4}),
    (1, 0, {2: 12, 7: 21, 1: -24, 14: -10}),
)


def dissection_rhs(trunc):
    total = S.zeros(trunc)
    for coeff, shift, fs in DISSECTION_TERMS:
        term = S.monomial(shift, trunc, 0, coeff)
        for d, e in fs.items():
            term = S.mul(term, S.euler_factor(d, e, trunc))
        total = S.add(total, term)
    return S.scale(total, 7)


def verify_dissection(trunc=30, config=None):
    config = config or Config()
    if 7 * trunc + 2 > config.exact_ceiling:
        raise ResourceError(f"exact a_3 to {7 * trunc + 2} exceeds ceiling {config.exact_ceiling}")

    def run():
        lhs = S.truncate(S.extract(a_r(3, 7 * trunc + 2), 7, 2), trunc)
        rhs = dissection_rhs(trunc)
        bad = _first_mismatch(lhs, rhs, trunc)
        return bad is None, bad, {"constant_term": lhs[0]}

    return _timed("dissection_a3_7n+2", {"terms": len(DISSECTION_TERMS)}, {"through": trunc}, run)


def oracle_checks(n_max=12, r_max=5, p_max=200):
    def run():
        for r in range(1, r_max + 1):
            s = a_r(r, n_max)
            for n in range(n_max + 1):
                o = enumerate_colored_partitions(n, r)
                if s[n] != o:
                    return False, {"r": r, "n": n, "series": s[n], "oracle": o}, {}
        p = p_euler_oracle(p_max)
        s1 = a_r(1, p_max).tolist()
        if s1 != p:
            n = next(i for i in range(p_max + 1) if s1[i] != p[i])
            return False, {"r": 1, "n": n, "series": s1[n], "oracle": p[n]}, {}
        return True, None, {"a3(2)": a_r(3, 2)[2], "p(5)": p[5]}

    return _timed("oracle_agreement", {"r_max": r_max}, {"n_max": n_max, "p_max": p_max}, run)


def legendre_checks(p_max=97):
    def run():
        for p in primes_in(3, p_max):
            for n in range(p):
                if legendre(n, p) != legendre_table(n, p) or kronecker(n, p) != legendre(n, p):
                    return False, {"p": p, "n": n}, {}
        return True, None, {}
    return _timed("legendre_paths", {}, {"p_max": p_max}, run)


def a3_c_check(n_max=2000, cache=None):
    cache = cache or SeriesCache()

    def run():
        a3 = cache.a(3, 5, 5 * n_max + 1)
        c = cache.c(5, n_max)
        for n in range(n_max + 1):
            if (a3[5 * n + 1] - 3 * c[n]) % 5:
                return False, {"n": n, "a3": a3[5 * n + 1], "c": c[n]}, {}
        return True, None, {}
    return _timed("a3(5n+1)=3c(n)_mod5", {}, {"n_max": n_max}, run)


def newman_checks(config, c_exact=None):
    reports = []
    need = max(p * p * config.newman_nmax + 5 * (p * p - 1) // 24 for p in config.newman_primes)
    need = max(need, 5 * (config.profile_max_p ** 2 - 1) // 24)
    if need > 20 * config.exact_ceiling:
        raise ResourceError(f"exact c-series to {need} exceeds budget")
    c = c_exact if c_exact is not None and c_exact.trunc >= need else c_series(need).series
    for p in config.newman_primes:
        t0 = time.perf_counter()
        rep = verify_recurrence(p, config.newman_nmax, c)
        reports.append(CheckReport(
            f"newman_recurrence_p{p}", {"p": p, "xi": rep.xi}, {"n_max": config.newman_nmax},
            PASS if rep.ok else FAIL, rep.counterexample, time.perf_counter() - t0))
    profiles = [profile(p, c) for p in primes_in(5, config.profile_max_p)]
    return reports, profiles, c


def mod7_families():
    return [CongruenceFamily(r, 7, b, 7, label=f"a{r}(7n+{b})")
            for r, b in ((1, 5), (3, 2), (4, 4), (5, 6), (7, 3))]


def p11_filtered_family(c_exact):
    prof = profile(11, c_exact)
    return families_part2(11, 0, prof), prof


def run_suite(config=None, progress=None):
    """Every numerical check, in order.  Returns a JSON-ready dict."""
    config = config or Config()
    cache = SeriesCache(config)
    reports = []

    def note(rep):
        reports.append(rep)
        if progress:
            progress(rep)

    note(oracle_checks())
    note(legendre_checks())
    note(a3_c_check(2000, cache))
    newman_reports, profiles, c_exact = newman_checks(config)
    for rep in newman_reports:
        note(rep)

    for fam in mod7_families():
        note(check_family(fam, 500, cache, f"mod7 {fam.label}"))

    fam, p11 = p11_filtered_family(c_exact)
    note(check_family(fam, 33, cache, "filtered p=11 k=0"))
    note(check_family(family_part3(0), 30, cache, "part3 k=0"))
    note(check_family(family_part3(1), 5, cache, "part3 k=1"))
    part1 = families_part1(11, 0, p11)
    try:
        note(check_family(part1, 2, cache, "part1 p=11 k=0"))
    except ResourceError as exc:
        note(CheckReport("part1 p=11 k=0", part1.to_json(), {"n_max": 2}, VACUOUS,
                         details={"skipped": str(exc)}))
    for prof in profiles:
        if prof.p == 5:
            continue
        for cfam in c_level_families(prof.p, 0, prof):
            if cfam.vacuous:
                note(check_family(cfam, 0, cache, f"c-level {cfam.label}"))
                continue
            nmax = _affordable_nmax(cfam, min(config.c_ceiling, config.c_family_index_cap), cap=20)
            if nmax is None:
                continue
            note(check_family(cfam, nmax, cache, f"c-level {cfam.label}"))

    note(check_family(CongruenceFamily(5, 27, 19, 3, label="a5(27n+19)"), 370, cache,
                      "mod3 alpha=0"))
    note(check_selfsimilar(120, cache))
    note(check_family(CongruenceFamily(5, 243, 172, 3, label="a5(243n+172)"), 40, cache,
                      "mod3 alpha=1"))
    note(check_family(CongruenceFamily(5, 5, 3, 5, label="a5(5n+3)"), 1000, cache, "mod5 a5(5n+3)"))
    for rep in hecke_reproductions(cache):
        note(rep)
    note(e4_power_check())
    note(verify_dissection(config.dissection_order, config))

    failed = [r.check_id for r in reports if r.result == FAIL]
    return {
        "report_version": REPORT_VERSION,
        "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(config).items()},
        "profiles": [p.to_json() for p in profiles],
        "checks": [r.to_json() for r in reports],
        "summary": {
            "total": len(reports),
            "pass": sum(r.result == PASS for r in reports),
            "fail": len(failed),
            "vacuous": sum(r.result == VACUOUS for r in reports),
            "failed": failed,
        },
    }


def _affordable_nmax(fam, ceiling, cap):
    """Largest n_max <= cap that keeps A n + B under the ceiling with one admissible n."""
    best = None
    for n in range(cap + 1):
        if fam.A * n + fam.B > ceiling:
            break
        best = n
    if best is None:
        return None
    if not any(fam.admissible(n) for n in range(best + 1)):
        return None
    return best


def strip_timing(report):
    """Copy of a suite report without wall-time fields, for determinism checks."""
    out = dict(report)
    out["checks"] = [{k: v for k, v in c.items() if k != "wall_time"} for c in report["checks"]]
    return out
