"""The acceptance suite: one function per criterion, a deterministic report.

Each criterion function returns a JSON-serializable dict with a "passed" flag
and enough detail to audit the run. Report payloads contain no wall-clock
data, so two runs with the same seed are byte-identical; timings are carried
separately. The selftest driver prints one pass/fail line per criterion.
"""

from __future__ import annotations

import random
import time
from itertools import product

from . import breuil as br
from . import hypergeom as hg
from . import ordinarity as od
from . import unitary as un
from .ff import extension_of, field_make
from .lambda_adic import reduce_mod_lambda
from .linalg import det as _det, mat_identity, mat_mul
from .util import parallel_map, stable_json

TRACE_CONFIGS = [
    (3, 2, 7), (3, 2, 13),
    (5, 2, 11), (5, 2, 31),
    (11, 3, 23),
]

NORM_CONFIGS = [(3, 2, 7), (11, 3, 23)]   # (N, n, l), d in {1, 2}

DET_SIGN = 1  # calibrated once on the (3,2,7) sweep; also holds for (11,3,23)


def _params(N, n):
    return hg.select_chi(N, n)


def criterion_1():
    """Trace oracle equivalence: trace_all_fast == trace_naive everywhere."""
    t0 = time.monotonic()
    details = []
    ok = True
    for N, n, q in TRACE_CONFIGS:
        params = _params(N, n)
        k = field_make(q, 1)
        fast = hg.trace_all_fast(params, k)
        naive = {x: hg.trace_naive(params, k, x) for x in fast}
        agree = all(fast[x] == naive[x] for x in fast)
        ok &= agree and len(fast) == q - 2
        details.append({"N": N, "n": n, "q": q, "points": len(fast),
                        "agree": agree})
    elapsed = time.monotonic() - t0
    ok &= elapsed < 30.0
    return {"id": 1, "name": "trace oracle equivalence",
            "passed": ok, "budget_s": 30, "details": details}, elapsed


def _charpoly_sweep(N, n, q):
    params = _params(N, n)
    k = field_make(q, 1)
    recs = parallel_map(lambda x: hg.char_poly(params, k, x),
                        sorted(hg.trace_all_fast(params, k), key=lambda e: e.k))
    return params, k, recs


_sweep_cache = {}


def _sweep(N, n, q):
    key = (N, n, q)
    if key not in _sweep_cache:
        _sweep_cache[key] = _charpoly_sweep(N, n, q)
    return _sweep_cache[key]


def criterion_2():
    """Determinant: |const| = q^(n(n-1)/2) in every embedding; exact sign."""
    t0 = time.monotonic()
    details = []
    ok = True
    for N, n, q in TRACE_CONFIGS:
        _, _, recs = _sweep(N, n, q)
        signs = set()
        abs_ok = True
        for rec in recs:
            rep = hg.verify_det(rec)
            abs_ok &= rep.abs_ok
            signs.add(rep.sign)
        this_ok = abs_ok and signs == {DET_SIGN}
        ok &= this_ok
        details.append({"N": N, "n": n, "q": q, "abs_ok": abs_ok,
                        "signs": sorted(str(s) for s in signs)})
    return {"id": 2, "name": "determinant q^(n(n-1)/2), sign calibrated",
            "passed": ok, "sign": DET_SIGN, "details": details}, \
        time.monotonic() - t0


def criterion_3():
    """Purity: every root has |alpha|^2 = q^(n-1) within 1e-6 relative."""
    t0 = time.monotonic()
    details = []
    ok = True
    for N, n, q in TRACE_CONFIGS:
        _, _, recs = _sweep(N, n, q)
        this_ok = all(hg.verify_purity(rec, tol=1e-6) for rec in recs)
        ok &= this_ok
        details.append({"N": N, "n": n, "q": q, "pure": this_ok})
    return {"id": 3, "name": "purity of weight n-1",
            "passed": ok, "details": details}, time.monotonic() - t0


_ord_tests = {}


def _ordinary_test(N, n, l):
    key = (N, n, l)
    if key not in _ord_tests:
        _ord_tests[key] = od.build_ordinary_test(_params(N, n), l)
    return _ord_tests[key]


def criterion_4():
    """Exact mod-lambda norm identity at every point, d in {1, 2}.

    Sign note: the calibrated identity is trace = +Norm(u(x)) for every n;
    the (-1)^(n-1) prefactor inside the trace cancels against the
    (-1)^(n-1) produced by the n-1 vanishing character sums. Zero failures
    required.
    """
    t0 = time.monotonic()
    details = []
    ok = True
    for N, n, l in NORM_CONFIGS:
        test = _ordinary_test(N, n, l)
        for d in (1, 2):
            rows = od.verify_norm_identity(test, d, sign=od.NORM_IDENTITY_SIGN)
            failures = [r.x_dlog for r in rows if not r.ok]
            ok &= not failures
            details.append({"N": N, "n": n, "l": l, "d": d,
                            "points": len(rows), "failures": failures})
    return {"id": 4, "name": "norm identity trace = Norm(u(x)) mod lambda",
            "passed": ok, "sign": od.NORM_IDENTITY_SIGN,
            "details": details}, time.monotonic() - t0


def criterion_5():
    """Unit-root implication u(x) != 0 => min normalized slope = 0.

    Slope records are computed wherever the field-size envelope allows the
    d = 1..n extension scans: (3,2,7) at d in {1,2} and (11,3,23) at d = 1.
    For (11,3,23) at d = 2 the polygon would need traces over F_23^6
    (~1.5e8 points, beyond the 2^20 table limit), so the min-slope clause is
    verified there through its exact equivalent, the unit-trace clause
    u(x) != 0 => val_lambda(trace) = 0, which is what forces the slope-0
    segment. Full ordinarity is advisory.
    """
    t0 = time.monotonic()
    details = []
    ok = True
    advisory_all = True
    for N, n, l in NORM_CONFIGS:
        test = _ordinary_test(N, n, l)
        for d in (1, 2):
            K = extension_of(test.field_v, d)
            if K.q ** n <= (1 << 20):
                params = test.params
                points = sorted(hg.trace_all_fast(params, K), key=lambda e: e.k)
                recs = parallel_map(lambda x: hg.char_poly(params, K, x), points)
                checked = skipped = full = 0
                for rec in recs:
                    hg.newton_polygon(rec, test.lam)
                    rep = od.unit_root_check(test, rec)  # raises on violation
                    if rep.skipped:
                        skipped += 1
                    else:
                        checked += 1
                        full += rep.fully_ordinary
                advisory = (full == checked)
                advisory_all &= advisory
                details.append({"N": N, "n": n, "l": l, "d": d,
                                "mode": "newton-polygon", "checked": checked,
                                "u_zero_skipped": skipped,
                                "fully_ordinary": advisory})
            else:
                traces = hg.trace_all_fast(test.params, K)
                bad = []
                checked = skipped = 0
                for x in sorted(traces, key=lambda e: e.k):
                    if test.u_at(x).is_zero():
                        skipped += 1
                        continue
                    checked += 1
                    if reduce_mod_lambda(traces[x], test.lam).is_zero():
                        bad.append(K.dlog(x))
                ok &= not bad
                details.append({"N": N, "n": n, "l": l, "d": d,
                                "mode": "unit-trace", "checked": checked,
                                "u_zero_skipped": skipped, "violations": bad})
    return {"id": 5, "name": "unit root at u-nonvanishing points",
            "passed": ok, "advisory_fully_ordinary": advisory_all,
            "details": details}, time.monotonic() - t0


def criterion_6(seed):
    """Lucas congruence on 500 seeded random (c, d, r) instances per l."""
    t0 = time.monotonic()
    rng = random.Random(seed)
    details = []
    ok = True
    for l in (5, 7, 11):
        fails = 0
        for _ in range(500):
            d = rng.randint(1, 3)
            c = rng.randint(1, l - 2)
            digits = [rng.randint(0, l - 2) for _ in range(d)]
            if not od.lucas_check(c, l, d, digits, l):
                fails += 1
        ok &= fails == 0
        details.append({"l": l, "instances": 500, "failures": fails})
    return {"id": 6, "name": "Lucas congruence",
            "passed": ok, "details": details}, time.monotonic() - t0


def _breuil_sweep_tuples():
    for p in (3, 5):
        for e in (1, 2, 3):
            for f in (1, 2):
                hi = e * (p - 2)
                for s in product(range(hi + 1), repeat=f):
                    for t in product(range(hi + 1), repeat=f):
                        yield p, e, f, s, t


def criterion_7():
    """Exhaustive slope invariants: recurrence and r_i in [1, p]."""
    t0 = time.monotonic()
    count = 0
    for p, e, f, s, t in _breuil_sweep_tuples():
        br.slope_data(s, t, e, p, f)  # asserts both invariants
        count += 1
    elapsed = time.monotonic() - t0
    ok = elapsed < 60.0
    return {"id": 7, "name": "Breuil slope invariants (exhaustive)",
            "passed": ok, "tuples": count, "budget_s": 60}, elapsed


def criterion_8():
    """Witness disjunction for every negative-total tuple in the sweep."""
    t0 = time.monotonic()
    count = 0
    from math import floor
    for p, e, f, s, t in _breuil_sweep_tuples():
        if sum(s[j] - t[j] - e for j in range(f)) >= 0:
            continue
        n, r = br.slope_data(s, t, e, p, f)
        disj = any((floor(n[(i + 1) % f]) == -1 and r[i] != p)
                   or floor(n[(i + 1) % f]) <= -2 for i in range(f))
        assert disj, (p, e, f, s, t)
        i, x = br.genericity_obstruction(s, t, e, p, f)
        assert (x - t[i]) % p != 0 and x <= s[i] - e
        count += 1
    return {"id": 8, "name": "witness existence (lemma disjunction)",
            "passed": True, "tuples": count}, time.monotonic() - t0


def criterion_9(seed):
    """Non-surjectivity oracle at p=5, f=1, e in {1,2}.

    For each (s, t) with s - t - e < 0: the constructed witness class is
    change-of-variables infeasible; every BK-allowed class normalizes into
    the image windows and its window class is feasible; and monodromy
    feasibility agrees with the forbidden-degree predicate on all candidate
    y over F_5 (batch checker, spot-validated against the one-shot solver,
    and verdicts are d-independent for a random unit d).
    """
    t0 = time.monotonic()
    p, f = 5, 1
    F = field_make(p, 1)
    one = F.one()
    rng = random.Random(seed)
    pairs = 0
    y_checked = 0
    details = []
    for e in (1, 2):
        hi = e * (p - 2)
        for s_ in range(hi + 1):
            for t_ in range(hi + 1):
                if s_ - t_ - e >= 0:
                    continue
                top = br.make_rank_one(p, f, e, (s_,), one)
                bot = br.make_rank_one(p, f, e, (t_,), one)
                i, x = br.genericity_obstruction((s_,), (t_,), e, p, f)
                witness_verdict = br.change_of_variables_solver(
                    {(i, x): one}, top, bot)
                assert witness_verdict == br.INFEASIBLE, (e, s_, t_)
                # constructive direction: each clean basis class round-trips
                prob0 = br.make_ext_problem(top, bot)
                forb = br.breuil_forbidden_degrees(prob0)[0]
                clean = [l for l in range(s_) if l not in forb]
                for l in clean:
                    nf = br.normal_form_in_windows({(0, l): one}, top, bot)
                    assert nf != br.INFEASIBLE, (e, s_, t_, l)
                    assert br.change_of_variables_solver(nf, top, bot) \
                        != br.INFEASIBLE, (e, s_, t_, l)
                # monodromy feasibility == forbidden-degree predicate, all y
                degs, check = br.monodromy_feasibility_checker(top, bot)
                for coeffs in product(range(p), repeat=s_):
                    y = {(0, l): F.from_int(c)
                         for l, c in enumerate(coeffs) if c}
                    feas = check(y)
                    clean_y = all(l not in forb for (_, l) in y)
                    assert feas == clean_y, (e, s_, t_, coeffs, feas)
                    y_checked += 1
                # spot check the batch verdicts against the one-shot solver,
                # with and without a random unit d
                for _ in range(4):
                    coeffs = tuple(rng.randrange(p) for _ in range(s_))
                    y = {(0, l): F.from_int(c)
                         for l, c in enumerate(coeffs) if c}
                    prob = br.make_ext_problem(top, bot, y=y)
                    v1 = br.solve_monodromy(prob) != br.INFEASIBLE
                    d_unit = {0: F.from_dlog(rng.randrange(p - 1)),
                              1: F.from_int(rng.randrange(p))}
                    v2 = br.solve_monodromy(prob, d_unit=d_unit) != br.INFEASIBLE
                    assert v1 == v2 == check(y), (e, s_, t_, coeffs)
                pairs += 1
        details.append({"e": e, "pairs_done": pairs})
    return {"id": 9, "name": "non-surjectivity oracle (p=5, f=1)",
            "passed": True, "pairs": pairs, "y_candidates": y_checked,
            "details": details}, time.monotonic() - t0


def criterion_10():
    """Chain-slope forcing, exhaustive over d <= 4, e <= 2, f <= 2."""
    t0 = time.monotonic()
    chains = 0
    for d in (1, 2, 3, 4):
        for e in (1, 2):
            for f in (1, 2):
                hmax = e * (d - 1)
                levels = [lv for lv in product(range(hmax + 1), repeat=f)]
                grouped = {}
                for lv in levels:
                    grouped.setdefault(sum(lv), []).append(lv)

                def extend(chain, total):
                    nonlocal chains
                    if len(chain) == d:
                        assert br.chain_slope_check(chain, e)
                        chains += 1
                        return
                    for nt in range(total + e * f, hmax * f + 1):
                        for lv in grouped.get(nt, []):
                            extend(chain + (lv,), nt)

                if d == 1:
                    for lv in levels:
                        assert br.chain_slope_check((lv,), e)
                        chains += 1
                else:
                    for lv in levels:
                        extend((lv,), sum(lv))
    return {"id": 10, "name": "chain slope forcing (exhaustive)",
            "passed": True, "chains": chains}, time.monotonic() - t0


def criterion_11(seed):
    """Unitary suite: normalization, symmetric powers, induced spectra."""
    t0 = time.monotonic()
    rng = random.Random(seed)
    details = {}
    for q in (3, 5, 7):
        for n in (2, 3, 4):
            Fq, Fq2 = un.gu_fields(q)
            done = 0
            while done < 200:
                M = [[Fq2.from_encoding(rng.randrange(Fq2.q))
                      for _ in range(n)] for _ in range(n)]
                A = [[x + y for x, y in zip(r1, r2)]
                     for r1, r2 in zip(M, un.adjoint(M, q))]
                if _det(A).is_zero():
                    continue
                sp = un.hermitian_space(q, A)
                C = un.diagonalize_to_identity(sp)
                assert mat_mul(un.adjoint(C, q), mat_mul(A, C)) == \
                    mat_identity(Fq2, n)
                done += 1
            details[f"normalize_q{q}_n{n}"] = done
    for p, m, n in ((7, 2, 1), (11, 3, 2), (13, 2, 3)):
        beta = 2 if p != 7 else 3
        B, eigs, alpha = un.sym_power_embed(beta, n, m, p)
        Fq = field_make(p, 1)
        assert m == 1 or un.is_gu(B, p, Fq) == Fq.one()
        details[f"sym_p{p}_m{m}_n{n}"] = "su+spectrum"
    for m in (2, 3):
        qbase = 13
        Fb = field_make(qbase, 1)
        for _ in range(25):
            psis = [Fb.from_dlog(rng.randrange(qbase - 1)) for _ in range(m)]
            un.induced_spectrum(psis, Fb)  # asserts ratio multiset = mu_m
        details[f"induced_m{m}"] = 25
    return {"id": 11, "name": "unitary suite",
            "passed": True, "details": details}, time.monotonic() - t0


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11,
}

SEEDED = {6, 9, 11}


def run_criterion(k, seed=0):
    fn = CRITERIA[k]
    try:
        if k in SEEDED:
            return fn(seed)
        return fn()
    except AssertionError as exc:
        return {"id": k, "name": fn.__doc__.splitlines()[0],
                "passed": False, "error": str(exc)}, 0.0


def run_report(seed=0):
    """Criteria 1..11 as one deterministic report dict (no timing inside)."""
    report = {"schema_version": 1, "seed": seed, "criteria": []}
    timings = {}
    for k in sorted(CRITERIA):
        res, elapsed = run_criterion(k, seed)
        report["criteria"].append(res)
        timings[k] = elapsed
    report["all_passed"] = all(c["passed"] for c in report["criteria"])
    return report, timings


def criterion_12(seed=0):
    """Determinism: two same-seed report runs are byte-identical."""
    t0 = time.monotonic()
    r1, _ = run_report(seed)
    r2, _ = run_report(seed)
    b1, b2 = stable_json(r1), stable_json(r2)
    return {"id": 12, "name": "determinism (byte-identical reports)",
            "passed": b1 == b2 and r1["all_passed"],
            "bytes": len(b1)}, time.monotonic() - t0


def selftest(seed=0, include_determinism=True):
    """Run every criterion; returns (report, timings, all_passed)."""
    report, timings = run_report(seed)
    if include_determinism:
        t0 = time.monotonic()
        r2, _ = run_report(seed)
        same = stable_json(report) == stable_json(r2)
        timings[12] = time.monotonic() - t0
        report["criteria"].append({
            "id": 12, "name": "determinism (byte-identical reports)",
            "passed": same})
        report["all_passed"] = report["all_passed"] and same
    return report, timings, report["all_passed"]
