import random
from fractions import Fraction
from itertools import product

import pytest

from dwork_forge.breuil import (INFEASIBLE, PreconditionViolated,
                                SpecialDegreeNotInteger, alpha_invariants,
                                bk_extension_degrees, breuil_forbidden_degrees,
                                chain_slope_check, change_of_variables_solver,
                                chi_equal, etale_image_windows,
                                genericity_obstruction, hom_exists,
                                make_ext_problem, make_rank_one,
                                monodromy_feasibility_checker,
                                normal_form_in_windows, slope_data,
                                solve_monodromy)
from dwork_forge.ff import field_make

F5 = field_make(5, 1)
ONE = F5.one()


def test_alpha_examples():
    assert alpha_invariants((0, 0), 5, 2) == (Fraction(0), Fraction(0))
    assert alpha_invariants((4,), 5, 1) == (Fraction(1),)
    assert alpha_invariants((1, 2), 5, 2)[0] == Fraction(11, 24)


def test_alpha_shifts_with_s():
    # cyclically shifting s shifts alpha
    s = (1, 3, 0)
    a = alpha_invariants(s, 3, 3)
    s_shift = (3, 0, 1)
    b = alpha_invariants(s_shift, 3, 3)
    assert a[1] == b[0] and a[2] == b[1] and a[0] == b[2]


def test_hom_exists():
    top = make_rank_one(5, 1, 1, (4,), ONE)
    bot = make_rank_one(5, 1, 1, (0,), ONE)
    assert hom_exists(top, top)
    assert hom_exists(top, bot)
    assert not hom_exists(bot, top)
    bot_b = make_rank_one(5, 1, 1, (0,), F5.gen())
    assert not hom_exists(top, bot_b)


def test_slope_data_examples():
    n, r = slope_data((3,), (0,), 2, 5, 1)
    assert n == (Fraction(1, 4),) and r == (2,)
    n, r = slope_data((2,), (2,), 1, 5, 1)
    assert n == (Fraction(-1, 4),) and r == (4,)
    n, r = slope_data((1, 1), (0, 0), 1, 5, 2)
    assert all(x == 0 for x in n) and r == (1, 1)


def test_slope_recurrence_and_range_sweep():
    for p in (3, 5):
        for e in (1, 2):
            hi = e * (p - 2)
            for f in (1, 2):
                for s in product(range(hi + 1), repeat=f):
                    for t in product(range(hi + 1), repeat=f):
                        n, r = slope_data(s, t, e, p, f)
                        for j in range(f):
                            assert n[j] + (s[j - 1] - t[j - 1] - e) == p * n[j - 1]
                            assert 1 <= r[j] <= p


def test_bk_extension_degrees():
    top0 = make_rank_one(5, 1, 1, (0,), ONE)
    assert bk_extension_degrees(top0, make_rank_one(5, 1, 1, (1,), F5.gen()))[0] == [set()]
    top3 = make_rank_one(5, 1, 2, (3,), ONE)
    degs, special = bk_extension_degrees(top3, make_rank_one(5, 1, 2, (0,), F5.gen()))
    assert degs == [{0, 1, 2}] and special is None
    top4 = make_rank_one(5, 1, 1, (4,), ONE)
    bot0 = make_rank_one(5, 1, 1, (0,), ONE)
    degs, special = bk_extension_degrees(top4, bot0)
    assert degs == [{0, 1, 2, 3}] and special == [5]


def test_forbidden_degrees_examples():
    top = make_rank_one(5, 1, 2, (3,), ONE)
    bot = make_rank_one(5, 1, 2, (0,), ONE)
    prob = make_ext_problem(top, bot)
    assert breuil_forbidden_degrees(prob) == [{1}]
    # vacuous when the threshold drops to zero or below
    top2 = make_rank_one(5, 1, 2, (1,), ONE)
    bot2 = make_rank_one(5, 1, 2, (0,), ONE)
    assert breuil_forbidden_degrees(make_ext_problem(top2, bot2)) == [set()]


def test_monodromy_examples():
    top = make_rank_one(5, 1, 2, (3,), ONE)
    bot = make_rank_one(5, 1, 2, (0,), ONE)
    assert solve_monodromy(make_ext_problem(top, bot)) == [{}]
    assert solve_monodromy(
        make_ext_problem(top, bot, y={(0, 1): ONE})) == INFEASIBLE
    assert solve_monodromy(
        make_ext_problem(top, bot, y={(0, 0): ONE})) != INFEASIBLE


def test_monodromy_forbidden_equivalence_and_d_independence():
    rng = random.Random(4)
    for (e, s_, t_) in [(2, 3, 0), (1, 2, 1), (2, 5, 2), (3, 4, 0)]:
        top = make_rank_one(5, 1, e, (s_,), ONE)
        bot = make_rank_one(5, 1, e, (t_,), ONE)
        forb = breuil_forbidden_degrees(make_ext_problem(top, bot))[0]
        degs, check = monodromy_feasibility_checker(top, bot)
        for coeffs in product(range(5), repeat=s_):
            y = {(0, l): F5.from_int(c) for l, c in enumerate(coeffs) if c}
            feasible = check(y)
            assert feasible == all(l not in forb for (_, l) in y)
            # spot the one-shot solver and a scaled unit d on a subsample
            if rng.random() < 0.05:
                prob = make_ext_problem(top, bot, y=y)
                assert (solve_monodromy(prob) != INFEASIBLE) == feasible
                d_unit = {0: F5.from_dlog(rng.randrange(4)),
                          1: F5.from_int(rng.randrange(5))}
                assert (solve_monodromy(prob, d_unit=d_unit)
                        != INFEASIBLE) == feasible


def test_monodromy_f2():
    # two-component frame: zero class is always crystalline
    F25 = field_make(5, 2)
    one = F25.one()
    top = make_rank_one(5, 2, 2, (3, 1), one)
    bot = make_rank_one(5, 2, 2, (0, 2), one)
    assert solve_monodromy(make_ext_problem(top, bot)) is not INFEASIBLE
    forb = breuil_forbidden_degrees(make_ext_problem(top, bot))
    degs, check = monodromy_feasibility_checker(top, bot)
    for j, ds in enumerate(degs):
        for l in ds:
            y = {(j, l): one}
            assert check(y) == (l not in forb[j]), (j, l)


def test_genericity_obstruction_examples():
    assert genericity_obstruction((0,), (1,), 1, 5, 1) == (0, -1)
    i, x = genericity_obstruction((0,), (2,), 1, 3, 1)
    assert i == 0 and (x - 2) % 3 != 0 and x <= 0 - 1
    with pytest.raises(PreconditionViolated):
        genericity_obstruction((1,), (0,), 1, 5, 1)


def test_genericity_obstruction_sweep_bounds():
    from math import floor
    for p in (3, 5):
        for e in (1, 2, 3):
            hi = e * (p - 2)
            for f in (1, 2):
                for s in product(range(hi + 1), repeat=f):
                    for t in product(range(hi + 1), repeat=f):
                        if sum(s[j] - t[j] - e for j in range(f)) >= 0:
                            continue
                        n, _ = slope_data(s, t, e, p, f)
                        i, x = genericity_obstruction(s, t, e, p, f)
                        assert (x - t[i]) % p != 0
                        assert x <= s[i] - e
                        lo = s[i] + floor(n[(i + 1) % f]) - e + 1
                        hi_w = s[i] + floor(n[(i + 1) % f])
                        assert lo <= x <= hi_w


def test_etale_image_windows():
    w, dim, special = etale_image_windows((3,), (0,), 2, 5, 1)
    assert [list(r) for r in w] == [[2, 3]] and dim == 2 and special is None
    # every window has exactly e integers
    for (s, t, e, p, f) in [((1, 4), (2, 0), 3, 5, 2), ((0,), (3,), 2, 5, 1)]:
        w, dim, _ = etale_image_windows(s, t, e, p, f)
        assert all(len(r) == e for r in w) and dim == e * f


def test_etale_windows_special_term():
    # chi_1 = chi_2 with integral alpha-differences adds one degree
    w, dim, special = etale_image_windows((4,), (0,), 1, 5, 1, chi_equal_flag=True)
    assert dim == 2 and special == (5,)
    # a bogus flag on non-integral differences is surfaced, not skipped
    with pytest.raises(SpecialDegreeNotInteger):
        etale_image_windows((3,), (0,), 2, 5, 1, chi_equal_flag=True)


def test_chi_equal():
    a = make_rank_one(5, 1, 2, (5,), ONE)
    b = make_rank_one(5, 1, 2, (1,), ONE)
    assert chi_equal(a, b)        # alpha difference = 1
    assert not hom_exists(b, a)   # difference negative from the other side
    c = make_rank_one(5, 1, 2, (2,), ONE)
    assert not chi_equal(a, c)    # difference 3/4


def test_change_of_variables_witness_and_roundtrip():
    for e in (1, 2):
        hi = e * 3
        for s_ in range(hi + 1):
            for t_ in range(hi + 1):
                if s_ - t_ - e >= 0:
                    continue
                top = make_rank_one(5, 1, e, (s_,), ONE)
                bot = make_rank_one(5, 1, e, (t_,), ONE)
                i, x = genericity_obstruction((s_,), (t_,), e, 5, 1)
                assert change_of_variables_solver(
                    {(i, x): ONE}, top, bot) == INFEASIBLE
                forb = breuil_forbidden_degrees(make_ext_problem(top, bot))[0]
                for l in (l for l in range(s_) if l not in forb):
                    nf = normal_form_in_windows({(0, l): ONE}, top, bot)
                    assert nf != INFEASIBLE
                    assert change_of_variables_solver(nf, top, bot) != INFEASIBLE


def test_etale_phi_class_support_checked():
    from dwork_forge.breuil import make_etale_class
    top = make_rank_one(5, 1, 2, (3,), ONE)
    bot = make_rank_one(5, 1, 2, (0,), ONE)
    cls = make_etale_class(top, bot, {(0, 2): ONE, (0, 3): ONE})
    assert change_of_variables_solver(cls, top, bot) != INFEASIBLE
    with pytest.raises(ValueError):
        make_etale_class(top, bot, {(0, 7): ONE})
    # chi-equal pair admits its special degree
    t5 = make_rank_one(5, 1, 2, (5,), ONE)
    b1 = make_rank_one(5, 1, 2, (1,), ONE)
    assert chi_equal(t5, b1)
    make_etale_class(t5, b1, {(0, 5 + 1): ONE})


def test_change_of_variables_zero_class():
    top = make_rank_one(5, 1, 2, (3,), ONE)
    bot = make_rank_one(5, 1, 2, (0,), ONE)
    verdict = change_of_variables_solver({}, top, bot)
    assert verdict != INFEASIBLE
    y_sol, lam_sol = verdict
    assert not y_sol and all(not lj for lj in lam_sol)


def test_change_of_variables_f2_sampled():
    # two-component frames, sampled: witness infeasible, clean classes
    # round-trip through the windows
    F25 = field_make(5, 2)
    one = F25.one()
    rng = random.Random(23)
    done = 0
    while done < 12:
        e = rng.randint(1, 2)
        hi = 3 * e
        s = (rng.randint(0, hi), rng.randint(0, hi))
        t = (rng.randint(0, hi), rng.randint(0, hi))
        if sum(s[j] - t[j] - e for j in range(2)) >= 0:
            continue
        top = make_rank_one(5, 2, e, s, one)
        bot = make_rank_one(5, 2, e, t, one)
        i, x = genericity_obstruction(s, t, e, 5, 2)
        assert change_of_variables_solver({(i, x): one}, top, bot) == INFEASIBLE
        forb = breuil_forbidden_degrees(make_ext_problem(top, bot))
        for j in range(2):
            clean = [l for l in range(s[j]) if l not in forb[j]]
            if clean:
                nf = normal_form_in_windows({(j, clean[0]): one}, top, bot)
                assert nf != INFEASIBLE
                assert change_of_variables_solver(nf, top, bot) != INFEASIBLE
        done += 1


def test_larger_frames_sampled():
    # beyond the exhaustive sweep range: p = 7 and f = 3, randomly sampled
    rng = random.Random(17)
    for _ in range(300):
        p = rng.choice((5, 7))
        e = rng.randint(1, 3)
        f = rng.randint(1, 3)
        hi = e * (p - 2)
        s = tuple(rng.randint(0, hi) for _ in range(f))
        t = tuple(rng.randint(0, hi) for _ in range(f))
        n, r = slope_data(s, t, e, p, f)  # asserts recurrence and r range
        if sum(s[j] - t[j] - e for j in range(f)) < 0:
            i, x = genericity_obstruction(s, t, e, p, f)
            assert (x - t[i]) % p != 0 and x <= s[i] - e


def test_chain_slope_check():
    assert chain_slope_check(((0,),), 1)                 # d = 1 vacuous
    assert chain_slope_check(((0,), (1,)), 1)            # forced d = 2 chain
    assert chain_slope_check(((0, 0), (2, 2), (4, 4)), 2)
    with pytest.raises(PreconditionViolated):
        chain_slope_check(((0,), (0,)), 1)               # increment fails
    with pytest.raises(PreconditionViolated):
        chain_slope_check(((0,), (2,)), 1)               # height too big
