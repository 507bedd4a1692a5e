"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
(section "acceptance criteria") and also to stdout with ``-s``.
"""

import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest

from randsub.charpoly import (
    X_PLUS_ONE,
    characteristic_poly,
    divide_by_x_plus_one,
    eval_integer,
    quotient_closed_form,
)
from randsub.convergence import (
    alpha1_general,
    alpha1_pair_printed,
    alpha1_pair_sums,
    alpha1_report,
    tail_index,
)
from randsub.extensions import (
    PILE_FIRST,
    UNIFORM_MOVES,
    MultiPileGame,
    PilePosition,
    dynamic_one_or_all,
    multipile_value,
    take_any_sequence,
)
from randsub.recurrence import EXACT, FLOAT, eval_sequence, iter_sequence, make_set
from randsub.roots import analyze_roots, closed_form_coefficients, find_roots_array
from randsub.scan import enumerate_sets, scan_conjecture, scan_question

from conftest import ACCEPTANCE_LINES


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def float_tail(S, n):
    """a_n in float mode by streaming (no history kept)."""
    for i, v in enumerate(iter_sequence(S, FLOAT)):
        if i == n:
            return v


def test_01_single_element_blocks():
    bad = []
    for k in range(1, 10):
        vals = eval_sequence(make_set([k]), 10 * k, EXACT).values
        for n, v in enumerate(vals):
            if v != F(1 + (-1) ** (n // k + 1), 2):
                bad.append((k, n))
    report(1, "t=1 block pattern", not bad, f"mismatches={bad[:5]}")


def test_02_parity_alternation():
    bad = []
    for elems in ([1, 3], [1, 3, 5], [1, 5, 9]):
        S = make_set(elems)
        vals = eval_sequence(S, 10**4, EXACT).values
        if any(v != n % 2 for n, v in enumerate(vals)):
            bad.append((elems, "sequence"))
        if alpha1_general(S) != F(-1, 2):
            bad.append((elems, "alpha1", alpha1_general(S)))
    report(2, "parity alternation and alpha1 = -1/2", not bad, f"problems={bad}")


def test_03_convergent_case():
    dev12 = abs(float_tail(make_set([1, 2]), 200) - 0.5)
    worst = (0.0, None)
    for k, l in itertools.combinations(range(1, 22), 2):
        if (k + l) % 2 == 0 or math.gcd(k, l) != 1:
            continue
        S = make_set([k, l])
        gap = analyze_roots(S, check_square_free=False).spectral_gap
        n = tail_index(gap, 1e-8)
        dev = abs(float_tail(S, n) - 0.5)
        if dev > worst[0]:
            worst = (dev, (k, l, n))
    ok = dev12 < 1e-10 and worst[0] < 1e-6
    report(3, "convergence to 1/2", ok, f"{{1,2}} dev={dev12:.2e}, worst pair dev={worst[0]:.2e} at {worst[1]}")


def test_04_oscillation_audit():
    S = make_set([3, 5])
    sums = alpha1_pair_sums(3, 5)
    printed = alpha1_pair_printed(3, 5)
    gap = analyze_roots(S).spectral_gap
    n_max = tail_index(gap, 1e-6)
    vals = eval_sequence(S, n_max + 1, FLOAT).values
    even_n = n_max if n_max % 2 == 0 else n_max + 1
    odd_n = n_max if n_max % 2 else n_max + 1
    even_dev = abs(vals[even_n] - 3 / 8)
    odd_dev = abs(vals[odd_n] - 5 / 8)
    flags = alpha1_report(S).agreement
    ok = (
        sums == F(-1, 8)
        and printed == F(-3, 8)
        and even_dev < 1e-4
        and odd_dev < 1e-4
        and flags["printed_mismatch"]
    )
    report(
        4,
        "{3,5} oscillation audit",
        ok,
        f"sums={sums}, printed={printed}, n_max={n_max}, even dev={even_dev:.1e}, odd dev={odd_dev:.1e}",
    )


def test_05_root_dichotomy():
    count, parity_bad, worst = 0, [], 0.0
    for S in enumerate_sets(5, 31, all_odd=False, coprime=True):
        count += 1
        chi = characteristic_poly(S)
        if (eval_integer(chi, -1) == 0) != S.all_odd:
            parity_bad.append(S.elements)
        z, _ = find_roots_array(chi)
        worst = max(worst, float(np.max(np.abs(z))))
    ok = not parity_bad and worst <= 1 + 1e-8
    report(5, "root dichotomy", ok, f"sets={count}, parity mismatches={len(parity_bad)}, max modulus={worst:.15f}")


def test_06_conjecture_scan():
    rep = scan_conjecture(4, 25)
    s = rep.summary
    report(6, "square-free in range", not s["failures"], f"checked={s['checked']}, failures={s['failures']}")


def test_07_question_scan():
    rep = scan_question(4, 25)
    s = rep.summary
    ok = not s["zeros"] and s["all_negative"]
    report(7, "alpha1 nonzero and negative in range", ok,
           f"checked={s['checked']}, zeros={len(s['zeros'])}, smallest |alpha1|={s['min_abs_alpha1']}")


def test_08_route_equality():
    pair_bad, quot_bad, n_sets = [], [], 0
    for S in enumerate_sets(4, 25):
        n_sets += 1
        Q = quotient_closed_form(S)
        q, r = divide_by_x_plus_one(characteristic_poly(S))
        if r != 0 or q != Q or X_PLUS_ONE * Q != characteristic_poly(S):
            quot_bad.append(S.elements)
        if S.t == 2:
            k, l = S.elements
            if alpha1_general(S) != alpha1_pair_sums(k, l):
                pair_bad.append(S.elements)
    ok = not pair_bad and not quot_bad
    report(8, "alpha1 routes and quotient identity", ok,
           f"sets={n_sets}, pair mismatches={pair_bad}, quotient failures={quot_bad}")


def test_09_closed_form_reconstruction():
    details, ok = [], True
    for elems in ([1, 2], [3, 5], [1, 3, 5]):
        S = make_set(elems)
        run = eval_sequence(S, 200, FLOAT)
        cf = closed_form_coefficients(S, run)
        err = float(np.max(np.abs(cf.reconstruct_range(200) - np.array(run.values))))
        ok &= err < 1e-8
        msg = f"{elems}: err={err:.1e}"
        if S.all_odd:
            a_err = abs(cf.alpha_at_minus_one - float(alpha1_general(S)))
            ok &= a_err < 1e-6
            msg += f", alpha err={a_err:.1e}"
        details.append(msg)
    report(9, "closed-form reconstruction", ok, "; ".join(details))


def test_10_gcd_reduction():
    bad = []
    for elems in ([1, 3], [2, 3]):
        S = make_set(elems)
        small = eval_sequence(S, 500, EXACT).values
        for m in (2, 3):
            big = eval_sequence(S.scaled(m), 500 * m, EXACT).values
            if any(big[m * n] != small[n] for n in range(501)):
                bad.append((elems, m))
    report(10, "gcd reduction", not bad, f"failures={bad}")


def test_11_extensions():
    problems = []
    for n in range(101):
        if dynamic_one_or_all(n) != F(2, 3) * (1 - F(-1, 2) ** n):
            problems.append(("one-or-all", n))
    dev60 = abs(float(dynamic_one_or_all(60)) - 2 / 3)
    if not dev60 < 1e-12:
        problems.append(("one-or-all n=60", dev60))

    ta = take_any_sequence(100)
    if ta[0] != 0 or ta[1] != 1 or any(v != F(1, 2) for v in ta[2:]):
        problems.append(("take-any",))

    positions = 0
    for r in (1, 2, 3):
        game = MultiPileGame.of(*([[1]] * r))
        for counts in itertools.product(range(7), repeat=r):
            positions += 1
            want = sum(counts) % 2
            for mode in (PILE_FIRST, UNIFORM_MOVES):
                if multipile_value(game, PilePosition(counts), mode) != want:
                    problems.append(("parity", counts, mode))

    for elems in ([1, 2], [3, 5], [2, 3, 7]):
        S = make_set(elems)
        vals = eval_sequence(S, 100, EXACT).values
        game = MultiPileGame((S,))
        if any(multipile_value(game, PilePosition((n,))) != vals[n] for n in range(101)):
            problems.append(("r=1", elems))

    report(11, "extensions", not problems, f"parity positions={positions}, problems={problems[:5]}")
