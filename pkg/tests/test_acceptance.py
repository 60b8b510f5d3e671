"""One test per acceptance criterion; each records a PASS/FAIL line."""

import random
import time

from combtypes import prelude
from combtypes.application import Budget, BudgetExhausted, apply_type
from combtypes.bench import run_bench
from combtypes.corpus import medium, s_power, reference
from combtypes.inference import OutOfBudget, check_derivation, default_limit, infer
from combtypes.kernel import App, K, S, Var, match_tagged
from combtypes.surface import read_term
from combtypes.theorems import check_subject_reduction, check_theorems
from combtypes.typemodel import BOOL, I0, K0, NAT, S0, K1, Product, S1, S2

import oracles


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_exact_s_power_counts(criterion):
    expected = {4: (5, 10), 10: (11, 70), 100: (101, 7450)}
    got, worst = {}, 0.0
    for n in expected:
        term = read_term(s_power(n))
        r, secs = _timed(lambda: infer(term, limit=default_limit(term)))
        got[n] = (r.term_size, r.calls)
        worst = max(worst, secs)
        assert r.verdict == "yes"
    # The independent call counter agrees with the library.
    assert {n: oracles.s_power_calls(n) for n in expected} == {n: c for n, (_, c) in got.items()}
    criterion("exact S^n sizes and calls (S^4, S^10, S^100)",
              got == expected and worst < 1.0, f"{got}, slowest {worst:.3f}s")


def test_quadratic_scaling(criterion):
    a, b, c = oracles.quadratic_through([(4, 10), (10, 70), (100, 7450)])
    ns = [4, 5, 6, 7, 8, 9, 10, 20, 33, 50, 77, 100, 150, 200]
    worst = 0.0
    for n in ns:
        measured = infer(read_term(s_power(n)), limit=None).calls
        fit = a * n * n + b * n + c
        worst = max(worst, abs(measured - fit) / fit)
    criterion("S^n calls within 5% of the quadratic through the three reference points",
              worst <= 0.05, f"fit {a}n^2 + ({b})n + {c}, worst relative error {float(worst):.4f}")


def test_divergence_control(criterion):
    sii = read_term("S I I")
    term = sii(sii)
    r, secs = _timed(lambda: infer(term, limit=default_limit(term, 100)))
    swift = r.outcome == OutOfBudget() and secs < 1.0
    unbounded = True
    for limit in (10**3, 10**4, 10**5, 10**6):
        try:
            apply_type(S2(I0, I0), S2(I0, I0), Budget(limit))
            unbounded = False
        except BudgetExhausted as e:
            unbounded &= e.used == limit
    criterion("(SII)(SII) runs out of budget swiftly; S2 I0 I0 self-application has no value",
              swift and unbounded, f"{r.calls} calls in {secs:.3f}s; bounds 1e3..1e6 exhausted")


def test_verdicts_and_ratio_bound(criterion):
    rows = run_bench(reference(), 100)
    # Exhausting the budget is a rejection, so it counts as "no".
    verdict = {"yes": "yes", "no": "no", "budget": "no"}
    mismatched = [r.label for r in rows if verdict.get(r.verdict) != r.ref_verdict]
    typed = [r for r in rows if r.verdict == "yes"]
    stress = [r for r in typed if set(r.label) <= set("S^0123456789")]
    worst = max((r for r in typed if r not in stress), key=lambda r: r.ratio)
    excluded = ", ".join(f"{r.label}={float(r.ratio):.2f}" for r in stress)
    criterion("reference verdicts match; ratio <= 3 on typed rows outside the S^n stress family",
              not mismatched and worst.ratio <= 3,
              f"{len(rows)} rows, mismatches {mismatched}; worst {worst.label}="
              f"{float(worst.ratio):.2f}; S^n rows carry fixed exact counts: {excluded}")


def _typed_corpus():
    for entry in reference() + medium():
        term = read_term(entry.source)
        if infer(term, limit=default_limit(term)).verdict == "yes":
            yield entry.label, term


def test_subject_reduction(criterion):
    failures, checked, steps = [], 0, 0
    for label, term in _typed_corpus():
        res = check_subject_reduction(term, max_steps=10**4)
        checked += 1
        steps += res.steps
        if not res.passed:
            failures.append((label, res.failed_at, res.detail))
    criterion("type invariant along every reduction trace of typed corpus terms",
              not failures and checked > 0, f"{checked} terms, {steps} steps, failures {failures}")


_ATOMS = [S, K] + [prelude.get(n) for n in (
    "I", "zero", "tt", "ff", "successor", "pair", "isZero", "fst", "snd", "cond",
    "predecessor", "inl", "nil", "cons")] + [Var("x"), Var("b")]
_GAMMA = [("x", NAT), ("b", BOOL)]
_OTHER_TYPES = [S0, K0, I0, NAT, BOOL, Product(NAT, BOOL), K1(NAT), S1(K0)]


def _random_term(rng: random.Random, leaves: int):
    if leaves == 1:
        return rng.choice(_ATOMS)
    left = rng.randint(1, leaves - 1)
    return App(_random_term(rng, left), _random_term(rng, leaves - left))


def test_uniqueness_and_determinism(criterion):
    rng = random.Random(20261014)
    total, typed, problems = 10_000, 0, []
    for i in range(total):
        term = _random_term(rng, rng.randint(1, 7))
        first = infer(term, _GAMMA, limit=10_000)
        second = infer(term, _GAMMA, limit=10_000)
        if (first.outcome, first.calls) != (second.outcome, second.calls):
            problems.append(("nondeterministic", i))
            continue
        if first.verdict != "yes":
            continue
        typed += 1
        if not check_derivation(_GAMMA, term, first.type):
            problems.append(("derivation rejected", i))
        other = _OTHER_TYPES[i % len(_OTHER_TYPES)]
        if other is not first.type and check_derivation(_GAMMA, term, other):
            problems.append(("second type derivable", i))
    criterion("inference deterministic and every inferred type checks (10^4 terms)",
              not problems, f"{total} terms, {typed} typed, problems {problems[:5]}")


def _has_constructor_candidate(t) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if match_tagged(u) is not None:
            return True
        if isinstance(u, App):
            stack += [u.fun, u.arg]
    return False


def test_brute_force_programs(criterion):
    def run():
        checked = skipped = 0
        bad = []
        for n in range(1, 9):
            for p in oracles.normal_programs(n):
                term = oracles.from_tuple(p)
                if _has_constructor_candidate(term):
                    skipped += 1
                    continue
                checked += 1
                if infer(term).type is not oracles.as_library_type(oracles.program_type(p)):
                    bad.append(p)
        return checked, skipped, bad

    (checked, skipped, bad), secs = _timed(run)
    criterion("closed normal programs up to 8 leaves: inferred type = program type",
              not bad and checked == 11418 - skipped and secs < 30,
              f"{checked} checked, {skipped} skipped, {len(bad)} disagree, {secs:.1f}s")


def test_theorem_battery(criterion):
    results = check_theorems()
    weak = [r.name for r in results if not r.passed or r.instances < 3]
    summary = ", ".join(f"{r.name}:{r.instances}" for r in results)
    criterion("theorem battery, each on at least 3 instances", not weak and len(results) == 11,
              f"{summary}; failing {weak}")


def test_medium_corpus_ratio(criterion):
    rows = run_bench(medium(), 100)
    untyped = [r.label for r in rows if r.verdict != "yes"]
    worst = max(rows, key=lambda r: r.ratio)
    criterion("medium corpus typed with ratio <= 3",
              not untyped and worst.ratio <= 3,
              f"{len(rows)} terms, {sum(r.size for r in rows)} leaves, "
              f"worst {float(worst.ratio):.2f}, untyped {untyped}")
