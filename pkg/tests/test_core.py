import dataclasses
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import csfkit.algorithms as alg
from csfkit.algorithms import procedures as code
from csfkit.core import (
    TRUE,
    BudgetExceeded,
    CheckMode,
    DomainBounds,
    Env,
    Loop,
    NonTermination,
    Params,
    PlanError,
    ProcedureSpec,
    State,
    Straight,
    Subgoal,
    UnboundVariable,
    check_plan_sufficiency,
    check_pragmatic,
    default_budget,
    evaluate_subgoal,
    run_procedure,
)


def v3_with_l_plus_5():
    def body(p, s, t):
        code.v3_body(p, s, t)
        s.l = s.l - 1

    blocks = (alg.V3.blocks[0], dataclasses.replace(alg.V3.blocks[1], body=body))
    return dataclasses.replace(alg.V3, blocks=blocks)


# -- environments ------------------------------------------------------------


def test_env_reports_unbound_names():
    with pytest.raises(UnboundVariable) as err:
        Env({"a": 1}).b
    assert err.value.name == "b"


def test_params_reject_bools_and_freeze_arrays():
    assert Params(anArr=[1, 2]).anArr == (1, 2)
    with pytest.raises(PlanError):
        Params(N=True)


def test_state_snapshot_is_sorted_with_tuples():
    s = State(scalars={"b": 2, "a": 1}, arrays={"t": [1, 2]})
    assert list(s.snapshot()) == ["a", "b", "t"]
    assert s.snapshot()["t"] == (1, 2)


def test_evaluate_subgoal_reads_a_snapshot():
    cube = alg.V3.subgoals[alg.V3.subgoal_index("Cube")]
    st_ = State(scalars={"r": 2, "c": 8})
    assert evaluate_subgoal(cube, Params(N=5), st_)
    assert not evaluate_subgoal(cube, Params(N=1), st_)
    assert st_.snapshot() == {"c": 8, "r": 2}


def test_subgoal_notation():
    assert alg.V3.subgoals[1].notation(2) == "[SG2 (Quadratic)"
    assert alg.GETBIN.subgoals[0].notation(1) == "SG1> (Log N)"
    assert alg.V5.subgoals[1].notation(2) == "[SG2> (Powers of 2)"


# -- plan construction -------------------------------------------------------


def test_blocks_must_fulfill_subgoals_in_order():
    sgs = (Subgoal("a", TRUE), Subgoal("b", TRUE))
    noop = lambda p, s, t: None  # noqa: E731
    with pytest.raises(PlanError):
        ProcedureSpec("x", TRUE, TRUE, TRUE, sgs, (Straight((1,), noop), Straight((0,), noop)))
    with pytest.raises(PlanError):
        ProcedureSpec("x", TRUE, TRUE, TRUE, (Subgoal("a", TRUE), Subgoal("a", TRUE)))


def test_unknown_subgoal_label_lists_choices():
    with pytest.raises(PlanError, match="Quadratic"):
        alg.V3.subgoal_index("Cubic")


def test_joint_fulfillment():
    assert alg.V3.joint_fulfillment == ((0, 1, 2), (3,))
    assert alg.V5.joint_fulfillment == ((0,), (1,), (2, 3, 4), (5,))


# -- execution ---------------------------------------------------------------


def test_mutated_v3_reports_first_failure():
    report = run_procedure(v3_with_l_plus_5(), {"N": 3}, CheckMode.STRICT)
    v = report.violation
    assert (v.block, v.iteration, v.failed) == (1, 1, "Linear")
    assert v.state["l"] == 11
    assert report.result is None
    # re-evaluating the failed predicate on the recorded snapshot fails again
    assert v.reproduce(alg.V3) is False


def test_lenient_catches_the_mutant_only_at_block_end():
    # by then the drift in l has reached c, so Cube is the first check to fail
    v = run_procedure(v3_with_l_plus_5(), {"N": 3}, CheckMode.LENIENT).violation
    assert (v.block, v.iteration, v.failed) == (1, None, "Cube")


def test_off_mode_runs_the_mutant_to_the_end():
    report = run_procedure(v3_with_l_plus_5(), {"N": 3}, CheckMode.OFF)
    assert report.ok and report.result != 27


def test_single_element_getmax():
    report = run_procedure(alg.GETMAX, {"anArr": (7,)})
    assert report.result == 7 and report.iterations == 0


def test_failed_precondition_runs_nothing():
    report = run_procedure(alg.GETBIN, {"N": 0}, trace="iterations")
    assert report.violation.failed == "pre" and report.violation.block is None
    assert report.trace == () and report.counters.adds == 0


def test_missing_parameter():
    with pytest.raises(PlanError):
        run_procedure(alg.POW, {"N": 2})


def test_loop_cap_raises_nontermination():
    spin = ProcedureSpec(
        "spin", TRUE, TRUE, TRUE, (Subgoal("never", TRUE),),
        (Loop((0,), lambda p, s, t: True, lambda p, s, t: None, 5),),
    )
    with pytest.raises(NonTermination) as err:
        run_procedure(spin, {})
    assert err.value.limit == 5


def test_trace_levels():
    none = run_procedure(alg.V3, {"N": 3}, trace="none").trace
    blocks = run_procedure(alg.V3, {"N": 3}, trace="blocks").trace
    every = run_procedure(alg.V3, {"N": 3}, trace="iterations").trace
    assert none == ()
    assert [e.kind for e in blocks] == ["block-start", "block-end", "block-start", "block-end", "run-end"]
    assert sum(e.kind == "iteration-end" for e in every) == 3
    assert [e.seq for e in every] == list(range(len(every)))
    with pytest.raises(PlanError):
        run_procedure(alg.V3, {"N": 3}, trace="verbose")


def test_runs_are_deterministic():
    a = run_procedure(alg.V5, {"N": 77}, trace="iterations")
    b = run_procedure(alg.V5, {"N": 77}, trace="iterations")
    assert a == b


def test_bare_plan_cannot_run():
    with pytest.raises(PlanError):
        run_procedure(alg.V3.without_subgoal(0), {"N": 1})


@settings(max_examples=60)
@given(st.sampled_from(sorted(alg.REGISTRY)), st.integers(0, 120))
def test_modes_refine_each_other(name, n):
    """A strict pass implies lenient and off passes with the same result and counts."""
    spec = alg.REGISTRY[name]
    params = {"N": max(n, 1), "M": 1 + n % 3} if name in ("pow", "getbin") else {"N": n}
    if name == "getmax":
        params = {"anArr": tuple((7 * i) % 11 for i in range(n + 1))}
    params = {k: v for k, v in params.items() if k in spec.params}
    reports = [run_procedure(spec, params, m, trace="none") for m in CheckMode]
    assert all(r.ok for r in reports)
    assert len({(r.result, r.counters, r.iterations) for r in reports}) == 1


# -- bounded sufficiency -----------------------------------------------------


def test_empty_plan_with_trivial_post_is_sufficient():
    bare = ProcedureSpec("bare", TRUE, TRUE, TRUE, ())
    assert check_plan_sufficiency(bare, DomainBounds()).sufficient


def test_plan_missing_its_key_subgoal_is_insufficient():
    dom = DomainBounds.uniform(alg.V3)
    result = check_plan_sufficiency(alg.V3.without_subgoal(0), dom)
    assert not result.sufficient
    p, s = result.counterexample
    assert (p.N, s.c) == (0, 1)


def test_reading_outside_the_domain_is_a_plan_error():
    sneaky = ProcedureSpec("x", TRUE, TRUE, lambda p, s: s.ghost == 0, (), param_scalars=("N",))
    with pytest.raises(PlanError, match="ghost"):
        check_plan_sufficiency(sneaky, DomainBounds(scalars={"N": range(3)}))


def test_budget_is_enforced(monkeypatch):
    dom = DomainBounds.uniform(alg.V3)
    with pytest.raises(BudgetExceeded):
        check_plan_sufficiency(alg.V3, dom, budget=5)
    monkeypatch.setenv("CSF_ENUM_BUDGET", "7")
    assert default_budget() == 7
    with pytest.raises(BudgetExceeded):
        check_plan_sufficiency(alg.V3, dom)


def test_check_pragmatic_examples():
    dom = DomainBounds.uniform(alg.V3)
    assert check_pragmatic(alg.V3, 1, dom)
    assert not check_pragmatic(alg.V3, 3, dom)


# Independent route: enumerate the whole domain naively, in the same order.


def brute_force(spec, dom):
    names = dom.names()
    antecedent = [spec.pre, spec.inv] + [sg.predicate for sg in spec.subgoals]

    def holds(pred, p, s):
        try:
            return bool(pred(p, s))
        except IndexError:
            return False

    for values in itertools.product(*(dom.values(n) for n in names)):
        point = dict(zip(names, values))
        p = Env({n: v for n, v in point.items() if n in spec.params})
        s = Env({n: v for n, v in point.items() if n not in spec.params})
        if all(holds(a, p, s) for a in antecedent) and not (
            holds(spec.post, p, s) and holds(spec.inv, p, s)
        ):
            return point
    return None


def tiny(spec):
    hi = 1 if spec.name in ("v5", "getbin") else 2
    return DomainBounds.uniform(spec, 0, hi, 2)


PLAN_VARIANTS = [
    (name, drop)
    for name, spec in sorted(alg.REGISTRY.items())
    for drop in [None, *range(len(spec.subgoals))]
]


@pytest.mark.parametrize("name, drop", PLAN_VARIANTS)
def test_search_agrees_with_brute_force(name, drop):
    spec = alg.REGISTRY[name]
    plan = spec if drop is None else spec.without_subgoal(drop)
    dom = tiny(spec)
    expected = brute_force(plan, dom)
    got = check_plan_sufficiency(plan, dom)
    assert got.sufficient == (expected is None)
    if expected is not None:
        p, s = got.counterexample
        assert {**p.snapshot(), **s.snapshot()} == expected
