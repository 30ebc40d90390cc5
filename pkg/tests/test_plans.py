"""Plan checks beyond the acceptance domain."""

import pytest

import csfkit.algorithms as alg
from csfkit.core import DomainBounds, check_plan_sufficiency, check_pragmatic


@pytest.mark.parametrize("name", ["v1", "v4", "pow"])
def test_remaining_plans_sufficient_with_exact_pragmatism(name):
    spec = alg.REGISTRY[name]
    dom = DomainBounds.uniform(spec)
    assert check_plan_sufficiency(spec, dom).sufficient
    assert [check_pragmatic(spec, i, dom) for i in range(len(spec.subgoals))] == [
        sg.pragmatic for sg in spec.subgoals
    ]


def test_v5_particularization_needed_once_the_table_can_grow():
    # With t of length <= 3 the powers table pins k = 0, which hides the need
    # for j = k.  Room for k = 1 (t = 1, 2, 4, 8, 16) exposes it.
    scalars = {n: range(0, 9) for n in ("N", "c", "j", "k", "l", "s")}
    dom = DomainBounds(
        scalars=scalars,
        arrays={"b": (range(0, 3), range(0, 2)), "t": (range(0, 6), range(0, 17))},
    )
    assert check_plan_sufficiency(alg.V5, dom).sufficient
    dropped = check_plan_sufficiency(alg.V5.without_subgoal(5), dom)
    assert not dropped.sufficient
    p, s = dropped.counterexample
    point = s.snapshot()
    assert (p.N, point["j"], point["k"], point["b"], point["t"]) == (2, 0, 1, (0, 1), (1, 2, 4, 8, 16))


def test_counterexamples_really_refute_the_plan():
    spec = alg.GETMAX.without_subgoal(1)
    result = check_plan_sufficiency(spec, DomainBounds.uniform(spec))
    p, s = result.counterexample
    view = s.view()
    assert spec.pre(p, view) and all(sg.predicate(p, view) for sg in spec.subgoals)
    assert not spec.post(p, view)
