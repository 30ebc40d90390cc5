"""Algorithm plans, CSF implementations, checked execution and plan checking.

A :class:`ProcedureSpec` couples an algorithm plan (pre, inv, post and an
ordered list of :class:`Subgoal`) with the code blocks that fulfill the
subgoals in order.  :func:`run_procedure` executes the blocks and asserts, at
every checkpoint the :class:`CheckMode` asks for, that the invariant and all
subgoals fulfilled so far still hold.  :func:`check_plan_sufficiency` decides
by exhaustive bounded enumeration whether ``pre and s1..sn and inv`` implies
``post and inv``.

Predicates are plain callables ``pred(params, state) -> bool``.  Both
arguments expose variables as attributes (``p.N``, ``s.c``); arrays come back
as tuples.  Reading a name that is not bound raises :class:`UnboundVariable`.
"""

from __future__ import annotations

import enum
import itertools
import os
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import Any, Union

import numpy as np

from .addonly import OpCounter, counter_snapshot, new_tally

__all__ = [
    "CSFError",
    "UnboundVariable",
    "NonTermination",
    "BudgetExceeded",
    "PlanError",
    "Env",
    "Params",
    "State",
    "Subgoal",
    "Straight",
    "Loop",
    "ProcedureSpec",
    "CheckMode",
    "ViolationReport",
    "TraceEvent",
    "RunReport",
    "DomainBounds",
    "SufficiencyResult",
    "TRUE",
    "TRACE_LEVELS",
    "linear_cap",
    "log_cap",
    "evaluate_subgoal",
    "run_procedure",
    "check_plan_sufficiency",
    "check_pragmatic",
    "default_budget",
]

BUDGET_ENV = "CSF_ENUM_BUDGET"
DEFAULT_BUDGET = 2_000_000

TRACE_LEVELS = ("none", "blocks", "iterations")


class CSFError(Exception):
    pass


class UnboundVariable(CSFError, NameError):
    def __init__(self, name: str):
        super().__init__(f"variable {name!r} is not bound")
        self.name = name


class NonTermination(CSFError, RuntimeError):
    """A loop block ran past its iteration cap (its termination argument failed)."""

    def __init__(self, procedure: str, block: int, limit: int):
        super().__init__(
            f"{procedure}: loop block {block} exceeded {limit} iterations; "
            "the block's termination obligation does not hold"
        )
        self.procedure = procedure
        self.block = block
        self.limit = limit


class BudgetExceeded(CSFError):
    def __init__(self, budget: int):
        super().__init__(
            f"bounded enumeration exceeded its budget of {budget} points "
            f"(raise it with {BUDGET_ENV} or shrink the domain)"
        )
        self.budget = budget


class PlanError(CSFError, ValueError):
    """A malformed spec, domain, or run request."""


# -- environments -----------------------------------------------------------


Value = Union[int, tuple]


def _freeze(value: Any) -> Value:
    if isinstance(value, (bool, np.bool_)):
        raise PlanError("booleans are not program values")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (np.ndarray, list, tuple)):
        return tuple(int(v) for v in value)
    raise PlanError(f"unsupported value {value!r}")


class Env:
    """Read-only variable namespace handed to predicates."""

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[str, Value] = ()):
        object.__setattr__(self, "_values", dict(values))

    def __getattr__(self, name: str) -> Value:
        if name.startswith("_"):
            raise AttributeError(name)
        try:
            return self._values[name]
        except KeyError:
            raise UnboundVariable(name) from None

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is read-only")

    def __contains__(self, name: str) -> bool:
        return name in self._values

    def __eq__(self, other):
        return type(other) is type(self) and other._values == self._values

    def __hash__(self):
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in sorted(self._values.items()))
        return f"{type(self).__name__}({inner})"

    def snapshot(self) -> dict[str, Value]:
        return dict(sorted(self._values.items()))


class Params(Env):
    """Named constants fixed for one run (``N``, ``M``, ``anArr``...)."""

    __slots__ = ()

    def __init__(self, values: Mapping[str, Any] = (), **kw: Any):
        merged = {**dict(values), **kw}
        super().__init__({k: _freeze(v) for k, v in merged.items()})


class State:
    """Mutable program variables a procedure's blocks transform.

    Scalars are Python ints; arrays are ``int64`` numpy arrays so blocks can
    hand them to compiled step functions and mutate them in place.  A name is
    either a scalar or an array for the lifetime of the state.
    """

    __slots__ = ("_scalars", "_arrays")

    def __init__(self, scalars: Mapping[str, int] = (), arrays: Mapping[str, Any] = ()):
        object.__setattr__(self, "_scalars", {})
        object.__setattr__(self, "_arrays", {})
        for k, v in dict(scalars).items():
            setattr(self, k, int(v))
        for k, v in dict(arrays).items():
            setattr(self, k, np.asarray(v, dtype=np.int64))

    @classmethod
    def from_values(cls, values: Mapping[str, Value]) -> "State":
        st = cls()
        for k, v in values.items():
            setattr(st, k, np.asarray(v, dtype=np.int64) if isinstance(v, tuple) else v)
        return st

    def __getattr__(self, name: str):
        if name.startswith("_"):
            raise AttributeError(name)
        if name in self._scalars:
            return self._scalars[name]
        if name in self._arrays:
            return self._arrays[name]
        raise UnboundVariable(name)

    def __setattr__(self, name: str, value: Any) -> None:
        if isinstance(value, (np.ndarray, list, tuple)):
            if name in self._scalars:
                raise PlanError(f"{name!r} is already a scalar")
            if not isinstance(value, np.ndarray) or value.dtype != np.int64:
                value = np.asarray(value, dtype=np.int64)
            self._arrays[name] = value
        else:
            if name in self._arrays:
                raise PlanError(f"{name!r} is already an array")
            self._scalars[name] = int(value)

    def __contains__(self, name: str) -> bool:
        return name in self._scalars or name in self._arrays

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.snapshot().items())
        return f"State({inner})"

    def snapshot(self) -> dict[str, Value]:
        out: dict[str, Value] = dict(self._scalars)
        out.update((k, tuple(int(x) for x in v)) for k, v in self._arrays.items())
        return dict(sorted(out.items()))

    def view(self) -> Env:
        return Env(self.snapshot())


# -- plans and implementations ---------------------------------------------

Predicate = Callable[[Env, Env], bool]
Transform = Callable[[Params, State, np.ndarray], None]
Guard = Callable[[Params, State, np.ndarray], bool]


def TRUE(p, s) -> bool:
    return True


@dataclass(frozen=True)
class Subgoal:
    """One labeled predicate of an algorithm plan.

    ``pragmatic`` marks a subgoal as logically redundant (bracket notation);
    ``constant_only`` marks one fulfilled from constants alone that never
    needs restoring (angle notation).
    """

    label: str
    predicate: Predicate
    pragmatic: bool = False
    constant_only: bool = False
    formula: str = ""

    def notation(self, number: int) -> str:
        """Plan-table label, e.g. ``[SG2 (Quadratic)`` or ``SG1> (Log N)``."""
        head = "[" if self.pragmatic else ""
        tail = ">" if self.constant_only else ""
        return f"{head}SG{number}{tail} ({self.label})"


def linear_cap(n: int) -> int:
    return 2 * n + 64


def log_cap(n: int) -> int:
    # 4 * ceil(log2(n + 2)) + 8
    return 4 * (n + 1).bit_length() + 8


@dataclass(frozen=True)
class Straight:
    fulfills: tuple[int, ...]
    transform: Transform


@dataclass(frozen=True)
class Loop:
    """``init; while guard: body`` with a hard iteration cap.

    ``max_iterations`` is an int or a function of the params.
    """

    fulfills: tuple[int, ...]
    guard: Guard
    body: Transform
    max_iterations: Union[int, Callable[[Params], int]]
    init: Transform | None = None

    def cap(self, params: Params) -> int:
        m = self.max_iterations
        limit = m(params) if callable(m) else m
        if limit < 1:
            raise PlanError("max_iterations must be positive")
        return limit


Block = Union[Straight, Loop]


@dataclass(frozen=True)
class ProcedureSpec:
    """An algorithm plan together with its CSF implementation.

    ``blocks`` may be empty, which yields a bare plan that can be checked for
    sufficiency but not run.  The ``param_*``/``state_*`` name lists say which
    variables the predicates read; they drive bounded enumeration.
    """

    name: str
    pre: Predicate
    inv: Predicate
    post: Predicate
    subgoals: tuple[Subgoal, ...]
    blocks: tuple[Block, ...] = ()
    result: str | None = None
    param_scalars: tuple[str, ...] = ()
    param_arrays: tuple[str, ...] = ()
    state_scalars: tuple[str, ...] = ()
    state_arrays: tuple[str, ...] = ()
    description: str = ""

    def __post_init__(self):
        names = (
            self.param_scalars + self.param_arrays + self.state_scalars + self.state_arrays
        )
        if len(set(names)) != len(names):
            raise PlanError(f"{self.name}: variable names must be unique")
        labels = [sg.label for sg in self.subgoals]
        if len(set(labels)) != len(labels):
            raise PlanError(f"{self.name}: subgoal labels must be unique")
        if self.blocks:
            order = [i for b in self.blocks for i in b.fulfills]
            if order != list(range(len(self.subgoals))):
                raise PlanError(
                    f"{self.name}: blocks must fulfill every subgoal exactly once, in order"
                )

    @property
    def joint_fulfillment(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b.fulfills for b in self.blocks)

    @property
    def params(self) -> tuple[str, ...]:
        return self.param_scalars + self.param_arrays

    def subgoal_index(self, label: str) -> int:
        for i, sg in enumerate(self.subgoals):
            if sg.label == label:
                return i
        raise PlanError(
            f"{self.name} has no subgoal {label!r}; "
            f"choose from {', '.join(sg.label for sg in self.subgoals)}"
        )

    def without_subgoal(self, index: int) -> "ProcedureSpec":
        """The bare plan with one subgoal removed (blocks dropped)."""
        if not 0 <= index < len(self.subgoals):
            raise PlanError(f"{self.name}: no subgoal at index {index}")
        kept = self.subgoals[:index] + self.subgoals[index + 1 :]
        return replace(self, subgoals=kept, blocks=())


# -- execution ---------------------------------------------------------------


class CheckMode(enum.Enum):
    STRICT = "strict"
    LENIENT = "lenient"
    OFF = "off"


@dataclass(frozen=True)
class ViolationReport:
    procedure: str
    block: int | None
    iteration: int | None
    failed: str
    params: dict[str, Value]
    state: dict[str, Value]

    def reproduce(self, spec: ProcedureSpec) -> bool:
        """Re-evaluate the failed predicate on the recorded snapshot."""
        if self.failed in ("pre", "inv", "post"):
            pred = getattr(spec, self.failed)
        else:
            pred = spec.subgoals[spec.subgoal_index(self.failed)].predicate
        return bool(pred(Env(self.params), Env(self.state)))

    def as_dict(self) -> dict[str, Any]:
        return {
            "procedure": self.procedure,
            "block": self.block,
            "iteration": self.iteration,
            "failed": self.failed,
            "params": _jsonable(self.params),
            "state": _jsonable(self.state),
        }


@dataclass(frozen=True)
class TraceEvent:
    seq: int
    kind: str  # block-start | iteration-end | block-end | run-end
    block: int | None
    iteration: int | None
    checks: tuple[tuple[str, bool], ...]
    counters: OpCounter

    def as_dict(self) -> dict[str, Any]:
        return {
            "seq": self.seq,
            "kind": self.kind,
            "block": self.block,
            "iteration": self.iteration,
            "checks": [[label, ok] for label, ok in self.checks],
            "counters": self.counters.as_dict(),
        }


@dataclass(frozen=True)
class RunReport:
    procedure: str
    params: dict[str, Value]
    mode: CheckMode
    result: Value | None
    state: dict[str, Value]
    counters: OpCounter
    iterations: int
    trace: tuple[TraceEvent, ...] = ()
    violation: ViolationReport | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def _jsonable(values: Mapping[str, Value]) -> dict[str, Any]:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in values.items()}


def evaluate_subgoal(sg: Subgoal, p: Params, st: State | Env) -> bool:
    """Evaluate one subgoal; the state is read through a snapshot, never mutated."""
    view = st.view() if isinstance(st, State) else st
    return bool(sg.predicate(p, view))


class _Halt(Exception):
    def __init__(self, violation: ViolationReport):
        self.violation = violation


class _Run:
    def __init__(self, spec, params, mode, trace, tally):
        self.spec = spec
        self.params = params
        self.mode = mode
        self.level = TRACE_LEVELS.index(trace)
        self.tally = tally
        self.state = State()
        self.events: list[TraceEvent] = []
        self.iterations = 0

    def emit(self, kind, block, iteration, checks, *, detail=False):
        if self.level == 0 or (detail and self.level < 2):
            return
        self.events.append(
            TraceEvent(
                len(self.events), kind, block, iteration, tuple(checks),
                counter_snapshot(self.tally),
            )
        )

    def check(self, labeled, block, iteration, kind, *, detail=False):
        """Evaluate predicates in order, emit the event, halt on the first failure.

        ``kind=None`` checks without recording an event.
        """
        view = self.state.view()
        checks = []
        for label, pred in labeled:
            ok = bool(pred(self.params, view))
            checks.append((label, ok))
            if not ok:
                if kind is not None:
                    self.emit(kind, block, iteration, checks, detail=detail)
                raise _Halt(
                    ViolationReport(
                        self.spec.name, block, iteration, label,
                        self.params.snapshot(), view.snapshot(),
                    )
                )
        if kind is not None:
            self.emit(kind, block, iteration, checks, detail=detail)

    def execute(self) -> None:
        spec, p, st, tally = self.spec, self.params, self.state, self.tally
        self.check([("pre", spec.pre), ("inv", spec.inv)], None, None, None)
        done: list[tuple[str, Predicate]] = [("inv", spec.inv)]
        for bi, block in enumerate(spec.blocks):
            self.emit("block-start", bi, None, ())
            if isinstance(block, Straight):
                block.transform(p, st, tally)
            else:
                if block.init is not None:
                    block.init(p, st, tally)
                limit = block.cap(p)
                it = 0
                while block.guard(p, st, tally):
                    it += 1
                    if it > limit:
                        raise NonTermination(spec.name, bi, limit)
                    block.body(p, st, tally)
                    if self.mode is CheckMode.STRICT:
                        self.check(done, bi, it, "iteration-end", detail=True)
                    else:
                        self.emit("iteration-end", bi, it, (), detail=True)
                self.iterations += it
            done.extend((spec.subgoals[i].label, spec.subgoals[i].predicate) for i in block.fulfills)
            if self.mode is CheckMode.OFF:
                self.emit("block-end", bi, None, ())
            else:
                self.check(done, bi, None, "block-end")
        last = len(spec.blocks) - 1 if spec.blocks else None
        if self.mode is CheckMode.OFF:
            self.emit("run-end", last, None, ())
        else:
            self.check([("post", spec.post), ("inv", spec.inv)], last, None, "run-end")


def run_procedure(
    spec: ProcedureSpec,
    params: Params | Mapping[str, Any],
    mode: CheckMode | str = CheckMode.STRICT,
    *,
    trace: str = "blocks",
    tally: np.ndarray | None = None,
) -> RunReport:
    """Execute ``spec``'s blocks in order, checking the CSF Hoare conditions.

    The precondition is always evaluated first and a false one stops the run
    before any block executes.  In LENIENT and STRICT modes, after block ``i``
    ``inv`` and every subgoal fulfilled by blocks ``0..i`` must hold, and
    ``post and inv`` must hold at the end; STRICT also checks ``inv`` and the
    earlier blocks' subgoals after every loop-body iteration.  The first
    failure halts the run and is returned as ``report.violation``.

    Arithmetic overflow and loop-cap overruns propagate as exceptions.
    """
    if not spec.blocks and spec.subgoals:
        raise PlanError(f"{spec.name} has no implementation to run")
    if trace not in TRACE_LEVELS:
        raise PlanError(f"trace must be one of {TRACE_LEVELS}")
    p = params if isinstance(params, Params) else Params(params)
    missing = [n for n in spec.params if n not in p]
    if missing:
        raise PlanError(f"{spec.name} needs parameter(s) {', '.join(missing)}")
    mode = CheckMode(mode)
    if tally is None:
        tally = new_tally()
    run = _Run(spec, p, mode, trace, tally)
    violation = None
    try:
        run.execute()
    except _Halt as halt:
        violation = halt.violation
    final = run.state.snapshot()
    result = None
    if violation is None and spec.result is not None:
        result = final.get(spec.result)
    return RunReport(
        procedure=spec.name,
        params=p.snapshot(),
        mode=mode,
        result=result,
        state=final,
        counters=counter_snapshot(tally),
        iterations=run.iterations,
        trace=tuple(run.events),
        violation=violation,
    )


# -- bounded sufficiency checking -------------------------------------------


@dataclass(frozen=True)
class DomainBounds:
    """Finite value ranges for every variable a plan's predicates read.

    ``arrays`` maps a name to ``(lengths, entries)``, both ranges.
    """

    scalars: Mapping[str, range] = field(default_factory=dict)
    arrays: Mapping[str, tuple[range, range]] = field(default_factory=dict)

    @classmethod
    def uniform(
        cls, spec: ProcedureSpec, lo: int = 0, hi: int = 8, max_len: int = 3
    ) -> "DomainBounds":
        values = range(lo, hi + 1)
        lengths = range(0, max_len + 1)
        return cls(
            scalars={n: values for n in spec.param_scalars + spec.state_scalars},
            arrays={n: (lengths, values) for n in spec.param_arrays + spec.state_arrays},
        )

    def names(self) -> list[str]:
        return sorted({*self.scalars, *self.arrays})

    def values(self, name: str) -> list[Value]:
        """Domain of one variable in enumeration order.

        Scalars ascend; arrays go by length, then lexicographically.
        """
        if name in self.scalars:
            return list(self.scalars[name])
        lengths, entries = self.arrays[name]
        return [t for n in lengths for t in itertools.product(entries, repeat=n)]

    def size(self) -> int:
        total = 1
        for n in self.names():
            total *= len(self.values(n))
        return total


@dataclass(frozen=True)
class SufficiencyResult:
    sufficient: bool
    counterexample: tuple[Params, State] | None
    explored: int


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


_UNDECIDED = object()


class _Search:
    """Depth-first search for a point where the antecedent holds and the
    consequent fails.

    Predicates are evaluated on partial assignments: a predicate that reads
    an unbound variable is undecided and blocks on that variable, while any
    value it returns without such a read is fixed for the whole subtree.
    That makes pruning sound for opaque predicates.  Variables are branched
    in a data-driven order, so the lexicographically first counterexample is
    kept by branch and bound over the name-ordered key.
    """

    def __init__(self, antecedent, consequent, dom: DomainBounds, budget: int):
        self.antecedent = antecedent
        self.consequent = consequent
        self.names = dom.names()
        self.position = {n: i for i, n in enumerate(self.names)}
        self.domains = {n: dom.values(n) for n in self.names}
        self.index = {n: {v: i for i, v in enumerate(vals)} for n, vals in self.domains.items()}
        self.budget = budget
        self.explored = 0
        self.assignment: dict[str, Value] = {}
        self.env = Env()
        object.__setattr__(self.env, "_values", self.assignment)
        self.best_key: tuple[int, ...] | None = None
        self.best: dict[str, Value] | None = None

    def evaluate(self, pred):
        try:
            return bool(pred(self.env, self.env))
        except UnboundVariable as exc:
            if exc.name not in self.domains:
                raise PlanError(
                    f"a predicate reads {exc.name!r}, which the domain does not bound"
                ) from None
            return exc.name
        except IndexError:
            return False

    def key(self) -> tuple[int, ...]:
        return tuple(
            self.index[n][self.assignment[n]] if n in self.assignment else 0
            for n in self.names
        )

    def run(self):
        self.rank = {n: i for i, n in enumerate(self.branching_order())}
        self.search([(pred, None) for pred in self.antecedent], (self.consequent, None))
        return self.best

    def search(self, pending, consequent):
        open_preds = []
        for pred, blocker in pending:
            if blocker is not None and blocker not in self.assignment:
                open_preds.append((pred, blocker))
                continue
            got = self.evaluate(pred)
            if got is False:
                return
            if got is not True:
                open_preds.append((pred, got))

        pred, blocker = consequent
        if pred is not None and (blocker is None or blocker in self.assignment):
            got = self.evaluate(pred)
            if got is True:
                return
            consequent = (None, None) if got is False else (pred, got)

        if not open_preds and consequent[0] is None:
            key = self.key()
            if self.best_key is None or key < self.best_key:
                self.best_key = key
                self.best = {n: self.assignment.get(n, self.domains[n][0]) for n in self.names}
            return

        var = self.choose(open_preds, consequent)
        if not self.domains[var]:
            return
        for value in self.domains[var]:
            self.assignment[var] = value
            if self.best_key is not None and self.key() >= self.best_key:
                break
            self.explored += 1
            if self.explored > self.budget:
                raise BudgetExceeded(self.budget)
            self.search(open_preds, consequent)
        del self.assignment[var]

    def choose(self, open_preds, consequent) -> str:
        blockers = [b for _, b in open_preds] or [consequent[1]]
        return min(blockers, key=self.rank.__getitem__)

    def branching_order(self) -> list[str]:
        """Static variable ranking: cheapest-to-decide predicates first.

        Read sets are probed on a few complete assignments; a read hidden
        behind short-circuiting only costs speed, never soundness.
        """
        reads = [self.probe_reads(pred) for pred in self.antecedent]
        reads.append(self.probe_reads(self.consequent))
        size = {n: len(self.domains[n]) for n in self.names}
        order: list[str] = []
        pending = [r for r in reads if r]
        while pending:
            def cost(r):
                free = sorted(r - set(order), key=lambda n: (size[n], n))
                total = 1
                for n in free:
                    total *= size[n]
                return total, free

            best = min(pending, key=lambda r: cost(r)[0])
            order.extend(cost(best)[1])
            pending = [r for r in pending if r - set(order)]
        order.extend(n for n in self.names if n not in order)
        return order

    def probe_reads(self, pred) -> set[str]:
        seen: set[str] = set()
        for pick in (0, -1, None):
            values = _Recorder(seen)
            for n, dom in self.domains.items():
                if dom:
                    values[n] = dom[len(dom) // 2] if pick is None else dom[pick]
            env = Env()
            object.__setattr__(env, "_values", values)
            try:
                pred(env, env)
            except Exception:
                pass
        # unbounded names surface as PlanError during the search proper
        return seen & self.domains.keys()


class _Recorder(dict):
    def __init__(self, seen: set[str]):
        super().__init__()
        self.seen = seen

    def __getitem__(self, name):
        self.seen.add(name)
        return super().__getitem__(name)


def _conjunction(preds: Sequence[Predicate]) -> Predicate:
    def both(p, s):
        return all(pred(p, s) for pred in preds)

    return both


def check_plan_sufficiency(
    spec: ProcedureSpec, dom: DomainBounds, *, budget: int | None = None
) -> SufficiencyResult:
    """Exhaustively decide ``pre and s1..sn and inv => post and inv`` on ``dom``.

    Returns the first counterexample in enumeration order (variables by
    name, values ascending).  Raises :class:`BudgetExceeded` once more than
    ``budget`` partial points have been visited.
    """
    if budget is None:
        budget = default_budget()
    antecedent = [spec.pre, spec.inv] + [sg.predicate for sg in spec.subgoals]
    search = _Search(antecedent, _conjunction([spec.post, spec.inv]), dom, budget)
    found = search.run()
    if found is None:
        return SufficiencyResult(True, None, search.explored)
    params = Params({n: v for n, v in found.items() if n in spec.params})
    state = State.from_values({n: v for n, v in found.items() if n not in spec.params})
    return SufficiencyResult(False, (params, state), search.explored)


def check_pragmatic(
    spec: ProcedureSpec, sg_index: int, dom: DomainBounds, *, budget: int | None = None
) -> bool:
    """True iff the plan minus subgoal ``sg_index`` is still sufficient on ``dom``."""
    return check_plan_sufficiency(spec.without_subgoal(sg_index), dom, budget=budget).sufficient

