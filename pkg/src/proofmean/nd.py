"""Natural deduction derivations with term annotations.

Nodes are pure syntax: a rule tag, its variable and formula arguments,
and premise subtrees. The checker recomputes every judgment, builds the
annotating term for each node, and enforces one formula per variable
across the whole derivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import (
    Abort,
    And,
    App,
    Case,
    Context,
    Formula,
    Implies,
    Inl,
    Inr,
    Lam,
    Or,
    Pair,
    Fst,
    Snd,
    ProofmeanError,
    Term,
    Var,
    VarRef,
    Absurd,
)


class RuleMismatch(ProofmeanError):
    pass


class BadDischarge(ProofmeanError):
    pass


class VariableTypeClash(ProofmeanError):
    pass


# ---------- Derivation nodes ----------


@dataclass(frozen=True)
class Hyp:
    var: Var
    formula: Formula


@dataclass(frozen=True)
class ImpI:
    var: Var
    hypothesis: Formula | None
    premise: "NdDerivation"


@dataclass(frozen=True)
class ImpE:
    fun: "NdDerivation"
    arg: "NdDerivation"


@dataclass(frozen=True)
class AndI:
    left: "NdDerivation"
    right: "NdDerivation"


@dataclass(frozen=True)
class AndE1:
    premise: "NdDerivation"


@dataclass(frozen=True)
class AndE2:
    premise: "NdDerivation"


@dataclass(frozen=True)
class OrI1:
    other: Formula  # the right disjunct
    premise: "NdDerivation"


@dataclass(frozen=True)
class OrI2:
    other: Formula  # the left disjunct
    premise: "NdDerivation"


@dataclass(frozen=True)
class OrE:
    scrutinee: "NdDerivation"
    left_var: Var
    left: "NdDerivation"
    right_var: Var
    right: "NdDerivation"


@dataclass(frozen=True)
class AbsurdE:
    target: Formula
    premise: "NdDerivation"


NdDerivation = Union[Hyp, ImpI, ImpE, AndI, AndE1, AndE2, OrI1, OrI2, OrE, AbsurdE]


@dataclass(frozen=True)
class Judgment:
    open: Context
    term: Term
    formula: Formula


# ---------- Checking ----------


class _NdChecker:
    def __init__(self) -> None:
        self.types: dict[Var, Formula] = {}
        self.nodes: list[tuple[NdDerivation, Judgment]] = []

    def bind(self, v: Var, f: Formula) -> None:
        prev = self.types.get(v)
        if prev is None:
            self.types[v] = f
        elif prev != f:
            raise VariableTypeClash(f"{v.name} occurs at both {prev!r} and {f!r}")

    def union(self, *ctxs: Context) -> Context:
        merged: dict[Var, Formula] = {}
        for ctx in ctxs:
            for v, f in ctx.items():
                if v in merged and merged[v] != f:
                    raise VariableTypeClash(f"{v.name} occurs at both {merged[v]!r} and {f!r}")
                merged[v] = f
        return Context(merged)

    def check(self, d: NdDerivation) -> Judgment:
        j = self._check(d)
        self.nodes.append((d, j))
        return j

    def _check(self, d: NdDerivation) -> Judgment:
        match d:
            case Hyp(x, a):
                self.bind(x, a)
                return Judgment(Context({x: a}), VarRef(x), a)
            case ImpI(x, declared, premise):
                j = self.check(premise)
                from_open = j.open.get(x)
                if declared is not None and from_open is not None and from_open != declared:
                    raise BadDischarge(
                        f"{x.name} is open at {from_open!r}, not the declared {declared!r}"
                    )
                a = declared if declared is not None else from_open
                if a is None:
                    a = self.types.get(x)
                if a is None:
                    raise BadDischarge(f"cannot determine the formula discharged with {x.name}")
                self.bind(x, a)
                return Judgment(j.open.without(x), Lam(x, a, j.term), Implies(a, j.formula))
            case ImpE(fun, arg):
                jf = self.check(fun)
                ja = self.check(arg)
                if not isinstance(jf.formula, Implies):
                    raise RuleMismatch(f"major premise proves {jf.formula!r}, not an implication")
                if jf.formula.left != ja.formula:
                    raise RuleMismatch(
                        f"minor premise proves {ja.formula!r}, expected {jf.formula.left!r}"
                    )
                return Judgment(
                    self.union(jf.open, ja.open), App(jf.term, ja.term), jf.formula.right
                )
            case AndI(left, right):
                j1 = self.check(left)
                j2 = self.check(right)
                return Judgment(
                    self.union(j1.open, j2.open),
                    Pair(j1.term, j2.term),
                    And(j1.formula, j2.formula),
                )
            case AndE1(premise):
                j = self.check(premise)
                if not isinstance(j.formula, And):
                    raise RuleMismatch(f"premise proves {j.formula!r}, not a conjunction")
                return Judgment(j.open, Fst(j.term), j.formula.left)
            case AndE2(premise):
                j = self.check(premise)
                if not isinstance(j.formula, And):
                    raise RuleMismatch(f"premise proves {j.formula!r}, not a conjunction")
                return Judgment(j.open, Snd(j.term), j.formula.right)
            case OrI1(other, premise):
                j = self.check(premise)
                return Judgment(j.open, Inl(j.term, other), Or(j.formula, other))
            case OrI2(other, premise):
                j = self.check(premise)
                return Judgment(j.open, Inr(j.term, other), Or(other, j.formula))
            case OrE(scrutinee, x, left, y, right):
                j0 = self.check(scrutinee)
                if not isinstance(j0.formula, Or):
                    raise RuleMismatch(f"major premise proves {j0.formula!r}, not a disjunction")
                a, b = j0.formula.left, j0.formula.right
                j1 = self.check(left)
                j2 = self.check(right)
                if j1.formula != j2.formula:
                    raise RuleMismatch(
                        f"branches prove {j1.formula!r} and {j2.formula!r}, which differ"
                    )
                for v, f, j in ((x, a, j1), (y, b, j2)):
                    got = j.open.get(v)
                    if got is not None and got != f:
                        raise BadDischarge(f"{v.name} is open at {got!r}, expected {f!r}")
                    self.bind(v, f)
                open_ctx = self.union(j0.open, j1.open.without(x), j2.open.without(y))
                return Judgment(
                    open_ctx, Case(j0.term, x, a, j1.term, y, b, j2.term), j1.formula
                )
            case AbsurdE(target, premise):
                j = self.check(premise)
                if j.formula != Absurd():
                    raise RuleMismatch(f"premise proves {j.formula!r}, not absurdity")
                return Judgment(j.open, Abort(j.term, target), target)
        raise TypeError(f"not a derivation node: {d!r}")


def check_nd(d: NdDerivation) -> Judgment:
    """Validate the derivation and return its root judgment."""
    return _NdChecker().check(d)


def node_judgments(d: NdDerivation) -> tuple[tuple[NdDerivation, Judgment], ...]:
    """Every node of d paired with its computed judgment."""
    checker = _NdChecker()
    checker.check(d)
    return tuple(checker.nodes)


def variable_types(d: NdDerivation) -> dict[Var, Formula]:
    """The one formula each variable of d stands for."""
    checker = _NdChecker()
    checker.check(d)
    return dict(checker.types)


def end_term_nd(d: NdDerivation) -> Term:
    """The term annotating the conclusion of d."""
    return check_nd(d).term
