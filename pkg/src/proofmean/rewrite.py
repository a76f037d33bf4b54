"""Beta, eta, and permutative (gamma) conversions over typed terms.

Single steps use the leftmost-outermost redex so they are deterministic.
Gamma steps commute a case with a surrounding frame in either direction;
the frame list also carries the pair and lambda splitting laws, which
are the composite of an expansion and a reduction and are needed to
connect case-of-pair terms with pair-of-case terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .core import (
    Abort,
    App,
    Case,
    Fst,
    Inl,
    Inr,
    Lam,
    Pair,
    ProofmeanError,
    Snd,
    Term,
    Var,
    VarRef,
    alpha_equal,
    alpha_key,
    free_vars,
    fresh_var,
    substitute,
)


class FuelExhausted(ProofmeanError):
    pass


@dataclass(frozen=True)
class BetaEta:
    pass


@dataclass(frozen=True)
class BetaEtaGamma:
    fuel: int = 4

    def __post_init__(self) -> None:
        if self.fuel < 1:
            raise ValueError("fuel must be positive")


EqualityMode = Union[BetaEta, BetaEtaGamma]


class Inconclusive:
    """Marker for a gamma search that ran out of fuel without an answer.

    There is one instance, INCONCLUSIVE; compare with `is`. Using it as
    a boolean raises, so it cannot be silently mistaken for False.
    """

    _instance = None

    def __new__(cls) -> "Inconclusive":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INCONCLUSIVE"

    def __bool__(self) -> bool:
        raise TypeError("inconclusive result used as a boolean; compare with INCONCLUSIVE")


INCONCLUSIVE = Inconclusive()

DEFAULT_STEP_BUDGET = 1_000_000
_SEARCH_NODE_BUDGET = 100


# ---------- Single-step machinery ----------


def _beta_contract(t: Term) -> Term | None:
    match t:
        case App(Lam(x, _, body), s):
            return substitute(body, x, s)
        case Fst(Pair(s, _)):
            return s
        case Snd(Pair(_, u)):
            return u
        case Case(Inl(r, _), x, _, s, _, _, _):
            return substitute(s, x, r)
        case Case(Inr(r, _), _, _, _, y, _, u):
            return substitute(u, y, r)
    return None


def _eta_contract(t: Term) -> Term | None:
    match t:
        case Lam(x, _, App(f, VarRef(v))) if v == x and x not in free_vars(f):
            return f
        case Pair(Fst(a), Snd(b)) if alpha_equal(a, b):
            return a
        case Case(r, x, a, Inl(VarRef(xv), ob), y, b, Inr(VarRef(yv), oa)) if (
            xv == x and yv == y and ob == b and oa == a
        ):
            return r
    return None


def _first(t: Term, at_root: Callable[[Term], Term | None]) -> Term | None:
    r = at_root(t)
    if r is not None:
        return r
    match t:
        case VarRef(_):
            return None
        case Lam(x, a, body):
            r = _first(body, at_root)
            return None if r is None else Lam(x, a, r)
        case App(f, a):
            r = _first(f, at_root)
            if r is not None:
                return App(r, a)
            r = _first(a, at_root)
            return None if r is None else App(f, r)
        case Pair(a, b):
            r = _first(a, at_root)
            if r is not None:
                return Pair(r, b)
            r = _first(b, at_root)
            return None if r is None else Pair(a, r)
        case Fst(a):
            r = _first(a, at_root)
            return None if r is None else Fst(r)
        case Snd(a):
            r = _first(a, at_root)
            return None if r is None else Snd(r)
        case Inl(a, o):
            r = _first(a, at_root)
            return None if r is None else Inl(r, o)
        case Inr(a, o):
            r = _first(a, at_root)
            return None if r is None else Inr(r, o)
        case Abort(a, c):
            r = _first(a, at_root)
            return None if r is None else Abort(r, c)
        case Case(r0, x, a, s, y, b, u):
            r = _first(r0, at_root)
            if r is not None:
                return Case(r, x, a, s, y, b, u)
            r = _first(s, at_root)
            if r is not None:
                return Case(r0, x, a, r, y, b, u)
            r = _first(u, at_root)
            return None if r is None else Case(r0, x, a, s, y, b, r)
    raise TypeError(f"not a term: {t!r}")


def _everywhere(t: Term, at_root: Callable[[Term], Iterable[Term]]) -> list[Term]:
    out = list(at_root(t))
    match t:
        case VarRef(_):
            pass
        case Lam(x, a, body):
            out += [Lam(x, a, r) for r in _everywhere(body, at_root)]
        case App(f, a):
            out += [App(r, a) for r in _everywhere(f, at_root)]
            out += [App(f, r) for r in _everywhere(a, at_root)]
        case Pair(a, b):
            out += [Pair(r, b) for r in _everywhere(a, at_root)]
            out += [Pair(a, r) for r in _everywhere(b, at_root)]
        case Fst(a):
            out += [Fst(r) for r in _everywhere(a, at_root)]
        case Snd(a):
            out += [Snd(r) for r in _everywhere(a, at_root)]
        case Inl(a, o):
            out += [Inl(r, o) for r in _everywhere(a, at_root)]
        case Inr(a, o):
            out += [Inr(r, o) for r in _everywhere(a, at_root)]
        case Abort(a, c):
            out += [Abort(r, c) for r in _everywhere(a, at_root)]
        case Case(r0, x, a, s, y, b, u):
            out += [Case(r, x, a, s, y, b, u) for r in _everywhere(r0, at_root)]
            out += [Case(r0, x, a, r, y, b, u) for r in _everywhere(s, at_root)]
            out += [Case(r0, x, a, s, y, b, r) for r in _everywhere(u, at_root)]
        case _:
            raise TypeError(f"not a term: {t!r}")
    return out


def beta_step(t: Term) -> Term | None:
    """Contract the leftmost-outermost beta redex, if any."""
    return _first(t, _beta_contract)


def eta_step(t: Term) -> Term | None:
    """Contract the leftmost-outermost eta redex, if any."""
    return _first(t, _eta_contract)


def beta_steps(t: Term) -> list[Term]:
    """All results of contracting one beta redex anywhere in t."""
    return _everywhere(t, lambda u: (r,) if (r := _beta_contract(u)) is not None else ())


def eta_steps(t: Term) -> list[Term]:
    """All results of contracting one eta redex anywhere in t."""
    return _everywhere(t, lambda u: (r,) if (r := _eta_contract(u)) is not None else ())


# ---------- Gamma steps ----------


def _freshen_case_binders(c: Case, avoid: frozenset[Var]) -> Case:
    # Rename branch binders that would capture a variable from avoid.
    x, s = c.left_var, c.left_branch
    y, u = c.right_var, c.right_branch
    if x in avoid:
        x2 = fresh_var(x, avoid | free_vars(s) | {y})
        s = substitute(s, x, VarRef(x2))
        x = x2
    if y in avoid:
        y2 = fresh_var(y, avoid | free_vars(u) | {x})
        u = substitute(u, y, VarRef(y2))
        y = y2
    return Case(c.scrutinee, x, c.left_type, s, y, c.right_type, u)


def _case_out(c: Case, wrap: Callable[[Term], Term], frame_fvs: frozenset[Var]) -> Term:
    c = _freshen_case_binders(c, frame_fvs)
    return Case(
        c.scrutinee,
        c.left_var,
        c.left_type,
        wrap(c.left_branch),
        c.right_var,
        c.right_type,
        wrap(c.right_branch),
    )


def _gamma_out(t: Term) -> list[Term]:
    out: list[Term] = []
    match t:
        case App(Case() as c, a):
            out.append(_case_out(c, lambda h: App(h, a), free_vars(a)))
        case Fst(Case() as c):
            out.append(_case_out(c, Fst, frozenset()))
        case Snd(Case() as c):
            out.append(_case_out(c, Snd, frozenset()))
        case Inl(Case() as c, o):
            out.append(_case_out(c, lambda h: Inl(h, o), frozenset()))
        case Inr(Case() as c, o):
            out.append(_case_out(c, lambda h: Inr(h, o), frozenset()))
        case Abort(Case() as c, tgt):
            out.append(_case_out(c, lambda h: Abort(h, tgt), frozenset()))
    if isinstance(t, Pair):
        if isinstance(t.first, Case):
            b = t.second
            out.append(_case_out(t.first, lambda h: Pair(h, b), free_vars(b)))
        if isinstance(t.second, Case):
            a = t.first
            out.append(_case_out(t.second, lambda h: Pair(a, h), free_vars(a)))
    if isinstance(t, Case) and isinstance(t.scrutinee, Case):
        x, a, s = t.left_var, t.left_type, t.left_branch
        y, b, u = t.right_var, t.right_type, t.right_branch
        frame_fvs = (free_vars(s) - {x}) | (free_vars(u) - {y})
        out.append(
            _case_out(
                t.scrutinee,
                lambda h: Case(h, x, a, s, y, b, u),
                frozenset(frame_fvs),
            )
        )
    return out


def _gamma_in(t: Term) -> list[Term]:
    if not isinstance(t, Case):
        return []
    r, x, a, s = t.scrutinee, t.left_var, t.left_type, t.left_branch
    y, b, u = t.right_var, t.right_type, t.right_branch
    bound = {x, y}
    out: list[Term] = []

    def escapes(part: Term) -> bool:
        return bool(free_vars(part) & bound)

    def inner(sl: Term, ul: Term) -> Case:
        return Case(r, x, a, sl, y, b, ul)

    match s, u:
        case App(f1, a1), App(f2, a2) if a1 == a2 and not escapes(a1):
            out.append(App(inner(f1, f2), a1))
    match s, u:
        case Fst(a1), Fst(a2):
            out.append(Fst(inner(a1, a2)))
    match s, u:
        case Snd(a1), Snd(a2):
            out.append(Snd(inner(a1, a2)))
    match s, u:
        case Inl(a1, o1), Inl(a2, o2) if o1 == o2:
            out.append(Inl(inner(a1, a2), o1))
    match s, u:
        case Inr(a1, o1), Inr(a2, o2) if o1 == o2:
            out.append(Inr(inner(a1, a2), o1))
    match s, u:
        case Abort(a1, c1), Abort(a2, c2) if c1 == c2:
            out.append(Abort(inner(a1, a2), c1))
    match s, u:
        case Pair(a1, b1), Pair(a2, b2):
            if b1 == b2 and not escapes(b1):
                out.append(Pair(inner(a1, a2), b1))
            if a1 == a2 and not escapes(a1):
                out.append(Pair(a1, inner(b1, b2)))
    match s, u:
        case Case(r1, p1, c1, s1, q1, d1, u1), Case(r2, p2, c2, s2, q2, d2, u2) if (
            p1 == p2 and c1 == c2 and s1 == s2 and q1 == q2 and d1 == d2 and u1 == u2
        ):
            frame_fvs = (free_vars(s1) - {p1}) | (free_vars(u1) - {q1})
            if not frame_fvs & bound:
                out.append(Case(inner(r1, r2), p1, c1, s1, q1, d1, u1))
    return out


def _gamma_splits(t: Term) -> list[Term]:
    out: list[Term] = []
    match t:
        # pair split, outward: duplicate the case into both components
        case Case(r, x, a, Pair(s1, s2), y, b, Pair(t1, t2)):
            out.append(Pair(Case(r, x, a, s1, y, b, t1), Case(r, x, a, s2, y, b, t2)))
    match t:
        # pair split, inward: merge two cases over the same scrutinee
        case Pair(Case(r1, x1, a1, s1, y1, b1, t1), Case(r2, x2, a2, s2, y2, b2, t2)) if (
            a1 == a2 and b1 == b2 and alpha_equal(r1, r2)
        ):
            ok_left = x2 == x1 or x1 not in free_vars(s2)
            ok_right = y2 == y1 or y1 not in free_vars(t2)
            if ok_left and ok_right:
                s2r = s2 if x2 == x1 else substitute(s2, x2, VarRef(x1))
                t2r = t2 if y2 == y1 else substitute(t2, y2, VarRef(y1))
                out.append(Case(r1, x1, a1, Pair(s1, s2r), y1, b1, Pair(t1, t2r)))
    match t:
        # lambda split, outward: pull a shared abstraction out of the branches
        case Case(r, x, a, Lam(z1, c1, s1), y, b, Lam(z2, c2, t1)) if c1 == c2:
            simple = (
                z1 not in free_vars(r)
                and z1 not in (x, y)
                and (z2 == z1 or z1 not in free_vars(t1))
            )
            if simple:
                t1r = t1 if z2 == z1 else substitute(t1, z2, VarRef(z1))
                out.append(Lam(z1, c1, Case(r, x, a, s1, y, b, t1r)))
            else:
                avoid = free_vars(r) | free_vars(s1) | free_vars(t1) | {x, y, z1, z2}
                z = fresh_var(z1, avoid)
                s1r = substitute(s1, z1, VarRef(z))
                t1r = substitute(t1, z2, VarRef(z))
                out.append(Lam(z, c1, Case(r, x, a, s1r, y, b, t1r)))
    match t:
        # lambda split, inward: push an abstraction into both branches
        case Lam(z, c, Case() as inner_case) if z not in free_vars(inner_case.scrutinee):
            cc = _freshen_case_binders(inner_case, frozenset((z,)))
            out.append(
                Case(
                    cc.scrutinee,
                    cc.left_var,
                    cc.left_type,
                    Lam(z, c, cc.left_branch),
                    cc.right_var,
                    cc.right_type,
                    Lam(z, c, cc.right_branch),
                )
            )
    return out


def _gamma_at_root(t: Term) -> list[Term]:
    return _gamma_out(t) + _gamma_in(t) + _gamma_splits(t)


def gamma_steps(t: Term) -> list[Term]:
    """All single permutative steps available anywhere in t."""
    seen: set[object] = set()
    out: list[Term] = []
    for r in _everywhere(t, _gamma_at_root):
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


# ---------- Normalization and equivalence ----------


def normalize(t: Term, budget: int = DEFAULT_STEP_BUDGET) -> Term:
    """The beta-eta normal form of t.

    Runs beta to exhaustion, then eta, looping while eta uncovers new
    beta redexes. Raises FuelExhausted past the step budget, which for
    well-typed input signals a bug rather than divergence.
    """
    steps = 0
    while True:
        while (r := beta_step(t)) is not None:
            t = r
            steps += 1
            if steps > budget:
                raise FuelExhausted(f"no normal form within {budget} steps")
        took_eta = False
        while (r := eta_step(t)) is not None:
            t = r
            took_eta = True
            steps += 1
            if steps > budget:
                raise FuelExhausted(f"no normal form within {budget} steps")
        if not took_eta:
            return t


def _meet_search(t1: Term, t2: Term, node_budget: int) -> bool:
    # Bidirectional search over single beta/eta contractions from each
    # side; insurance against the known non-confluent corner cases of
    # eta with sums, where the phased normal forms can disagree.
    def successors(u: Term) -> list[Term]:
        return beta_steps(u) + eta_steps(u)

    seen1 = {alpha_key(t1)}
    seen2 = {alpha_key(t2)}
    frontier1, frontier2 = [t1], [t2]
    spent1 = spent2 = 1
    while frontier1 or frontier2:
        if seen1 & seen2:
            return True
        next1: list[Term] = []
        for u in frontier1:
            for v in successors(u):
                if spent1 >= node_budget:
                    break
                k = alpha_key(v)
                if k not in seen1:
                    seen1.add(k)
                    next1.append(v)
                    spent1 += 1
        frontier1 = next1
        next2: list[Term] = []
        for u in frontier2:
            for v in successors(u):
                if spent2 >= node_budget:
                    break
                k = alpha_key(v)
                if k not in seen2:
                    seen2.add(k)
                    next2.append(v)
                    spent2 += 1
        frontier2 = next2
    return bool(seen1 & seen2)


def _beta_eta_equivalent(t1: Term, t2: Term) -> bool:
    if alpha_equal(normalize(t1), normalize(t2)):
        return True
    return _meet_search(t1, t2, _SEARCH_NODE_BUDGET)


def _gamma_search(t1: Term, t2: Term, fuel: int) -> "bool | Inconclusive":
    # Bidirectional layers over beta-eta normal forms closed under
    # single gamma steps; meeting is success, exhausting the closure is
    # a definitive no, and running out of fuel with work left is open.
    n1, n2 = normalize(t1), normalize(t2)
    seen1 = {alpha_key(n1)}
    seen2 = {alpha_key(n2)}
    frontier1, frontier2 = [n1], [n2]
    if seen1 & seen2:
        return True

    def expand(frontier: list[Term], seen: set[object]) -> list[Term]:
        out: list[Term] = []
        for u in frontier:
            for g in gamma_steps(u):
                v = normalize(g)
                k = alpha_key(v)
                if k not in seen:
                    seen.add(k)
                    out.append(v)
        return out

    for _ in range(fuel):
        if not frontier1 and not frontier2:
            return False
        frontier1 = expand(frontier1, seen1)
        if seen1 & seen2:
            return True
        frontier2 = expand(frontier2, seen2)
        if seen1 & seen2:
            return True
    if not frontier1 and not frontier2:
        return False
    return INCONCLUSIVE


def equivalent(t1: Term, t2: Term, mode: EqualityMode = BetaEta()) -> "bool | Inconclusive":
    """Whether t1 and t2 denote the same conversion class under mode.

    BetaEta answers True or False. BetaEtaGamma may also answer
    INCONCLUSIVE when its fuel runs out before the search spaces meet
    or close.
    """
    match mode:
        case BetaEta():
            return _beta_eta_equivalent(t1, t2)
        case BetaEtaGamma(_):
            if _beta_eta_equivalent(t1, t2):
                return True
            return _gamma_search(t1, t2, mode.fuel)
    raise TypeError(f"not an equality mode: {mode!r}")
