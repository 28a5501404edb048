"""Label plumbing shared by the two tableau procedures."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalSolverError
from .formulas import (And, Atom, Bot, Bundle, Formula, Mod, Not, Or, Quant,
                       Top, Var, boolean_connective_count, bound_vars,
                       formula_key, free_vars, modal_depth, var_key)


def canonical_gamma(formulas) -> tuple[Formula, ...]:
    """Deduplicate, drop T (it never clashes), and order canonically."""
    out = {formula_key(f): f for f in formulas if not isinstance(f, Top)}
    return tuple(out[k] for k in sorted(out))


def find_clash(gamma: tuple[Formula, ...]) -> str | None:
    """F in the label, or a literal next to its negation, closes the branch."""
    positive: set[tuple[str, tuple[Var, ...]]] = set()
    negative: set[tuple[str, tuple[Var, ...]]] = set()
    for f in gamma:
        if isinstance(f, Bot):
            return "F"
        if isinstance(f, Atom):
            positive.add((f.pred.name, f.args))
        elif isinstance(f, Not) and isinstance(f.body, Atom):
            negative.add((f.body.pred.name, f.body.args))
    for name, args in sorted(positive & negative, key=lambda k: (k[0], [var_key(a) for a in k[1]])):
        rendered = f"{name}({','.join(str(a) for a in args)})"
        return f"{rendered} and !{rendered}"
    return None


@dataclass(frozen=True)
class Partition:
    ands: tuple[And, ...]
    ors: tuple[Or, ...]
    exists_diamond: tuple[Bundle, ...]
    exists_box: tuple[Bundle, ...]
    forall_diamond: tuple[Bundle, ...]
    forall_box: tuple[Bundle, ...]
    literals: tuple[Formula, ...]


def partition(gamma: tuple[Formula, ...]) -> Partition:
    groups: dict[str, list] = {k: [] for k in
                               ("and", "or", "ed", "eb", "ad", "ab", "lit")}
    for f in gamma:
        if isinstance(f, And):
            groups["and"].append(f)
        elif isinstance(f, Or):
            groups["or"].append(f)
        elif isinstance(f, Bundle):
            if f.quant is Quant.EXISTS:
                groups["ed" if f.mod is Mod.DIAMOND else "eb"].append(f)
            else:
                groups["ad" if f.mod is Mod.DIAMOND else "ab"].append(f)
        elif isinstance(f, (Atom, Bot)) or (isinstance(f, Not) and isinstance(f.body, Atom)):
            groups["lit"].append(f)
        else:
            raise InternalSolverError(
                f"label holds a formula outside the NNF grammar: {f}")
    return Partition(
        ands=tuple(groups["and"]), ors=tuple(groups["or"]),
        exists_diamond=tuple(groups["ed"]), exists_box=tuple(groups["eb"]),
        forall_diamond=tuple(groups["ad"]), forall_box=tuple(groups["ab"]),
        literals=tuple(groups["lit"]))


def label_measure(gamma: tuple[Formula, ...]) -> tuple[int, int]:
    """(max bundle nesting, total boolean connectives).

    Every rule application strictly decreases this lexicographically: the
    boolean rules peel one connective without raising nesting, and a
    branching or end step drops the maximum nesting by at least one even
    though instantiation may duplicate boolean structure.
    """
    rank = max((modal_depth(f) for f in gamma), default=0)
    bools = sum(boolean_connective_count(f) for f in gamma)
    return (rank, bools)


def assert_measure_decreases(premise: tuple[Formula, ...],
                             child: tuple[Formula, ...]) -> None:
    if label_measure(child) >= label_measure(premise):
        raise InternalSolverError(
            f"termination measure failed to decrease: {label_measure(premise)} -> "
            f"{label_measure(child)}")


def assert_vars_only_free(gamma: tuple[Formula, ...], tracked: frozenset[Var]) -> None:
    """Tracked variables may occur in label formulas only in free positions."""
    for f in gamma:
        clash = bound_vars(f) & tracked
        if clash:
            names = ", ".join(str(v) for v in sorted(clash, key=var_key))
            raise InternalSolverError(
                f"cleanliness violated: {names} bound inside label formula {f}")


def assert_free_vars_tracked(gamma: tuple[Formula, ...], tracked: frozenset[Var]) -> None:
    for f in gamma:
        loose = free_vars(f) - tracked
        if loose:
            names = ", ".join(str(v) for v in sorted(loose, key=var_key))
            raise InternalSolverError(
                f"label formula {f} has untracked free variables {names}")


def format_var_set(vs) -> str:
    return "{" + ",".join(str(v) for v in sorted(vs, key=var_key)) + "}"


def format_gamma(gamma: tuple[Formula, ...]) -> str:
    return "{" + ", ".join(formula_key(f) for f in gamma) + "}"
