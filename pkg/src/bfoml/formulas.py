"""Abstract syntax and syntactic transformations for bundled first-order modal logic.

Every quantifier in the language is fused with a modality, so the only binders
are the four bundles ``E x []``, ``E x <>``, ``A x []`` and ``A x <>``.  The
universal bundles are duals: ``A x <> p`` abbreviates ``!E x [] !p`` and
``A x [] p`` abbreviates ``!E x <> !p``; the model checker nevertheless
evaluates them directly and the equivalence is property-tested.

All values here are immutable; every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import CaptureError


@dataclass(frozen=True)
class Var:
    """A variable: a lowercase-initial name plus an optional freshness index.

    Generated variables carry an index and render as ``x^3``; source-level
    variables normally have no index.  ``x^3`` is valid concrete syntax, so
    printing and reparsing a generated variable is lossless.
    """

    name: str
    index: int | None = None

    def __str__(self) -> str:
        if self.index is None:
            return self.name
        return f"{self.name}^{self.index}"


def var_key(v: Var) -> tuple[str, int]:
    """Total order on variables; index-free sorts before any indexed form."""
    return (v.name, -1 if v.index is None else v.index)


@dataclass(frozen=True)
class Predicate:
    name: str
    arity: int


class Quant(Enum):
    EXISTS = "E"
    FORALL = "A"


class Mod(Enum):
    BOX = "[]"
    DIAMOND = "<>"


class Fragment(Enum):
    """Which bundle pair a formula uses, judged after conversion to NNF."""

    EXISTS_BOX = "exists-box"
    EXISTS_DIAMOND = "exists-diamond"
    FULL = "full"


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    pred: Predicate
    args: tuple[Var, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.pred.arity:
            raise ValueError(
                f"atom {self.pred.name} given {len(self.args)} arguments, arity is {self.pred.arity}")


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    """Surface sugar; eliminated by to_nnf before any tableau work."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Bundle(Formula):
    quant: Quant
    mod: Mod
    var: Var
    body: Formula


TOP = Top()
BOT = Bot()


def atom(name: str, *args: str | Var) -> Atom:
    """Convenience constructor used heavily in tests."""
    vs = tuple(a if isinstance(a, Var) else Var(a) for a in args)
    return Atom(Predicate(name, len(vs)), vs)


def format_formula(f: Formula) -> str:
    """Render in the ASCII concrete syntax.  parse(format_formula(f)) == f."""
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Atom):
        return f"{f.pred.name}({','.join(str(a) for a in f.args)})"
    if isinstance(f, Not):
        return "!" + format_formula(f.body)
    if isinstance(f, And):
        return f"({format_formula(f.left)} & {format_formula(f.right)})"
    if isinstance(f, Or):
        return f"({format_formula(f.left)} | {format_formula(f.right)})"
    if isinstance(f, Implies):
        return f"({format_formula(f.left)} -> {format_formula(f.right)})"
    if isinstance(f, Bundle):
        return f"{f.quant.value} {f.var} {f.mod.value} {format_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def formula_key(f: Formula) -> str:
    """Canonical sort key; the printed form encodes the AST injectively."""
    return format_formula(f)


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformula occurrences of f, including f itself, preorder."""
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Or, Implies)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Bundle):
        yield from subformulas(f.body)


def free_vars(f: Formula) -> frozenset[Var]:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, (Top, Bot)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Bundle):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def bound_vars(f: Formula) -> frozenset[Var]:
    """Variables bound by some bundle in f."""
    return frozenset(g.var for g in subformulas(f) if isinstance(g, Bundle))


def all_vars(f: Formula) -> frozenset[Var]:
    """Every variable occurring in f, free or bound, including binder positions."""
    out: set[Var] = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.update(g.args)
        elif isinstance(g, Bundle):
            out.add(g.var)
    return frozenset(out)


def substitute(f: Formula, replacement: Var, target: Var) -> Formula:
    """Return f with every free occurrence of target replaced by replacement.

    Bound occurrences are untouched.  Raises CaptureError if a free target
    occurrence sits under a binder of the replacement variable; on the clean
    labels the tableaux produce this never happens, so a capture signals a
    cleanliness violation upstream.
    """
    if replacement == target:
        return f

    def rec(g: Formula) -> Formula:
        if isinstance(g, Atom):
            if target not in g.args:
                return g
            return Atom(g.pred, tuple(replacement if a == target else a for a in g.args))
        if isinstance(g, (Top, Bot)):
            return g
        if isinstance(g, Not):
            return Not(rec(g.body))
        if isinstance(g, (And, Or, Implies)):
            return type(g)(rec(g.left), rec(g.right))
        if isinstance(g, Bundle):
            if g.var == target:
                return g
            if g.var == replacement and target in free_vars(g.body):
                raise CaptureError(
                    f"substituting {replacement} for {target} would capture it under "
                    f"the binder in {format_formula(g)}")
            return Bundle(g.quant, g.mod, g.var, rec(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return rec(f)


_DUAL_QUANT = {Quant.EXISTS: Quant.FORALL, Quant.FORALL: Quant.EXISTS}
_DUAL_MOD = {Mod.BOX: Mod.DIAMOND, Mod.DIAMOND: Mod.BOX}


def to_nnf(f: Formula) -> Formula:
    """Negation normal form: negation only on atoms, implication eliminated.

    Equivalences used: De Morgan, double negation, !T = F, !F = T, and the
    bundle dualities (negating a bundle flips both the quantifier and the
    modality).  Idempotent; semantic equivalence is checked against the model
    checker in the test suite.
    """
    if isinstance(f, (Atom, Top, Bot)):
        return f
    if isinstance(f, And):
        return And(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Or):
        return Or(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Implies):
        return Or(to_nnf(Not(f.left)), to_nnf(f.right))
    if isinstance(f, Bundle):
        return Bundle(f.quant, f.mod, f.var, to_nnf(f.body))
    if isinstance(f, Not):
        g = f.body
        if isinstance(g, Atom):
            return f
        if isinstance(g, Top):
            return BOT
        if isinstance(g, Bot):
            return TOP
        if isinstance(g, Not):
            return to_nnf(g.body)
        if isinstance(g, And):
            return Or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Or):
            return And(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Implies):
            return And(to_nnf(g.left), to_nnf(Not(g.right)))
        if isinstance(g, Bundle):
            return Bundle(_DUAL_QUANT[g.quant], _DUAL_MOD[g.mod], g.var, to_nnf(Not(g.body)))
    raise TypeError(f"not a formula: {f!r}")


def is_nnf(f: Formula) -> bool:
    for g in subformulas(f):
        if isinstance(g, Implies):
            return False
        if isinstance(g, Not) and not isinstance(g.body, Atom):
            return False
    return True


def is_literal(f: Formula) -> bool:
    """Atom or negated atom.  T and F are handled separately by the tableaux."""
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.body, Atom))


def fresh_var(base: Var, used: set[Var] | frozenset[Var]) -> Var:
    """Smallest-index fresh variable sharing the base's name."""
    k = 1
    while Var(base.name, k) in used:
        k += 1
    return Var(base.name, k)


def fresh_like(base: Var, used: set[Var] | frozenset[Var]) -> Var:
    """base itself if unused, otherwise the smallest indexed variant."""
    if base not in used:
        return base
    return fresh_var(base, used)


def is_clean(f: Formula) -> bool:
    """No variable occurs both bound and free; binders are pairwise distinct."""
    binders = [g.var for g in subformulas(f) if isinstance(g, Bundle)]
    if len(binders) != len(set(binders)):
        return False
    return not (free_vars(f) & set(binders))


def cleanse(f: Formula) -> Formula:
    """Alpha-rename binders so the result is clean.

    Free variables are never renamed.  Binders are visited left to right and
    kept when possible; a conflicting binder is replaced by the smallest-index
    unused variant of its own name, so the output is deterministic and
    cleanse is idempotent.
    """
    free = free_vars(f)
    used = set(all_vars(f))
    taken: set[Var] = set()

    def rec(g: Formula, env: dict[Var, Var]) -> Formula:
        if isinstance(g, Atom):
            if not any(a in env for a in g.args):
                return g
            return Atom(g.pred, tuple(env.get(a, a) for a in g.args))
        if isinstance(g, (Top, Bot)):
            return g
        if isinstance(g, Not):
            return Not(rec(g.body, env))
        if isinstance(g, (And, Or, Implies)):
            return type(g)(rec(g.left, env), rec(g.right, env))
        if isinstance(g, Bundle):
            v = g.var
            if v in free or v in taken:
                nv = fresh_var(v, used)
                used.add(nv)
            else:
                nv = v
            taken.add(nv)
            child_env = dict(env)
            child_env[v] = nv
            return Bundle(g.quant, g.mod, nv, rec(g.body, child_env))
        raise TypeError(f"not a formula: {g!r}")

    return rec(f, {})


def modal_depth(f: Formula) -> int:
    """Maximum bundle-nesting depth."""
    if isinstance(f, (Atom, Top, Bot)):
        return 0
    if isinstance(f, Not):
        return modal_depth(f.body)
    if isinstance(f, (And, Or, Implies)):
        return max(modal_depth(f.left), modal_depth(f.right))
    if isinstance(f, Bundle):
        return 1 + modal_depth(f.body)
    raise TypeError(f"not a formula: {f!r}")


def boolean_connective_count(f: Formula) -> int:
    """Number of &, | and -> nodes; literal negation does not count."""
    if isinstance(f, (Atom, Top, Bot)):
        return 0
    if isinstance(f, Not):
        return boolean_connective_count(f.body)
    if isinstance(f, (And, Or, Implies)):
        return 1 + boolean_connective_count(f.left) + boolean_connective_count(f.right)
    if isinstance(f, Bundle):
        return boolean_connective_count(f.body)
    raise TypeError(f"not a formula: {f!r}")


def ast_size(f: Formula) -> int:
    """Node count including variable occurrences and binder positions."""
    if isinstance(f, Atom):
        return 1 + len(f.args)
    if isinstance(f, (Top, Bot)):
        return 1
    if isinstance(f, Not):
        return 1 + ast_size(f.body)
    if isinstance(f, (And, Or, Implies)):
        return 1 + ast_size(f.left) + ast_size(f.right)
    if isinstance(f, Bundle):
        return 2 + ast_size(f.body)
    raise TypeError(f"not a formula: {f!r}")


def exists_box_vars(f: Formula) -> frozenset[Var]:
    """Variables bound by an E-box bundle anywhere in f."""
    return frozenset(
        g.var for g in subformulas(f)
        if isinstance(g, Bundle) and g.quant is Quant.EXISTS and g.mod is Mod.BOX)


_EB_KINDS = {(Quant.EXISTS, Mod.BOX), (Quant.FORALL, Mod.DIAMOND)}
_ED_KINDS = {(Quant.EXISTS, Mod.DIAMOND), (Quant.FORALL, Mod.BOX)}


def classify(f: Formula) -> Fragment:
    """Fragment of the NNF of f.

    A bundle-free formula lies in both single-bundle fragments; it is reported
    as EXISTS_BOX so that the constant-domain procedure accepts it.
    """
    kinds = {(g.quant, g.mod) for g in subformulas(to_nnf(f)) if isinstance(g, Bundle)}
    if kinds <= _EB_KINDS:
        return Fragment.EXISTS_BOX
    if kinds <= _ED_KINDS:
        return Fragment.EXISTS_DIAMOND
    return Fragment.FULL
