"""Reduced normal forms for inference rules.

A rule is in reduced normal form when it has the shape ``eps / x1`` where
``eps`` is a disjunction of *perfect* conjunctions: each disjunct assigns a
sign to every atom in ``{x_i} ∪ {X x_i} ∪ {x_i U x_k : i != k}`` over the
rule's variables ``x_1..x_n``.  :func:`to_reduced_normal_form` rewrites an
arbitrary rule into an equivalent one (same validity on every finite frame)
by introducing one variable per subformula, constraining each composite
variable to its top connective, and enumerating all Boolean assignments of
the atom set that satisfy the constraints plus the premise variable.

The atom order is canonical throughout: bases ``x_1..x_n``, then nexts
``X x_1..X x_n``, then untils ``x_i U x_k`` by ``(i, k)`` lexicographic.
Disjuncts are emitted in binary counting order over that atom order, so the
construction is deterministic.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from functools import reduce
from typing import Optional

import numpy as np

from .limits import DEFAULT_MAX_ATOMS, ResourceCapError
from .syntax import (
    And,
    FalseBool,
    Formula,
    Implies,
    Letter,
    Next,
    Not,
    Or,
    Rule,
    TrueBool,
    Until,
    letters_of,
    subformulas,
)


def formula_to_rule(f: Formula) -> Rule:
    """Bridge a formula to rule form: ``(x -> x) / f`` with ``x`` fresh."""
    used = set(letters_of(f))
    name = "x"
    i = 0
    while name in used:
        name = f"x{i}"
        i += 1
    x = Letter(name)
    return Rule((Implies(x, x),), f)


def atom_count(n: int) -> int:
    return n * (n + 1)


def _atom_formulas(variables: tuple[str, ...]) -> list[Formula]:
    base = [Letter(x) for x in variables]
    atoms: list[Formula] = list(base)
    atoms.extend(Next(b) for b in base)
    n = len(variables)
    for i in range(n):
        for k in range(n):
            if i != k:
                atoms.append(Until(base[i], base[k]))
    return atoms


@dataclass(frozen=True, eq=False)
class ReducedShape:
    """Sign tables of a rule in reduced normal form.

    ``letters`` starts with the conclusion variable; ``keys`` holds each
    disjunct packed into an integer, bit ``j`` being the sign of atom ``j``
    in the canonical order.
    """

    letters: tuple[str, ...]
    keys: np.ndarray

    def atom_formulas(self) -> list[Formula]:
        return _atom_formulas(self.letters)

    def conclusion_formula(self) -> Letter:
        return Letter(self.letters[0])


@dataclass(frozen=True, eq=False)
class ReducedNormalFormRule:
    """A rule ``eps / x1`` stored as sign tables.

    ``signs[j, t]`` is True when disjunct ``j`` asserts atom ``t``
    positively (canonical atom order over ``variables``).
    """

    variables: tuple[str, ...]
    signs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        signs = np.asarray(self.signs, dtype=bool)
        object.__setattr__(self, "signs", signs)
        if signs.ndim != 2 or signs.shape[1] != atom_count(len(self.variables)):
            raise ValueError("sign table width does not match the variable count")
        if signs.shape[0] == 0:
            raise ValueError("a reduced normal form needs at least one disjunct")

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    @property
    def disjunct_count(self) -> int:
        return int(self.signs.shape[0])

    def shape(self) -> ReducedShape:
        weights = np.uint64(1) << np.arange(self.signs.shape[1], dtype=np.uint64)
        keys = (self.signs.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
        return ReducedShape(self.variables, np.unique(keys))

    def to_rule(self) -> Rule:
        """Render the sign tables as an actual rule ``eps / x1``.

        Disjuncts are right-nested conjunctions in canonical atom order with
        shared suffixes, joined by a balanced disjunction tree (keeps the
        formula depth logarithmic in the disjunct count).
        """
        atoms = _atom_formulas(self.variables)
        negated = [Not(a) for a in atoms]
        width = len(atoms)
        cache: dict[tuple[int, int], Formula] = {}
        disjuncts: list[Formula] = []
        for row in self.signs:
            bits = row.tolist()
            node: Optional[Formula] = None
            key = 0
            for t in range(width - 1, -1, -1):
                key = (key << 1) | bits[t]
                cached = cache.get((t, key))
                if cached is not None:
                    node = cached
                    continue
                lit = atoms[t] if bits[t] else negated[t]
                node = lit if node is None else And(lit, node)
                cache[(t, key)] = node
            disjuncts.append(node)  # type: ignore[arg-type]
        eps = _balanced_or(disjuncts)
        return Rule((eps,), Letter(self.variables[0]))


def _balanced_or(nodes: list[Formula]) -> Formula:
    while len(nodes) > 1:
        paired = [
            Or(nodes[i], nodes[i + 1]) if i + 1 < len(nodes) else nodes[i]
            for i in range(0, len(nodes), 2)
        ]
        nodes = paired
    return nodes[0]


def _variable_order(rule: Rule) -> tuple[Formula, list[Formula]]:
    """Single premise conjunction plus subformula variables, conclusion first."""
    phi = reduce(And, rule.premises)
    order: list[Formula] = [rule.conclusion]
    seen = {rule.conclusion}
    for g in (*subformulas(phi), *subformulas(rule.conclusion)):
        if g not in seen:
            seen.add(g)
            order.append(g)
    return phi, order


def to_reduced_normal_form(rule: Rule, *, max_atoms: Optional[int] = None) -> ReducedNormalFormRule:
    """Equivalent reduced normal form of ``rule`` (same frame validity).

    One variable per distinct subformula of the joined premise and of the
    conclusion (the conclusion's variable is ``x1``); all ``2**|atoms|``
    assignments are enumerated and filtered by the constraints tying each
    composite variable to its immediate parts, plus truth of the premise
    variable.  A contradictory premise, which satisfies no assignment, maps
    to the canonical always-valid form over one variable (both rules are
    then valid in every frame).
    """
    cap = DEFAULT_MAX_ATOMS if max_atoms is None else max_atoms
    phi, order = _variable_order(rule)
    n = len(order)
    width = atom_count(n)
    if width > cap:
        raise ResourceCapError(f"{n} variables need {width} atoms (cap {cap})")
    var_index = {g: i for i, g in enumerate(order)}
    until_pos: dict[tuple[int, int], int] = {}
    t = 2 * n
    for i in range(n):
        for k in range(n):
            if i != k:
                until_pos[(i, k)] = t
                t += 1

    rows = 1 << width
    codes = np.arange(rows, dtype=np.uint64)
    bits = np.empty((rows, width), dtype=bool)
    for j in range(width):
        bits[:, j] = (codes >> np.uint64(j)) & np.uint64(1)

    def base(i: int) -> np.ndarray:
        return bits[:, i]

    mask = base(var_index[phi]).copy()
    for g, i in var_index.items():
        if isinstance(g, Letter):
            continue
        if isinstance(g, TrueBool):
            mask &= base(i)
        elif isinstance(g, FalseBool):
            mask &= ~base(i)
        elif isinstance(g, Not):
            mask &= base(i) == ~base(var_index[g.arg])
        elif isinstance(g, And):
            mask &= base(i) == (base(var_index[g.left]) & base(var_index[g.right]))
        elif isinstance(g, Or):
            mask &= base(i) == (base(var_index[g.left]) | base(var_index[g.right]))
        elif isinstance(g, Implies):
            mask &= base(i) == (~base(var_index[g.left]) | base(var_index[g.right]))
        elif isinstance(g, Next):
            mask &= base(i) == bits[:, n + var_index[g.arg]]
        elif isinstance(g, Until):
            left, right = var_index[g.left], var_index[g.right]
            if left == right:
                # x U x is x (the witness may be the current world)
                mask &= base(i) == base(left)
            else:
                mask &= base(i) == bits[:, until_pos[(left, right)]]
        else:
            raise TypeError(f"not a formula: {g!r}")

    signs = bits[mask]
    variables = tuple(f"x{i + 1}" for i in range(n))
    if signs.shape[0] == 0:
        return _always_valid_form()
    return ReducedNormalFormRule(variables, signs)


def _always_valid_form() -> ReducedNormalFormRule:
    # eps forces x1 true at every world, so the rule holds in every frame.
    return ReducedNormalFormRule(("x1",), np.array([[True, False], [True, True]]))


_shape_cache: dict[int, tuple["weakref.ref[Rule]", Optional[ReducedShape]]] = {}


def match_reduced_form(rule: Rule) -> Optional[ReducedShape]:
    """Sign tables of ``rule`` if it is syntactically in reduced normal form.

    Accepts any nesting of the conjunctions and disjunctions; returns None
    when the rule does not have the shape (several premises, non-variable
    conclusion, imperfect or alien conjuncts).  Results are cached per rule
    object: rendered forms can be large and get matched once per frame check.
    """
    key = id(rule)
    hit = _shape_cache.get(key)
    if hit is not None and hit[0]() is rule:
        return hit[1]
    shape = _match_reduced_form(rule)
    _shape_cache[key] = (weakref.ref(rule, lambda _, key=key: _shape_cache.pop(key, None)), shape)
    return shape


def _match_reduced_form(rule: Rule) -> Optional[ReducedShape]:
    if len(rule.premises) != 1:
        return None
    concl = rule.conclusion
    if not isinstance(concl, Letter):
        return None
    letters = (concl.name,) + tuple(x for x in rule.letters if x != concl.name)
    atom_index = {a: j for j, a in enumerate(_atom_formulas(letters))}
    width = len(atom_index)
    full_mask = (1 << width) - 1
    # (assigned-atom mask, positive-sign bits) per conjunction node; None on
    # alien or duplicated conjuncts.  Memoized by id so suffixes shared
    # across disjuncts are walked once.
    memo: dict[int, Optional[tuple[int, int]]] = {}

    def conj(node: Formula) -> Optional[tuple[int, int]]:
        cached = memo.get(id(node), _MISSING)
        if cached is not _MISSING:
            return cached
        if isinstance(node, And):
            left = conj(node.left)
            right = conj(node.right)
            if left is None or right is None or (left[0] & right[0]):
                out = None
            else:
                out = (left[0] | right[0], left[1] | right[1])
        else:
            positive = True
            inner = node
            if isinstance(inner, Not):
                positive = False
                inner = inner.arg
            j = atom_index.get(inner)
            out = None if j is None else (1 << j, int(positive) << j)
        memo[id(node)] = out
        return out

    keys = set()
    for disjunct in _flatten(Or, rule.premises[0]):
        res = conj(disjunct)
        if res is None or res[0] != full_mask:
            return None
        keys.add(res[1])
    return ReducedShape(letters, np.array(sorted(keys), dtype=np.uint64))


_MISSING = object()


def is_reduced_normal_form(rule: Rule) -> bool:
    return match_reduced_form(rule) is not None


def _flatten(cls: type, f: Formula) -> list[Formula]:
    out: list[Formula] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, cls):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out
