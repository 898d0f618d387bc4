"""Decision procedures with re-checkable certificates.

Theoremhood for the uniform-memory logic is decided completely: truth of a
formula at any world of the infinite uniform line depends only on the
valuation pattern on its window, every pattern occurs at world 0 of some
window model, so it suffices to enumerate all valuations of a window frame
sized to the formula's horizon and test world 0.  For the non-uniform logic
we run a sound bounded refutation search over finite lasso frames: a found
countermodel is conclusive, absence of one under the caps is not, and is
reported as Inconclusive rather than as a theorem.

Every negative or satisfiable verdict carries a certificate (model + world +
target) that :func:`check_certificate` re-evaluates independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterator, Mapping, Optional, Union

from .frames import FiniteLassoFrame, Model, UniformWindowFrame, model_from_dict, model_to_dict
from .limits import DEFAULT_CHUNK_BITS, DEFAULT_MAX_ATOMS, DEFAULT_MAX_WORLDS
from .semantics import eval_nt, formula_valid_in_model, rule_refutation_mask
from .syntax import Formula, Rule, letters_of, parse_formula, parse_rule, print_formula, print_rule, reach
from .tables import decode_valuation, scan_valuations


class VerdictKind(Enum):
    THEOREM = "theorem"
    NON_THEOREM = "non_theorem"
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchCaps:
    """Record of the ceilings a search ran under."""

    max_worlds: Optional[int] = None
    max_reach: Optional[int] = None
    max_atoms: Optional[int] = None


@dataclass(frozen=True)
class Countermodel:
    """A model and world refuting (or, for satisfiability, witnessing) the target."""

    model: Model
    world: int
    target: Union[Formula, Rule]


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    certificate: Optional[Countermodel] = None
    caps: Optional[SearchCaps] = None


def _first_failure_world(model: Model, f: Formula) -> int:
    for a in range(model.frame.worlds):
        if not eval_nt(model, a, f):
            return a
    raise AssertionError("search reported a countermodel but the formula holds everywhere")


def decide_uniform_theorem(
    f: Formula,
    m: int,
    *,
    max_atoms: Optional[int] = None,
    max_worlds: Optional[int] = None,
    chunk_bits: int = DEFAULT_CHUNK_BITS,
    jobs: int = 1,
) -> Verdict:
    """Complete theoremhood test for the uniform logic with memory length ``m``.

    Builds the window frame of width ``reach(f, m) + 1`` and enumerates all
    valuations of the formula's letters; Theorem iff ``f`` holds at world 0
    under every one of them.  The first failing valuation (binary order)
    becomes the countermodel.  Verdicts are Inconclusive when the window or
    the valuation count would exceed the caps.
    """
    atom_cap = DEFAULT_MAX_ATOMS if max_atoms is None else max_atoms
    world_cap = DEFAULT_MAX_WORLDS if max_worlds is None else max_worlds
    letters = letters_of(f)
    width = reach(f, m) + 1
    if width > world_cap or len(letters) * width > atom_cap:
        return Verdict(VerdictKind.INCONCLUSIVE, caps=SearchCaps(max_worlds=world_cap, max_atoms=atom_cap))
    frame = UniformWindowFrame(width, m)
    found = scan_valuations(
        frame, letters, lambda ev: ~ev.table(f)[:, 0], chunk_bits=chunk_bits, jobs=jobs
    )
    if found is None:
        return Verdict(VerdictKind.THEOREM)
    model = Model(frame, decode_valuation(found, letters, width))
    return Verdict(VerdictKind.NON_THEOREM, Countermodel(model, 0, f))


def decide_uniform_satisfiable(
    f: Formula,
    m: int,
    *,
    max_atoms: Optional[int] = None,
    max_worlds: Optional[int] = None,
    chunk_bits: int = DEFAULT_CHUNK_BITS,
    jobs: int = 1,
) -> Verdict:
    """Satisfiability at world 0 of some uniform window model; dual to theoremhood."""
    atom_cap = DEFAULT_MAX_ATOMS if max_atoms is None else max_atoms
    world_cap = DEFAULT_MAX_WORLDS if max_worlds is None else max_worlds
    letters = letters_of(f)
    width = reach(f, m) + 1
    if width > world_cap or len(letters) * width > atom_cap:
        return Verdict(VerdictKind.INCONCLUSIVE, caps=SearchCaps(max_worlds=world_cap, max_atoms=atom_cap))
    frame = UniformWindowFrame(width, m)
    found = scan_valuations(
        frame, letters, lambda ev: ev.table(f)[:, 0], chunk_bits=chunk_bits, jobs=jobs
    )
    if found is None:
        return Verdict(VerdictKind.UNSATISFIABLE)
    model = Model(frame, decode_valuation(found, letters, width))
    return Verdict(VerdictKind.SATISFIABLE, Countermodel(model, 0, f))


def iter_lasso_frames(max_worlds: int, max_reach: int) -> Iterator[FiniteLassoFrame]:
    """All lasso frames under the caps: W ascending, then loop target, then reach lengths."""
    for worlds in range(1, max_worlds + 1):
        cap = min(max_reach, worlds)
        for loop in range(worlds):
            for d in combinations_with_replacement(range(1, cap + 1), worlds):
                yield FiniteLassoFrame(worlds, loop, d)


def bounded_nt_refutation(
    target: Union[Formula, Rule],
    max_worlds: int,
    max_reach: int,
    *,
    chunk_bits: int = DEFAULT_CHUNK_BITS,
    jobs: int = 1,
) -> Verdict:
    """Sound countermodel search over finite lasso frames.

    Enumerates frames and valuations in a fixed order and returns the first
    countermodel as a NonTheorem certificate; if none exists under the caps
    the result is Inconclusive (never Theorem: the complete size bound of
    :func:`finite_model_size_bound` is astronomically large).
    """
    caps = SearchCaps(max_worlds=max_worlds, max_reach=max_reach)
    if max_worlds < 1 or max_reach < 1:
        raise ValueError("search caps must be positive")
    if isinstance(target, Rule):
        letters = target.letters
        mask = rule_refutation_mask(target)
        failing = target.conclusion
    else:
        letters = letters_of(target)
        mask = lambda ev: ~ev.table(target).all(axis=1)  # noqa: E731
        failing = target
    for frame in iter_lasso_frames(max_worlds, max_reach):
        found = scan_valuations(frame, letters, mask, chunk_bits=chunk_bits, jobs=jobs)
        if found is not None:
            model = Model(frame, decode_valuation(found, letters, frame.worlds))
            world = _first_failure_world(model, failing)
            return Verdict(VerdictKind.NON_THEOREM, Countermodel(model, world, target))
    return Verdict(VerdictKind.INCONCLUSIVE, caps=caps)


def finite_model_size_bound(n: int, l: int) -> int:
    """Size bound for countermodels of a reduced-form rule with ``n`` letters and ``l`` disjuncts.

    Exact integer value of ``(n*l) * l**(n*l) * (n*l)! + l**(n*l)``; reported
    for information, never used as a search target.
    """
    if n < 1 or l < 1:
        raise ValueError("letter and disjunct counts must be >= 1")
    nl = n * l
    return nl * l**nl * factorial(nl) + l**nl


def check_certificate(verdict: Verdict) -> bool:
    """Re-evaluate a verdict's certificate and confirm the claim it encodes.

    NonTheorem formula certificates must falsify the target at the stated
    world; rule certificates must validate every premise while the
    conclusion fails at the world; Satisfiable witnesses must verify the
    target.  Raises ValueError when the verdict carries no certificate.
    """
    cm = verdict.certificate
    if cm is None:
        raise ValueError(f"{verdict.kind.value} verdict carries no certificate")
    if not 0 <= cm.world < cm.model.frame.worlds:
        return False
    if isinstance(cm.target, Rule):
        if verdict.kind is not VerdictKind.NON_THEOREM:
            return False
        premises_hold = all(formula_valid_in_model(cm.model, p) for p in cm.target.premises)
        return premises_hold and not eval_nt(cm.model, cm.world, cm.target.conclusion)
    if verdict.kind is VerdictKind.NON_THEOREM:
        return not eval_nt(cm.model, cm.world, cm.target)
    if verdict.kind is VerdictKind.SATISFIABLE:
        return eval_nt(cm.model, cm.world, cm.target)
    return False


# ---------------------------------------------------------------------------
# Serialization: certificates are the model file plus world and target text;
# verdicts add the kind and the caps the search ran under.
# ---------------------------------------------------------------------------


def countermodel_to_dict(cm: Countermodel) -> dict:
    data = model_to_dict(cm.model)
    data["world"] = cm.world
    data["target"] = print_rule(cm.target) if isinstance(cm.target, Rule) else print_formula(cm.target)
    return data


def countermodel_from_dict(data: Mapping) -> Countermodel:
    model = model_from_dict(data)
    if not isinstance(model, Model):
        raise ValueError("certificates use single-valuation models")
    text = data["target"]
    target: Union[Formula, Rule] = parse_rule(text) if "/" in text else parse_formula(text)
    return Countermodel(model, int(data["world"]), target)


def _caps_to_dict(caps: SearchCaps) -> dict:
    out = {}
    for key in ("max_worlds", "max_reach", "max_atoms"):
        value = getattr(caps, key)
        if value is not None:
            out[key] = value
    return out


def verdict_to_dict(verdict: Verdict) -> dict:
    return {
        "verdict": verdict.kind.value,
        "certificate": countermodel_to_dict(verdict.certificate) if verdict.certificate else None,
        "caps": _caps_to_dict(verdict.caps) if verdict.caps else None,
    }


def verdict_from_dict(data: Mapping) -> Verdict:
    kind = VerdictKind(data["verdict"])
    cert = data.get("certificate")
    caps = data.get("caps")
    return Verdict(
        kind,
        countermodel_from_dict(cert) if cert else None,
        SearchCaps(**caps) if caps else None,
    )


def verdict_to_json(verdict: Verdict) -> str:
    return json.dumps(verdict_to_dict(verdict), sort_keys=True)
