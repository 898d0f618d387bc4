"""Vectorized truth tables over batches of valuations (internal engine).

A batch of valuations over ``n`` letters and ``W`` worlds is encoded as an
array of integer codes: letter ``i`` is true at world ``a`` in valuation
``v`` iff bit ``i*W + a`` of ``v`` is set.  :class:`BatchEvaluator` turns a
formula into a ``(len(batch), W)`` Boolean table, evaluating every valuation
of the batch simultaneously; :func:`scan_valuations` drives a full
enumeration in chunks and returns the first valuation code some caller-made
predicate flags.  Enumeration order is the plain binary order of the codes,
which is what makes search results reproducible.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

import numpy as np

from .frames import FiniteLassoFrame, Frame, Valuation
from .limits import DEFAULT_CHUNK_BITS
from .syntax import And, FalseBool, Formula, Implies, Letter, Next, Not, Or, TrueBool, Until


class BatchEvaluator:
    """Truth tables for one frame and one batch of valuation codes.

    On uniform frames the columns past a formula's window guarantee hold
    unspecified values; callers must only read columns ``a`` with
    ``a + reach(f) <= worlds - 1`` (the decision procedures read column 0 of
    a frame sized to fit).
    """

    def __init__(self, frame: Frame, letters: Sequence[str], indices: np.ndarray):
        self.frame = frame
        self.letters = tuple(letters)
        self.indices = np.asarray(indices, dtype=np.uint64)
        self.worlds = frame.worlds
        self._pos = {name: i for i, name in enumerate(self.letters)}
        self._windows = [frame.window(a) for a in range(frame.worlds)]
        if isinstance(frame, FiniteLassoFrame):
            succ = [frame.next_world(a) for a in range(frame.worlds)]
        else:
            succ = list(range(1, frame.worlds)) + [frame.worlds - 1]  # last column is guard zone
        self._succ = np.array(succ)
        self._memo: dict[int, np.ndarray] = {}
        self._pinned: list[Formula] = []  # keeps ids in _memo from being recycled

    def table(self, f: Formula) -> np.ndarray:
        key = id(f)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Letter):
            t = self._letter(f.name)
        elif isinstance(f, TrueBool):
            t = np.ones((len(self.indices), self.worlds), dtype=bool)
        elif isinstance(f, FalseBool):
            t = np.zeros((len(self.indices), self.worlds), dtype=bool)
        elif isinstance(f, Not):
            t = ~self.table(f.arg)
        elif isinstance(f, And):
            t = self.table(f.left) & self.table(f.right)
        elif isinstance(f, Or):
            t = self.table(f.left) | self.table(f.right)
        elif isinstance(f, Implies):
            t = ~self.table(f.left) | self.table(f.right)
        elif isinstance(f, Next):
            t = self.table(f.arg)[:, self._succ]
        elif isinstance(f, Until):
            t = self._until(self.table(f.left), self.table(f.right))
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._memo[key] = t
        self._pinned.append(f)
        return t

    def _letter(self, name: str) -> np.ndarray:
        i = self._pos[name]  # missing letter = caller bug: batch letters must cover the formula
        base = i * self.worlds
        cols = [
            ((self.indices >> np.uint64(base + a)) & np.uint64(1)).astype(bool)
            for a in range(self.worlds)
        ]
        return np.stack(cols, axis=1)

    def _until(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        out = np.empty_like(left)
        for a in range(self.worlds):
            win = self._windows[a]
            res = right[:, win[0]].copy()
            pref = left[:, win[0]].copy()
            for b in win[1:]:
                res |= pref & right[:, b]
                pref &= left[:, b]
            out[:, a] = res
        return out


FailMask = Callable[[BatchEvaluator], np.ndarray]


def scan_valuations(
    frame: Frame,
    letters: Sequence[str],
    fail_mask: FailMask,
    *,
    chunk_bits: int = DEFAULT_CHUNK_BITS,
    jobs: int = 1,
) -> Optional[int]:
    """First valuation code flagged by ``fail_mask``, or None.

    Scans all ``2**(len(letters) * frame.worlds)`` valuations in binary
    order.  ``fail_mask`` receives a :class:`BatchEvaluator` for one chunk
    and returns a Boolean hit vector over ``evaluator.indices``.  With
    ``jobs > 1`` chunks are evaluated in a thread pool; results are still
    consumed in order, so the answer does not depend on ``jobs``.
    """
    n_bits = len(letters) * frame.worlds
    total = 1 << n_bits
    step = 1 << min(chunk_bits, n_bits)

    def run(start: int) -> Optional[int]:
        stop = min(start + step, total)
        ev = BatchEvaluator(frame, letters, np.arange(start, stop, dtype=np.uint64))
        hits = np.flatnonzero(fail_mask(ev))
        return start + int(hits[0]) if hits.size else None

    starts = range(0, total, step)
    if jobs <= 1 or len(starts) == 1:
        for start in starts:
            found = run(start)
            if found is not None:
                return found
        return None
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for found in pool.map(run, starts):
            if found is not None:
                return found
    return None


def decode_valuation(code: int, letters: Sequence[str], worlds: int) -> Valuation:
    """Valuation encoded by ``code`` under the engine's bit layout."""
    true_worlds = {
        name: frozenset(a for a in range(worlds) if (code >> (i * worlds + a)) & 1)
        for i, name in enumerate(letters)
    }
    return Valuation(true_worlds)
