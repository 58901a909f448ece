"""Cycle search over canonical forms of flat self-application towers.

The orbit of a B-term X is X(1) = X, X(i+1) = X(i) X. find_rho locates the
least (entry, cycle) with canonical(X(entry)) = canonical(X(entry + cycle)),
advancing entirely in degree-sequence space via fast_apply.apply_runs.

Long searches can write periodic checkpoints and resume after a hard kill.
A checkpoint is ten lines of text:

    rho-checkpoint v1
    term: B (B B)
    engine: canonical
    algorithm: floyd
    phase: 2
    step: 18
    m: 32
    candidate_c: -
    slow: 3*1,1*2
    fast: 5*1,2*2,0*1

step is the per-phase counter. For Floyd, m holds the phase-1 meeting index
while phases 1-2 run; phase 3 stores the entry found by phase 2 in m and
moves the meeting index (a multiple of the cycle length) into candidate_c.
For Brent, m stays "-" and candidate_c holds the cycle length once phase 1
finds it. slow and fast are run-length encoded degree sequences. Writes are
atomic (temp file + rename) and only ever happen at loop boundaries, so a
checkpoint always describes a consistent search position. The file is
removed when a search completes.

Budgets count advances (one advance = one application of X) and apply per
run: resuming grants a fresh max_steps.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from . import bterm as bt
from .canonical import DegreeSeq, Runs, canonicalize, parse_seq
from .errors import CheckpointIO, CycleNotFound, FormatVersionMismatch
from .fast_apply import apply_runs, raise_runs

FORMAT_LINE = "rho-checkpoint v1"
ENGINE_NAME = "canonical"

TermLike = Union[bt.BTerm, str]


@dataclass(frozen=True, slots=True)
class RhoResult:
    entry: int
    cycle: int

    def __iter__(self):
        yield self.entry
        yield self.cycle


@dataclass(slots=True)
class SearchState:
    """Mutable position of a running search. Fields mirror the checkpoint
    format; base is derived from term_text and advances counts this run's
    applications (monotone, safe to read from a monitor thread)."""

    term_text: str
    algorithm: str
    phase: int
    step: int
    m: int | None
    candidate_c: int | None
    slow: Runs
    fast: Runs
    base: Runs
    advances: int = 0


def _fresh_state(term_text: str, algorithm: str, base: Runs) -> SearchState:
    rbase = raise_runs(base)
    return SearchState(
        term_text=term_text,
        algorithm=algorithm,
        phase=1,
        step=1,
        m=None,
        candidate_c=None,
        slow=base,
        fast=apply_runs(base, rbase),
        base=base,
    )


def _opt(v: int | None) -> str:
    return "-" if v is None else str(v)


def save_checkpoint(state: SearchState, path: str) -> None:
    """Atomically write the ten-line checkpoint for state."""
    text = "\n".join(
        [
            FORMAT_LINE,
            f"term: {state.term_text}",
            f"engine: {ENGINE_NAME}",
            f"algorithm: {state.algorithm}",
            f"phase: {state.phase}",
            f"step: {state.step}",
            f"m: {_opt(state.m)}",
            f"candidate_c: {_opt(state.candidate_c)}",
            f"slow: {DegreeSeq(state.slow).rle_text()}",
            f"fast: {DegreeSeq(state.fast).rle_text()}",
        ]
    )
    tmp = path + ".tmp"
    try:
        with open(tmp, "w") as fh:
            fh.write(text + "\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise CheckpointIO(f"cannot write checkpoint {path!r}: {exc}") from exc


def _field(lines: list[str], idx: int, key: str, path: str) -> str:
    prefix = key + ": "
    if idx >= len(lines) or not lines[idx].startswith(prefix):
        raise CheckpointIO(f"checkpoint {path!r} is truncated or malformed at line {idx + 1}")
    return lines[idx][len(prefix):]


def _opt_int(text: str, key: str, path: str) -> int | None:
    if text == "-":
        return None
    try:
        return int(text)
    except ValueError:
        raise CheckpointIO(f"checkpoint {path!r}: bad integer for {key}: {text!r}") from None


def load_checkpoint(path: str) -> SearchState:
    """Read a checkpoint back into a SearchState, rederiving the base runs."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CheckpointIO(f"cannot read checkpoint {path!r}: {exc}") from exc
    if not lines:
        raise CheckpointIO(f"checkpoint {path!r} is empty")
    if lines[0] != FORMAT_LINE:
        if lines[0].startswith("rho-checkpoint"):
            raise FormatVersionMismatch(
                f"checkpoint {path!r} has version {lines[0]!r}, expected {FORMAT_LINE!r}"
            )
        raise CheckpointIO(f"checkpoint {path!r} does not look like a rho checkpoint")
    term_text = _field(lines, 1, "term", path)
    engine = _field(lines, 2, "engine", path)
    if engine != ENGINE_NAME:
        raise CheckpointIO(f"checkpoint {path!r} is for engine {engine!r}, not {ENGINE_NAME!r}")
    algorithm = _field(lines, 3, "algorithm", path)
    if algorithm not in ("floyd", "brent"):
        raise CheckpointIO(f"checkpoint {path!r}: unknown algorithm {algorithm!r}")
    phase = _opt_int(_field(lines, 4, "phase", path), "phase", path)
    step = _opt_int(_field(lines, 5, "step", path), "step", path)
    if phase not in (1, 2, 3) or step is None or step < 1:
        raise CheckpointIO(f"checkpoint {path!r}: bad phase/step")
    m = _opt_int(_field(lines, 6, "m", path), "m", path)
    candidate_c = _opt_int(_field(lines, 7, "candidate_c", path), "candidate_c", path)
    if algorithm == "brent" and phase == 3:
        raise CheckpointIO(f"checkpoint {path!r}: brent searches have no phase 3")
    if algorithm == "brent" and phase == 2 and candidate_c is None:
        raise CheckpointIO(f"checkpoint {path!r}: brent phase 2 requires candidate_c")
    if algorithm == "floyd" and phase >= 2 and m is None:
        raise CheckpointIO(f"checkpoint {path!r}: floyd phase {phase} requires m")
    try:
        slow = parse_seq(_field(lines, 8, "slow", path)).runs
        fast = parse_seq(_field(lines, 9, "fast", path)).runs
        base = canonicalize(bt.parse(term_text)).runs
    except Exception as exc:
        raise CheckpointIO(f"checkpoint {path!r}: {exc}") from exc
    return SearchState(
        term_text=term_text,
        algorithm=algorithm,
        phase=phase,
        step=step,
        m=m,
        candidate_c=candidate_c,
        slow=slow,
        fast=fast,
        base=base,
    )


class _Run:
    """Budget, checkpoint and hook plumbing around one search."""

    __slots__ = (
        "st", "rbase", "left", "limit", "path", "interval", "seconds",
        "hook", "last_saved_at", "last_saved_time",
    )

    def __init__(self, st, max_steps, path, interval, seconds, hook):
        self.st = st
        self.rbase = raise_runs(st.base)
        self.left = max_steps - st.advances
        self.limit = max_steps
        self.path = path
        self.interval = interval
        self.seconds = seconds
        self.hook = hook
        self.last_saved_at = st.advances
        self.last_saved_time = time.monotonic()

    def advance(self, runs: Runs) -> Runs:
        if self.left <= 0:
            # state still describes the last completed loop iteration
            if self.path is not None:
                save_checkpoint(self.st, self.path)
            raise CycleNotFound(self.limit)
        self.left -= 1
        self.st.advances += 1
        return apply_runs(runs, self.rbase)

    def bookkeeping(self) -> None:
        st = self.st
        if self.path is not None:
            due = st.advances - self.last_saved_at >= self.interval
            if due or time.monotonic() - self.last_saved_time >= self.seconds:
                save_checkpoint(st, self.path)
                self.last_saved_at = st.advances
                self.last_saved_time = time.monotonic()
        if self.hook is not None:
            self.hook(st)


def _run_floyd(run: _Run) -> RhoResult:
    st = run.st
    base = st.base
    while True:
        if st.phase == 1:
            # invariant: slow = X(step), fast = X(2 step)
            if st.slow == st.fast:
                nxt = run.advance(st.slow)
                st.m = st.step
                st.fast = nxt
                st.slow = base
                st.step = 1
                st.phase = 2
            else:
                st.slow = run.advance(st.slow)
                st.fast = run.advance(run.advance(st.fast))
                st.step += 1
        elif st.phase == 2:
            # invariant: slow = X(step), fast = X(m + step); first meeting
            # is the entry because m is a multiple of the cycle length
            if st.slow == st.fast:
                nxt = run.advance(st.slow)
                st.candidate_c = st.m
                st.m = st.step
                st.fast = nxt
                st.step = 1
                st.phase = 3
            else:
                st.slow = run.advance(st.slow)
                st.fast = run.advance(st.fast)
                st.step += 1
        else:
            # invariant: slow = X(entry) with entry in m, fast = X(entry + step)
            if st.slow == st.fast:
                return RhoResult(st.m, st.step)
            st.fast = run.advance(st.fast)
            st.step += 1
        run.bookkeeping()


def _run_brent(run: _Run) -> RhoResult:
    st = run.st
    base = st.base
    if st.phase == 1:
        # invariant: fast = X(1 + step); slow anchors the latest power-of-two
        # index, and lam counts fast's lead over the anchor
        power = 1 << (st.step.bit_length() - 1)
        lam = st.step - power + 1
        while True:
            if st.slow == st.fast:
                # lam is the exact cycle length; rebuild fast = X(1 + lam)
                # and scan for the entry in lockstep
                f = base
                for _ in range(lam):
                    f = run.advance(f)
                st.candidate_c = lam
                st.fast = f
                st.slow = base
                st.step = 1
                st.phase = 2
                break
            if power == lam:
                st.slow = st.fast
                power <<= 1
                lam = 0
            st.fast = run.advance(st.fast)
            lam += 1
            st.step += 1
            run.bookkeeping()
    while True:
        # invariant: slow = X(step), fast = X(step + candidate_c)
        if st.slow == st.fast:
            return RhoResult(st.step, st.candidate_c)
        st.slow = run.advance(st.slow)
        st.fast = run.advance(st.fast)
        st.step += 1
        run.bookkeeping()


def find_rho(
    x: TermLike,
    algorithm: str = "brent",
    max_steps: int = 10**10,
    checkpoint_path: str | None = None,
    checkpoint_interval: int = 10**7,
    checkpoint_seconds: float = 60.0,
    resume: bool = False,
    state_hook: Callable[[SearchState], None] | None = None,
    on_start: Callable[[SearchState], None] | None = None,
) -> RhoResult:
    """Find the least (entry, cycle) of the self-application orbit of x.

    x may be a BTerm or source text. algorithm is "brent" (default) or
    "floyd". Raises CycleNotFound after max_steps advances, writing a final
    checkpoint first when checkpoint_path is set.

    With checkpoint_path, progress is saved every checkpoint_interval
    advances or checkpoint_seconds seconds, whichever comes first, and the
    file is deleted once the search finishes. With resume=True the search
    continues from checkpoint_path instead of starting over; the term must
    match and the checkpoint's algorithm wins. state_hook is called after
    every completed iteration (slow for big searches, meant for tests);
    on_start receives the live SearchState once, before the loop.
    """
    if isinstance(x, str):
        x = bt.parse(x)
    term_text = bt.format_bterm(x)
    base = canonicalize(x).runs
    if algorithm not in ("floyd", "brent"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if resume:
        if checkpoint_path is None:
            raise CheckpointIO("resume requested without a checkpoint path")
        st = load_checkpoint(checkpoint_path)
        if st.base != base:
            raise CheckpointIO(
                f"checkpoint {checkpoint_path!r} is for term {st.term_text!r}, "
                f"which does not match {term_text!r}"
            )
    else:
        st = _fresh_state(term_text, algorithm, base)
        st.advances = 1  # the fresh fast pointer cost one application
    run = _Run(st, max_steps, checkpoint_path, checkpoint_interval,
               checkpoint_seconds, state_hook)
    if on_start is not None:
        on_start(st)
    if st.algorithm == "floyd":
        result = _run_floyd(run)
    else:
        result = _run_brent(run)
    if checkpoint_path is not None:
        try:
            os.remove(checkpoint_path)
        except FileNotFoundError:
            pass
        except OSError as exc:
            raise CheckpointIO(f"cannot remove checkpoint {checkpoint_path!r}: {exc}") from exc
    return result


def iterate(x: TermLike, count: int) -> Iterator[DegreeSeq]:
    """Yield canonical forms of X(1) .. X(count)."""
    if count < 1:
        return
    if isinstance(x, str):
        x = bt.parse(x)
    cur = canonicalize(x).runs
    rbase = raise_runs(cur)
    yield DegreeSeq(cur)
    for _ in range(count - 1):
        cur = apply_runs(cur, rbase)
        yield DegreeSeq(cur)
