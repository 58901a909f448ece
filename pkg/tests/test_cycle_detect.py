"""Cycle detection on canonical forms: values, checkpointing, resume."""

import os

import pytest

from bluebird import bterm as bt
from bluebird.cycle_detect import (
    RhoResult,
    SearchState,
    find_rho,
    iterate,
    load_checkpoint,
    save_checkpoint,
)
from bluebird.errors import CheckpointIO, CycleNotFound, FormatVersionMismatch

from .support import brute_rho


class Kill(Exception):
    """Stands in for a process being shot mid-run."""


def killing_hook(after):
    calls = {"n": 0}
    def hook(state):
        calls["n"] += 1
        if calls["n"] >= after:
            raise Kill
    return hook


COMPOSITION_POWERS = {
    "B": (6, 4),
    "B^1 B": (32, 20),
    "B^2 B": (258, 36),
    "B^3 B": (4240, 5796),
}


@pytest.mark.parametrize("algorithm", ["brent", "floyd"])
def test_composition_power_values(algorithm):
    for text, want in COMPOSITION_POWERS.items():
        assert tuple(find_rho(text, algorithm=algorithm)) == want


def test_values_are_minimal():
    # the pointer algorithms must return the first repeat, not just some repeat
    for text in ("B", "B^1 B", "B^2 B"):
        want = brute_rho(bt.parse(text), limit=400)
        assert tuple(find_rho(text)) == want
        assert tuple(find_rho(text, algorithm="floyd")) == want


def test_rho_result_unpacks():
    entry, cycle = find_rho("B")
    assert (entry, cycle) == (6, 4)
    assert find_rho("B") == RhoResult(6, 4)


def test_iterate_golden_prefix():
    got = [s.text() for s in iterate("B", 6)]
    assert got == ["[0]", "[1]", "[0,0]", "[2]", "[1,0]", "[2,0]"]


def test_iterate_matches_flat_powers():
    from bluebird.canonical import canonicalize
    got = list(iterate("B^1 B", 10))
    want = [canonicalize(bt.flat(bt.parse("B^1 B"), k)) for k in range(1, 11)]
    assert got == want


def test_iterate_empty_for_nonpositive_count():
    assert list(iterate("B", 0)) == []
    assert list(iterate("B", -3)) == []


def test_rejects_unknown_algorithm():
    with pytest.raises(ValueError):
        find_rho("B", algorithm="gosper")


class TestCheckpointFile:
    def test_fresh_file_layout(self, tmp_path):
        path = str(tmp_path / "ck")
        hook = killing_hook(3)
        with pytest.raises(Kill):
            find_rho("B^1 B", algorithm="brent", checkpoint_path=path,
                     checkpoint_interval=1, checkpoint_seconds=0.0,
                     state_hook=hook)
        lines = open(path).read().splitlines()
        assert len(lines) == 10
        assert lines[0] == "rho-checkpoint v1"
        assert lines[1] == "term: B B"
        assert lines[2] == "engine: canonical"
        assert lines[3] == "algorithm: brent"
        assert lines[4].startswith("phase: ")
        assert lines[5].startswith("step: ")
        assert lines[6].startswith("m: ")
        assert lines[7].startswith("candidate_c: ")
        assert lines[8].startswith("slow: ")
        assert lines[9].startswith("fast: ")

    def test_save_load_roundtrip(self, tmp_path):
        path = str(tmp_path / "ck")
        hook = killing_hook(25)
        with pytest.raises(Kill):
            find_rho("B^2 B", algorithm="floyd", checkpoint_path=path,
                     checkpoint_interval=1, checkpoint_seconds=0.0,
                     state_hook=hook)
        st = load_checkpoint(path)
        path2 = str(tmp_path / "ck2")
        save_checkpoint(st, path2)
        assert open(path).read() == open(path2).read()
        assert load_checkpoint(path2) == st

    def test_load_rejects_other_version(self, tmp_path):
        path = str(tmp_path / "ck")
        path2 = str(tmp_path / "bad")
        with pytest.raises(Kill):
            find_rho("B", checkpoint_path=path, checkpoint_interval=1,
                     checkpoint_seconds=0.0, state_hook=killing_hook(2))
        lines = open(path).read().splitlines()
        lines[0] = "rho-checkpoint v99"
        with open(path2, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        with pytest.raises(FormatVersionMismatch):
            load_checkpoint(path2)

    def test_load_rejects_truncation_and_garbage(self, tmp_path):
        path = str(tmp_path / "ck")
        with pytest.raises(Kill):
            find_rho("B", checkpoint_path=path, checkpoint_interval=1,
                     checkpoint_seconds=0.0, state_hook=killing_hook(2))
        text = open(path).read()
        cut = str(tmp_path / "cut")
        with open(cut, "w") as fh:
            fh.write("\n".join(text.splitlines()[:6]))
        with pytest.raises(CheckpointIO):
            load_checkpoint(cut)
        junk = str(tmp_path / "junk")
        with open(junk, "w") as fh:
            fh.write("not a checkpoint at all\n")
        with pytest.raises(CheckpointIO):
            load_checkpoint(junk)

    def test_resume_missing_file(self, tmp_path):
        with pytest.raises(CheckpointIO):
            find_rho("B", checkpoint_path=str(tmp_path / "absent"), resume=True)

    def test_resume_rejects_other_term(self, tmp_path):
        path = str(tmp_path / "ck")
        with pytest.raises(Kill):
            find_rho("B^1 B", checkpoint_path=path, checkpoint_interval=1,
                     checkpoint_seconds=0.0, state_hook=killing_hook(5))
        with pytest.raises(CheckpointIO, match="does not match"):
            find_rho("B^2 B", checkpoint_path=path, resume=True)

    def test_resume_accepts_equivalent_spelling(self, tmp_path):
        # the stored term is compared by canonical form, not by spelling
        path = str(tmp_path / "ck")
        with pytest.raises(Kill):
            find_rho("B^1 B", checkpoint_path=path, checkpoint_interval=1,
                     checkpoint_seconds=0.0, state_hook=killing_hook(5))
        r = find_rho("B B", checkpoint_path=path, resume=True)
        assert tuple(r) == (32, 20)


class TestKillResume:
    @pytest.mark.parametrize("algorithm,after", [
        ("floyd", 1), ("floyd", 40), ("floyd", 250), ("floyd", 560),
        ("brent", 1), ("brent", 100), ("brent", 400), ("brent", 790),
    ])
    def test_kill_points_across_phases(self, tmp_path, algorithm, after):
        path = str(tmp_path / "ck")
        with pytest.raises(Kill):
            find_rho("B^2 B", algorithm=algorithm, checkpoint_path=path,
                     checkpoint_interval=1, checkpoint_seconds=0.0,
                     state_hook=killing_hook(after))
        assert os.path.exists(path)
        r = find_rho("B^2 B", checkpoint_path=path, resume=True)
        assert tuple(r) == (258, 36)
        assert not os.path.exists(path)

    def test_double_kill_then_finish(self, tmp_path):
        path = str(tmp_path / "ck")
        with pytest.raises(Kill):
            find_rho("B^2 B", algorithm="brent", checkpoint_path=path,
                     checkpoint_interval=1, checkpoint_seconds=0.0,
                     state_hook=killing_hook(50))
        with pytest.raises(Kill):
            find_rho("B^2 B", checkpoint_path=path, resume=True,
                     checkpoint_interval=1, checkpoint_seconds=0.0,
                     state_hook=killing_hook(200))
        r = find_rho("B^2 B", checkpoint_path=path, resume=True)
        assert tuple(r) == (258, 36)

    def test_budget_exhaustion_leaves_resumable_state(self, tmp_path):
        path = str(tmp_path / "ck")
        with pytest.raises(CycleNotFound):
            find_rho("B^2 B", algorithm="brent", max_steps=100,
                     checkpoint_path=path, checkpoint_seconds=0.0)
        assert os.path.exists(path)
        r = find_rho("B^2 B", checkpoint_path=path, resume=True)
        assert tuple(r) == (258, 36)

    def test_success_removes_checkpoint(self, tmp_path):
        path = str(tmp_path / "ck")
        r = find_rho("B^1 B", checkpoint_path=path, checkpoint_interval=1,
                     checkpoint_seconds=0.0)
        assert tuple(r) == (32, 20)
        assert not os.path.exists(path)
