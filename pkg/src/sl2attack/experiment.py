"""Experiment harness: batches of preimage trials with length statistics.

Each trial draws its own prime and target matrix from a per-trial seed
(base seed XOR global trial index), runs the preimage attack, verifies the
word, and records length / (ln p)^2.  A per-trial wall-clock budget is
enforced by running trials in forked worker processes; timeouts count as
failures.  Everything except runtime_ms is byte-deterministic under a
fixed seed.
"""

from __future__ import annotations

import csv
import json
import math
import multiprocessing
import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .algebra import evaluate_word
from .errors import RetryExhausted
from .number_theory import random_prime
from .preimage import preimage_word, random_sl2

CSV_COLUMNS = ("bits", "p", "seed", "success", "word_length", "normalized_length", "runtime_ms")


@dataclass(frozen=True, slots=True)
class TrialRecord:
    """Outcome of one preimage trial."""

    bits: int
    p: int
    seed: int
    success: bool
    word_length: int
    normalized_length: float
    runtime_ms: int


@dataclass(frozen=True, slots=True)
class ExperimentSummary:
    """Per-bit-size aggregate; length statistics cover successful trials."""

    bits: int
    trials: int
    successes: int
    avg_normalized_length: float
    min_normalized_length: float
    max_normalized_length: float
    avg_runtime_ms: float


def _round6(x: float) -> float:
    return float(f"{x:.6g}")


def run_trial(bits: int, seed: int, alphabet: str = "positive") -> TrialRecord:
    """One seeded trial: fresh prime, fresh uniform target, attack, verify."""
    rng = random.Random(seed)
    p = random_prime(bits, rng)
    target = random_sl2(p, rng)
    start = time.perf_counter()
    try:
        word = preimage_word(target, rng, alphabet)
        success = evaluate_word(word, p) == target
        length = word.length if success else 0
    except RetryExhausted:
        success, length = False, 0
    runtime_ms = round((time.perf_counter() - start) * 1000)
    normalized = _round6(length / math.log(p) ** 2)
    return TrialRecord(bits, p, seed, success, length, normalized, runtime_ms)


def _trial_worker(conn, bits: int, seed: int, alphabet: str) -> None:
    conn.send(run_trial(bits, seed, alphabet))
    conn.close()


def run_trial_with_timeout(
    bits: int, seed: int, timeout_secs: float | None, alphabet: str = "positive"
) -> TrialRecord:
    """run_trial inside a forked worker, killed after timeout_secs (None or 0
    disables enforcement and runs in-process)."""
    if not timeout_secs:
        return run_trial(bits, seed, alphabet)
    ctx = multiprocessing.get_context("fork")
    parent_conn, child_conn = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_trial_worker, args=(child_conn, bits, seed, alphabet))
    proc.start()
    child_conn.close()
    record: TrialRecord | None = None
    if parent_conn.poll(timeout_secs):
        try:
            record = parent_conn.recv()
        except EOFError:
            record = None
    if record is not None:
        proc.join()
        parent_conn.close()
        return record
    proc.terminate()
    proc.join()
    parent_conn.close()
    # Recompute the (deterministic) prime so the record stays meaningful.
    p = random_prime(bits, random.Random(seed))
    return TrialRecord(bits, p, seed, False, 0, 0.0, round(timeout_secs * 1000))


def summarize(bits: int, records: Sequence[TrialRecord]) -> ExperimentSummary:
    lengths = [r.normalized_length for r in records if r.success]
    return ExperimentSummary(
        bits=bits,
        trials=len(records),
        successes=len(lengths),
        avg_normalized_length=_round6(sum(lengths) / len(lengths)) if lengths else 0.0,
        min_normalized_length=min(lengths) if lengths else 0.0,
        max_normalized_length=max(lengths) if lengths else 0.0,
        avg_runtime_ms=_round6(sum(r.runtime_ms for r in records) / len(records)) if records else 0.0,
    )


def run_experiment(
    bits_list: Sequence[int],
    trials: int,
    seed: int | None,
    timeout_secs: float | None = 60.0,
    alphabet: str = "positive",
) -> tuple[list[TrialRecord], list[ExperimentSummary]]:
    """One batch per bit size; per-trial seeds are seed XOR global index."""
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    if seed is None:
        seed = random.SystemRandom().randrange(1 << 63)
    records: list[TrialRecord] = []
    index = 0
    for bits in bits_list:
        for _ in range(trials):
            records.append(run_trial_with_timeout(bits, seed ^ index, timeout_secs, alphabet))
            index += 1
    summaries = [summarize(bits, [r for r in records if r.bits == bits]) for bits in bits_list]
    return records, summaries


def write_csv(records: Iterable[TrialRecord], out: TextIO) -> None:
    """Fixed-schema CSV with a mandatory header row."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [r.bits, r.p, r.seed, "true" if r.success else "false",
             r.word_length, f"{r.normalized_length:.6g}", r.runtime_ms]
        )


def write_json(records: Sequence[TrialRecord], summaries: Sequence[ExperimentSummary], out: TextIO) -> None:
    payload = {
        "records": [
            {
                "bits": r.bits,
                "p": r.p,
                "seed": r.seed,
                "success": r.success,
                "word_length": r.word_length,
                "normalized_length": r.normalized_length,
                "runtime_ms": r.runtime_ms,
            }
            for r in records
        ],
        "summary": [
            {
                "bits": s.bits,
                "trials": s.trials,
                "successes": s.successes,
                "avg_normalized_length": s.avg_normalized_length,
                "min_normalized_length": s.min_normalized_length,
                "max_normalized_length": s.max_normalized_length,
                "avg_runtime_ms": s.avg_runtime_ms,
            }
            for s in summaries
        ],
    }
    json.dump(payload, out, indent=2)
    out.write("\n")


def format_summary_table(summaries: Sequence[ExperimentSummary]) -> str:
    lines = [
        f"{'bits':>6} {'trials':>7} {'success':>8} {'avg len/(ln p)^2':>17} "
        f"{'min':>10} {'max':>12} {'avg ms':>10}"
    ]
    for s in summaries:
        lines.append(
            f"{s.bits:>6} {s.trials:>7} {s.successes:>8} {s.avg_normalized_length:>17.6g} "
            f"{s.min_normalized_length:>10.6g} {s.max_normalized_length:>12.6g} {s.avg_runtime_ms:>10.6g}"
        )
    return "\n".join(lines)
