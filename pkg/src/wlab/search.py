"""Segmented prime generation and checkpointed, parallel range searches.

Two search kinds:

* ``wolstenholme``: primes with C(2p-1, p-1) = 1 mod p^4, located through
  the valuation of R_1 = sum 1/k.  The scan decides v_p(R_1) >= 3 from the
  half-range sum T = sum_{k <= (p-1)/2} 1/(k(p-k)) (R_1 = p*T exactly), so
  the modulus stays at p^2; hits are re-verified at full precision and
  against the binomial product.
* ``mod_p8``: primes whose central-binomial congruence residual reaches
  exponent 8 (one above the proven level).

Scans are embarrassingly parallel over primes; a coordinator merges chunk
results in ascending order and checkpoints after each completed chunk, so
hit lists are a pure function of (kind, lo, hi).
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass

from .congruence import CheckContext, binom_central_int, check_theorem_main
from .errors import CheckpointCorrupt, InternalInconsistency, InvalidInput, TaskMismatch
from .modring import inv_int, residual_valuation

SCHEMA_VERSION = 1
KIND_MIN = {"wolstenholme": 5, "mod_p8": 7}
DEFAULT_CHUNK = 256


# ---------------------------------------------------------------------------
# prime generation
# ---------------------------------------------------------------------------

def _simple_sieve(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray(b"\x01") * (n + 1)
    flags[0:2] = b"\x00\x00"
    for q in range(2, math.isqrt(n) + 1):
        if flags[q]:
            start = q * q
            flags[start :: q] = b"\x00" * ((n - start) // q + 1)
    return [i for i, f in enumerate(flags) if f]


def primes_in(lo: int, hi: int, segment: int = 1 << 17) -> list[int]:
    """All primes in [lo, hi], inclusive, by segmented sieve."""
    if lo < 2:
        lo = 2
    if hi < lo:
        return []
    base = _simple_sieve(math.isqrt(hi))
    out: list[int] = []
    start = lo
    while start <= hi:
        end = min(start + segment - 1, hi)
        size = end - start + 1
        flags = bytearray(b"\x01") * size
        for q in base:
            first = max(q * q, (start + q - 1) // q * q)
            if first > end:
                continue
            flags[first - start :: q] = b"\x00" * ((end - first) // q + 1)
        for i, f in enumerate(flags):
            if f:
                out.append(start + i)
        start = end + 1
    return out


def _half_sum_parts(p: int, m: int) -> tuple[int, int]:
    """Running numerator/denominator of T = sum 1/(k(p-k)), k=1..(p-1)/2, mod m.

    R_1(p) = p*T exactly, and the denominator is a unit mod p, so
    divisibility of T by powers of p can be read off the numerator alone.
    """
    num, den = 0, 1
    for k in range(1, (p - 1) // 2 + 1):
        a = k * (p - k)
        num = (num * a + den) % m
        den = den * a % m
    return num, den


def _half_sum(p: int, m: int) -> int:
    num, den = _half_sum_parts(p, m)
    return num * inv_int(den, m) % m


# ---------------------------------------------------------------------------
# indicators
# ---------------------------------------------------------------------------

def wolstenholme_indicator(p: int) -> int:
    """v_p(R_1(p)) seen in Z/p^4, saturated at 4; a hit means >= 3."""
    if p < 5:
        raise InvalidInput("requires p >= 5")
    t = _half_sum(p, p**3)
    return 1 + residual_valuation(t, p, 3)


def mod_p8_indicator(p: int) -> int:
    """Residual valuation of the central congruence at exponent 8, in Z/p^9."""
    if p < 7:
        raise InvalidInput("requires p >= 7")
    report = check_theorem_main(p, 8, CheckContext(p, 9))
    return report.residual_valuation


# ---------------------------------------------------------------------------
# tasks, hits, checkpoints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchTask:
    kind: str
    lo: int
    hi: int
    chunk: int = DEFAULT_CHUNK
    checkpoint_path: str | None = None

    def __post_init__(self):
        if self.kind not in KIND_MIN:
            raise InvalidInput(f"unknown search kind {self.kind!r}")
        if not 5 <= self.lo < self.hi:
            raise InvalidInput(f"need 5 <= lo < hi, got [{self.lo}, {self.hi}]")
        if self.chunk < 1:
            raise InvalidInput("chunk must be >= 1")


@dataclass(frozen=True)
class SearchHit:
    p: int
    kind: str
    witness: dict

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "witness": self.witness}


@dataclass
class Checkpoint:
    kind: str
    lo: int
    hi: int
    last_completed_prime: int
    hits: list[dict]
    updated_at: str
    schema_version: int = SCHEMA_VERSION


_CHECKPOINT_FIELDS = {
    "schema_version": int,
    "kind": str,
    "lo": int,
    "hi": int,
    "last_completed_prime": int,
    "hits": list,
    "updated_at": str,
}


def save_checkpoint(path: str, cp: Checkpoint) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    payload = {
        "schema_version": cp.schema_version,
        "kind": cp.kind,
        "lo": cp.lo,
        "hi": cp.hi,
        "last_completed_prime": cp.last_completed_prime,
        "hits": cp.hits,
        "updated_at": cp.updated_at,
    }
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ckpt-", dir=directory)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=1)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str) -> Checkpoint:
    if not os.path.exists(path):
        raise CheckpointCorrupt(f"checkpoint {path} does not exist")
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointCorrupt(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise CheckpointCorrupt("checkpoint root must be an object")
    for key, typ in _CHECKPOINT_FIELDS.items():
        if key not in raw:
            raise CheckpointCorrupt(f"checkpoint missing field {key!r}")
        if not isinstance(raw[key], typ):
            raise CheckpointCorrupt(f"checkpoint field {key!r} has wrong type")
    if raw["schema_version"] != SCHEMA_VERSION:
        raise CheckpointCorrupt(f"unsupported schema_version {raw['schema_version']}")
    if raw["kind"] not in KIND_MIN:
        raise CheckpointCorrupt(f"unknown kind {raw['kind']!r}")
    for h in raw["hits"]:
        if not isinstance(h, dict) or "p" not in h or "witness" not in h:
            raise CheckpointCorrupt("malformed hit entry")
    return Checkpoint(
        kind=raw["kind"],
        lo=raw["lo"],
        hi=raw["hi"],
        last_completed_prime=raw["last_completed_prime"],
        hits=raw["hits"],
        updated_at=raw["updated_at"],
    )


# ---------------------------------------------------------------------------
# scanning
# ---------------------------------------------------------------------------

def _scan_chunk(kind: str, primes: list[int]) -> list[dict]:
    """Evaluate the indicator over a chunk; returns hit dicts only."""
    out: list[dict] = []
    if kind == "wolstenholme":
        for p in primes:
            if _half_sum_parts(p, p * p)[0] == 0:
                v = wolstenholme_indicator(p)
                u = residual_valuation(binom_central_int(p, p**5) - 1, p, 5)
                if v < 3 or u < 4:
                    raise InternalInconsistency(
                        f"filter hit at p={p} but indicator v={v}, binomial u={u}"
                    )
                out.append({"p": p, "witness": {"r1_valuation": v, "binom_residual_valuation": u}})
    else:
        for p in primes:
            v = mod_p8_indicator(p)
            if p >= 11 and v < 7:
                raise InternalInconsistency(f"residual below proven floor at p={p}: {v}")
            if v >= 8:
                out.append({"p": p, "witness": {"residual_valuation": v}})
    return out


def _flush(task: SearchTask, last_prime: int, hits: list[SearchHit]) -> None:
    if task.checkpoint_path is None:
        return
    cp = Checkpoint(
        kind=task.kind,
        lo=task.lo,
        hi=task.hi,
        last_completed_prime=last_prime,
        hits=[{"p": h.p, "witness": h.witness} for h in hits],
        updated_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    )
    save_checkpoint(task.checkpoint_path, cp)


def run_search(task: SearchTask, workers: int = 1, progress=None, on_hit=None) -> list[SearchHit]:
    """Scan the task range; deterministic ascending hit list.

    Work is partitioned into chunks of ``task.chunk`` primes; with
    ``workers > 1`` chunks run in separate processes, but results are merged
    in range order so output never depends on scheduling.  A checkpoint (if
    configured) is rewritten after each completed chunk and flushed once
    more on KeyboardInterrupt.  ``on_hit`` is called once per hit, in
    ascending order, as soon as the hit's chunk is merged.
    """
    return _execute(task, workers, progress, on_hit, resume_from=None)


def resume(checkpoint_path: str, task: SearchTask | None = None, workers: int = 1,
           progress=None, on_hit=None) -> list[SearchHit]:
    """Continue a checkpointed search to completion.

    If ``task`` is given its (kind, lo, hi) must match the checkpoint.
    A checkpoint that already covers the range returns its stored hits.
    ``on_hit`` also fires for hits carried over from the checkpoint.
    """
    cp = load_checkpoint(checkpoint_path)
    if task is not None:
        if (task.kind, task.lo, task.hi) != (cp.kind, cp.lo, cp.hi):
            raise TaskMismatch(
                f"checkpoint is for {cp.kind} [{cp.lo}, {cp.hi}], "
                f"requested {task.kind} [{task.lo}, {task.hi}]"
            )
        merged = SearchTask(cp.kind, cp.lo, cp.hi, task.chunk, checkpoint_path)
    else:
        merged = SearchTask(cp.kind, cp.lo, cp.hi, DEFAULT_CHUNK, checkpoint_path)
    return _execute(merged, workers, progress, on_hit, resume_from=cp)


def _execute(task: SearchTask, workers: int, progress, on_hit,
             resume_from: Checkpoint | None) -> list[SearchHit]:
    if workers < 1:
        raise InvalidInput("workers must be >= 1")
    lo = max(task.lo, KIND_MIN[task.kind])
    primes = primes_in(lo, task.hi)
    hits: list[SearchHit] = []
    base_last = lo - 1  # floor for interrupt flushes; never regress a resume

    def absorb(found: list[SearchHit]) -> None:
        hits.extend(found)
        if on_hit is not None:
            for h in found:
                on_hit(h)

    if resume_from is not None:
        absorb([SearchHit(p=h["p"], kind=task.kind, witness=h["witness"]) for h in resume_from.hits])
        primes = [q for q in primes if q > resume_from.last_completed_prime]
        base_last = resume_from.last_completed_prime
        if not primes:
            return hits
    chunks = [primes[i : i + task.chunk] for i in range(0, len(primes), task.chunk)]
    total = len(chunks)
    done = 0

    def record(chunk_idx: int, found: list[dict]) -> None:
        nonlocal done
        absorb([SearchHit(p=h["p"], kind=task.kind, witness=h["witness"]) for h in found])
        done += 1
        last = chunks[chunk_idx][-1] if done < total else task.hi
        _flush(task, last, hits)
        if progress is not None:
            progress(done, total, last)

    if not chunks:
        _flush(task, task.hi, hits)
        return hits

    if workers == 1:
        try:
            for idx, chunk in enumerate(chunks):
                record(idx, _scan_chunk(task.kind, chunk))
        except KeyboardInterrupt:
            _flush(task, chunks[done - 1][-1] if done else base_last, hits)
            raise
        return hits

    pending: dict = {}
    buffered: dict[int, list[dict]] = {}
    next_idx = 0
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        for idx, chunk in enumerate(chunks):
            fut = pool.submit(_scan_chunk, task.kind, chunk)
            pending[fut] = idx
        while pending:
            ready, _ = wait(list(pending), return_when=FIRST_COMPLETED)
            for fut in ready:
                buffered[pending.pop(fut)] = fut.result()
            while next_idx in buffered:
                record(next_idx, buffered.pop(next_idx))
                next_idx += 1
        pool.shutdown(wait=True)
    except BaseException:
        _flush(task, chunks[next_idx - 1][-1] if next_idx else base_last, hits)
        pool.shutdown(wait=False, cancel_futures=True)
        raise
    return hits
