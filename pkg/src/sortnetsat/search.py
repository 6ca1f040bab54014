"""Search orchestration: solve tasks, cache results, aggregate optimality claims.

A claim is only marked proven when every required instance returned a real
answer; any UNKNOWN (timeout) downgrades it to an unproven bound, never to
evidence.  With a prefix set, SAT means "some prefix extends", UNSAT means
"every prefix refuses" -- which is a proof because the set is complete.
"""

from __future__ import annotations

import hashlib
import json
import threading
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from sortnetsat.encoding import EncodeOptions, build_instance
from sortnetsat.networks import Network, is_sorting_network
from sortnetsat.solving import SAT, UNKNOWN, UNSAT, SolveOutcome, SolverConfig, decode_network, solve
from sortnetsat.words import Sentence, format_sentence, generate_prefixes, parse_sentence


@dataclass(frozen=True)
class SearchTask:
    n: int
    d: int
    s: int
    prefix: Sentence | None = None
    options: EncodeOptions = field(default_factory=EncodeOptions)
    config: SolverConfig = field(default_factory=SolverConfig)

    def effective_options(self) -> EncodeOptions:
        if self.prefix is None:
            return self.options
        return self.options.with_prefix(self.prefix)

    def key(self) -> str:
        opts = self.effective_options().key()
        raw = f"n={self.n},d={self.d},s={self.s},{opts}"
        return hashlib.sha256(raw.encode()).hexdigest()[:16]


@dataclass
class SearchResult:
    n: int
    d: int
    s: int
    prefix: Sentence | None
    options_key: str
    status: str
    network: Network | None
    wall_time: float
    solver: str = ""

    def record(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "s": self.s,
            "prefix": format_sentence(self.prefix) if self.prefix else None,
            "options": self.options_key,
            "status": self.status,
            "network": json.loads(self.network.to_json()) if self.network else None,
            "wall_time": round(self.wall_time, 4),
            "solver": self.solver,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SearchResult":
        net = None
        if rec.get("network"):
            net = Network.make(rec["network"]["n"], rec["network"]["layers"])
        prefix = parse_sentence(rec["prefix"]) if rec.get("prefix") else None
        return cls(
            rec["n"], rec["d"], rec["s"], prefix, rec["options"], rec["status"],
            net, rec.get("wall_time", 0.0), rec.get("solver", ""),
        )


class ResultCatalog:
    """Append-only JSON-lines store keyed by (n, d, s, prefix, options)."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._index: dict[tuple, SearchResult] = {}
        self._lock = threading.Lock()
        if self.path.exists():
            for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
                if not line.strip():
                    continue
                try:
                    res = SearchResult.from_record(json.loads(line))
                except (json.JSONDecodeError, KeyError, ValueError) as exc:
                    warnings.warn(f"{self.path}:{lineno}: skipping corrupt record ({exc})")
                    continue
                self._index[self._key(res)] = res

    @staticmethod
    def _key(res: SearchResult) -> tuple:
        return (res.n, res.d, res.s, res.prefix, res.options_key)

    def get(self, task: SearchTask) -> SearchResult | None:
        key = (task.n, task.d, task.s, task.prefix, task.effective_options().key())
        return self._index.get(key)

    def put(self, res: SearchResult) -> None:
        with self._lock:  # one writer at a time; workers share the catalog
            self._index[self._key(res)] = res
            with self.path.open("a") as fh:
                fh.write(json.dumps(res.record()) + "\n")


def run_task(
    task: SearchTask,
    catalog: ResultCatalog | None = None,
    solve_fn: Callable[..., SolveOutcome] = solve,
) -> SearchResult:
    """Solve one (n, d, s, prefix) instance, reusing catalog answers.

    Cached UNKNOWNs are re-solved, never reused; SAT witnesses are re-verified
    before being trusted.
    """
    opts_key = task.effective_options().key()
    if catalog is not None:
        hit = catalog.get(task)
        if hit is not None and hit.status in (SAT, UNSAT):
            if hit.status == SAT and (
                hit.network is None or not is_sorting_network(hit.network)
            ):
                warnings.warn("catalog SAT record failed re-verification; re-solving")
            else:
                return hit
    formula, vm = build_instance(task.n, task.d, task.s, task.effective_options())
    outcome = solve_fn(formula, task.config)
    network = None
    if outcome.status == SAT:
        network = decode_network(outcome.model, vm)
        if not is_sorting_network(network):
            raise RuntimeError(
                f"decoded witness for (n={task.n}, d={task.d}, s={task.s}) does not sort"
            )
        if network.size > task.s or network.depth > task.d:
            raise RuntimeError("decoded witness violates its size/depth bounds")
    result = SearchResult(
        task.n, task.d, task.s, task.prefix, opts_key,
        outcome.status, network, outcome.wall_time, outcome.solver,
    )
    if catalog is not None:
        catalog.put(result)
    return result


@dataclass
class LevelOutcome:
    """All per-prefix results for one (d, s) level."""

    d: int
    s: int
    results: list[SearchResult]

    @property
    def status(self) -> str:
        statuses = {r.status for r in self.results}
        if SAT in statuses:
            return SAT
        if statuses == {UNSAT}:
            return UNSAT
        return UNKNOWN

    def witnesses(self) -> list[SearchResult]:
        return [r for r in self.results if r.status == SAT]


@dataclass
class OptimalityClaim:
    n: int
    mode: str
    parameter: int | None
    value: int | None
    proven: bool
    witnesses: list[Network] = field(default_factory=list)
    witness_prefixes: list[Sentence | None] = field(default_factory=list)
    evidence: list[SearchResult] = field(default_factory=list)
    note: str = ""

    def summary(self) -> str:
        status = "proven" if self.proven else "bound not proven"
        return (
            f"n={self.n} {self.mode}"
            + (f"({self.parameter})" if self.parameter is not None else "")
            + f" = {self.value} [{status}]"
        )


def _solve_level(
    n: int,
    d: int,
    s: int,
    prefixes: list[Sentence] | None,
    options: EncodeOptions,
    config: SolverConfig,
    catalog: ResultCatalog | None,
    solve_fn: Callable[..., SolveOutcome],
    jobs: int = 1,
    stop_on_sat: bool = True,
) -> LevelOutcome:
    tasks = [
        SearchTask(n, d, s, prefix, options, config)
        for prefix in (prefixes if prefixes is not None else [None])
    ]
    results: list[SearchResult] = []
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: run_task(t, catalog, solve_fn), tasks))
    else:
        for t in tasks:
            res = run_task(t, catalog, solve_fn)
            results.append(res)
            if stop_on_sat and res.status == SAT:
                break
    return LevelOutcome(d, s, results)


def _prefix_pool(n: int, prefixes: str) -> list[Sentence] | None:
    if prefixes == "none":
        return None
    if prefixes == "tprime" or (prefixes == "auto" and n >= 11):
        return list(generate_prefixes(n, "T'").sentences)
    return None


def max_size(n: int, d: int) -> int:
    return d * (n // 2)


def optimize(
    n: int,
    mode: str,
    depth: int | None = None,
    size: int | None = None,
    config: SolverConfig | None = None,
    options: EncodeOptions | None = None,
    prefixes: str = "auto",
    catalog: ResultCatalog | None = None,
    solve_fn: Callable[..., SolveOutcome] = solve,
    jobs: int = 1,
) -> OptimalityClaim:
    """Prove joint size/depth optima.

    * ``min_size_given_depth``: smallest s admitting a depth-``depth`` sorting
      network, descending from the first witness, UNSAT at s-1 required.
    * ``min_depth_given_size``: smallest d admitting one with at most ``size``
      comparators, ascending.
    * ``pareto``: the (d, s) frontier starting at the minimal feasible depth.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    config = config or SolverConfig()
    options = options or EncodeOptions()
    pool = _prefix_pool(n, prefixes)

    def level(d: int, s: int, stop_on_sat: bool = True) -> LevelOutcome:
        return _solve_level(
            n, d, s, pool, options, config, catalog, solve_fn, jobs, stop_on_sat
        )

    if mode == "min_size_given_depth":
        if depth is None:
            raise ValueError("min_size_given_depth needs depth=")
        return _min_size_at_depth(n, depth, level)
    if mode == "min_depth_given_size":
        if size is None:
            raise ValueError("min_depth_given_size needs size=")
        return _min_depth_at_size(n, size, level)
    if mode == "pareto":
        return _pareto(n, level)
    raise ValueError(f"unknown mode {mode!r}")


def _min_size_at_depth(n: int, d: int, level) -> OptimalityClaim:
    claim = OptimalityClaim(n, "min_size_given_depth", d, None, False)
    s = max_size(n, d)
    best: LevelOutcome | None = None
    while s >= 1:
        out = level(d, s)
        claim.evidence.extend(out.results)
        if out.status == SAT:
            best = out
            smallest = min(r.network.size for r in out.witnesses())
            s = min(s - 1, smallest - 1)
        elif out.status == UNSAT:
            if best is None:
                claim.note = f"no sorting network of depth {d} with any size"
                claim.proven = True
                return claim
            break
        else:
            claim.note = f"UNKNOWN at s={s}; bound not proven"
            if best is not None:
                claim.value = min(r.network.size for r in best.witnesses())
            return claim
    if best is not None:
        # rerun the optimal level without short-circuiting so every witness
        # prefix is identified
        final = level(best.d, best.s, stop_on_sat=False)
        claim.evidence.extend(final.results)
        claim.value = min(r.network.size for r in final.witnesses())
        claim.witnesses = [r.network for r in final.witnesses()]
        claim.witness_prefixes = [r.prefix for r in final.witnesses()]
        claim.proven = True
    return claim


def _min_depth_at_size(n: int, s: int, level) -> OptimalityClaim:
    claim = OptimalityClaim(n, "min_depth_given_size", s, None, False)
    proven_below = True
    for d in range(1, 2 * n + 1):
        out = level(d, min(s, max_size(n, d)) if max_size(n, d) >= 1 else s)
        claim.evidence.extend(out.results)
        if out.status == SAT:
            claim.value = d
            claim.witnesses = [r.network for r in out.witnesses()]
            claim.witness_prefixes = [r.prefix for r in out.witnesses()]
            claim.proven = proven_below
            return claim
        if out.status == UNKNOWN:
            proven_below = False
            claim.note = f"UNKNOWN at d={d}"
    claim.note = claim.note or f"no network with {s} comparators up to depth {2 * n}"
    return claim


def _pareto(n: int, level) -> OptimalityClaim:
    claim = OptimalityClaim(n, "pareto", None, None, True)
    frontier: list[tuple[int, int]] = []
    d = 1
    while d <= 2 * n:
        cap = max_size(n, d)
        out = level(d, max(cap, 1))
        claim.evidence.extend(out.results)
        if out.status == SAT:
            break
        if out.status == UNKNOWN:
            claim.proven = False
            claim.note = f"UNKNOWN probing depth {d}"
            return claim
        d += 1
    prev_size: int | None = None
    while d <= 2 * n:
        sub = _min_size_at_depth(n, d, level)
        claim.evidence.extend(sub.evidence)
        if not sub.proven or sub.value is None:
            claim.proven = False
            claim.note = sub.note or f"depth {d} size search not proven"
            return claim
        if prev_size is None or sub.value < prev_size:
            frontier.append((d, sub.value))
            claim.witnesses.extend(sub.witnesses)
            prev_size = sub.value
        else:
            break  # extra depth stopped helping: frontier closed
        d += 1
    claim.note = "frontier " + ", ".join(f"(d={a}, s={b})" for a, b in frontier)
    claim.value = frontier[-1][1] if frontier else None
    claim.parameter = frontier[0][0] if frontier else None
    return claim
