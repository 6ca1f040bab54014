"""DIMACS emission, solver backends, and model decoding.

Two backends: ``builtin`` runs the bundled DPLL in-process; ``external`` runs
any command that reads a DIMACS file and prints SAT-competition output
(``s SATISFIABLE`` / ``s UNSATISFIABLE`` plus ``v`` model lines).  A timeout
yields UNKNOWN, which is never conflated with UNSAT; solver crashes and
unparsable output raise instead.  SAT models are re-checked against the
formula before anyone gets to see them.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from sortnetsat import dpll
from sortnetsat.encoding import CnfFormula, VarMap
from sortnetsat.networks import Network

SOLVER_ENV_VAR = "SORTNETSAT_SOLVER"

SAT, UNSAT, UNKNOWN = "SAT", "UNSAT", "UNKNOWN"


class SolverBackendError(RuntimeError):
    """The backend crashed, lied, or produced output we cannot parse."""


@dataclass(frozen=True)
class SolverConfig:
    """``backend`` is "builtin" or "external"; external needs a command
    template, e.g. ``"kissat -q {cnf}"`` ({cnf} is replaced by the file path,
    appended if missing)."""

    backend: str = "builtin"
    command: str | None = None
    timeout: float = 3600.0
    workdir: str | None = None

    def __post_init__(self) -> None:
        if self.backend not in ("builtin", "external"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == "external" and not self.command:
            raise ValueError("external backend needs a command template")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")

    @property
    def name(self) -> str:
        return self.command if self.backend == "external" else "builtin-dpll"


@dataclass
class SolveOutcome:
    status: str
    model: dict[int, bool] | None
    solver: str
    wall_time: float


def emit_dimacs(formula: CnfFormula) -> str:
    for clause in formula.clauses:
        if not clause:
            raise ValueError("empty clause in formula")
        if max(abs(l) for l in clause) > formula.num_vars:
            raise ValueError("literal beyond num_vars")
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}\n"]
    lines.extend(" ".join(map(str, clause)) + " 0\n" for clause in formula.clauses)
    return "".join(lines)


def parse_solver_output(text: str) -> tuple[str, list[int]]:
    status = None
    lits: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("s "):
            token = line[2:].strip().upper()
            if token == "SATISFIABLE":
                status = SAT
            elif token == "UNSATISFIABLE":
                status = UNSAT
            else:
                status = UNKNOWN
        elif line.startswith("v ") or line == "v":
            for tok in line[1:].split():
                val = int(tok)
                if val == 0:
                    continue
                lits.append(val)
    if status is None:
        raise SolverBackendError("no 's' status line in solver output")
    return status, lits


def check_model(formula: CnfFormula, model: dict[int, bool]) -> bool:
    return all(
        any(model.get(abs(l), False) == (l > 0) for l in clause)
        for clause in formula.clauses
    )


def _complete_model(formula: CnfFormula, lits: list[int]) -> dict[int, bool]:
    model = {v: False for v in range(1, formula.num_vars + 1)}
    for l in lits:
        if abs(l) <= formula.num_vars:
            model[abs(l)] = l > 0
    return model


def solve(formula: CnfFormula, config: SolverConfig) -> SolveOutcome:
    start = time.monotonic()
    if config.backend == "builtin":
        deadline = start + config.timeout
        status, model = dpll.solve_clauses(
            formula.num_vars, formula.clauses, deadline=deadline
        )
        wall = time.monotonic() - start
        if status == SAT and not check_model(formula, model):
            raise SolverBackendError("builtin solver returned a bad model")
        return SolveOutcome(status, model, config.name, wall)

    workdir = Path(config.workdir) if config.workdir else None
    tmp = None
    if workdir is None:
        tmp = tempfile.TemporaryDirectory(prefix="sortnetsat-")
        workdir = Path(tmp.name)
    try:
        cnf_path = workdir / "instance.cnf"
        cnf_path.write_text(emit_dimacs(formula))
        argv = [a.replace("{cnf}", str(cnf_path)) for a in shlex.split(config.command)]
        if not any("{cnf}" in a for a in shlex.split(config.command)):
            argv.append(str(cnf_path))
        try:
            proc = subprocess.run(
                argv,
                capture_output=True,
                text=True,
                timeout=config.timeout,
                cwd=workdir,
            )
        except subprocess.TimeoutExpired:
            return SolveOutcome(UNKNOWN, None, config.name, time.monotonic() - start)
        except OSError as exc:
            raise SolverBackendError(f"cannot run solver {argv[0]!r}: {exc}") from exc
        try:
            status, lits = parse_solver_output(proc.stdout)
        except SolverBackendError as exc:
            raise SolverBackendError(
                f"{exc} (exit code {proc.returncode}, stderr: {proc.stderr[:500]!r})"
            ) from None
        model = None
        if status == SAT:
            model = _complete_model(formula, lits)
            if not check_model(formula, model):
                raise SolverBackendError(f"model from {config.name!r} does not satisfy the formula")
        return SolveOutcome(status, model, config.name, time.monotonic() - start)
    finally:
        if tmp is not None:
            tmp.cleanup()


def decode_network(model: dict[int, bool], vm: VarMap) -> Network:
    """Network picked out by the g variables; trailing empty layers are kept,
    so the depth equals the encoded d."""
    layers = []
    for k in range(1, vm.d + 1):
        layers.append(
            [
                (i, j)
                for i in range(1, vm.n + 1)
                for j in range(i + 1, vm.n + 1)
                if model[vm.g(k, i, j)]
            ]
        )
    try:
        return Network.make(vm.n, layers)
    except ValueError as exc:
        raise SolverBackendError(f"model decodes to an invalid network: {exc}") from exc


def default_config(timeout: float = 3600.0, workdir: str | None = None) -> SolverConfig:
    """External solver from $SORTNETSAT_SOLVER, else the bundled CDCL solver
    (compiled on first use), else the builtin DPLL."""
    env = os.environ.get(SOLVER_ENV_VAR)
    if env:
        return SolverConfig("external", env, timeout, workdir)
    from sortnetsat import csolver

    binary = csolver.ensure_built(quiet=True)
    if binary:
        return SolverConfig("external", f"{binary} {{cnf}}", timeout, workdir)
    return SolverConfig("builtin", None, timeout, workdir)
