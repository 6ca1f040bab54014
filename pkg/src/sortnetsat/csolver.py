"""Build helper for the bundled CDCL solver.

The C source ships with the package and is compiled once into a cache
directory; the resulting binary speaks the same DIMACS-file / competition
output protocol as any mainstream solver, so it plugs into the external
backend unchanged.
"""

from __future__ import annotations

import hashlib
import os
import shutil
import subprocess
from pathlib import Path

_SOURCE = Path(__file__).parent / "csolver" / "minicdcl.c"


def cache_dir() -> Path:
    root = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache"
    )
    return Path(root) / "sortnetsat"


def ensure_built(quiet: bool = False) -> str | None:
    """Compile the bundled solver if needed; returns the binary path, or None
    when no C compiler is available."""
    cc = shutil.which("cc") or shutil.which("gcc") or shutil.which("clang")
    if cc is None or not _SOURCE.exists():
        if not quiet:
            raise RuntimeError("no C compiler found; set SORTNETSAT_SOLVER instead")
        return None
    tag = hashlib.sha256(_SOURCE.read_bytes()).hexdigest()[:16]
    out = cache_dir() / f"minicdcl-{tag}"
    if out.exists():
        return str(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = out.with_suffix(".tmp")
    cmd = [cc, "-O2", "-std=c99", "-o", str(tmp), str(_SOURCE), "-lm"]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        if not quiet:
            raise RuntimeError(f"solver build failed:\n{proc.stderr}")
        return None
    tmp.replace(out)
    return str(out)
