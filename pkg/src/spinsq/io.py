"""Text formats for density matrices and measured collective moments.

State file::

    DMAT 4
    0.5,0 0,0 0,0 0.5,0
    ...

one row per line, entries ``<re>,<im>`` separated by whitespace.

Moments file::

    # comment
    N = 4
    Jx = 0
    ...

Keys ``N, Jx, Jy, Jz, Kxx, Kyy, Kzz`` are required; ``Cxy, Cxz, Cyz`` are
optional but must appear together.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .spin import CollectiveMoments, STATE_TOL

REQUIRED_KEYS = ("N", "Jx", "Jy", "Jz", "Kxx", "Kyy", "Kzz")
OPTIONAL_KEYS = ("Cxy", "Cxz", "Cyz")


class InputFileError(ValueError):
    """Malformed state or moments file; ``line`` is 1-based or ``None``."""

    def __init__(self, path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


def _parse_complex(token: str) -> complex:
    re_s, sep, im_s = token.partition(",")
    if not sep:
        raise ValueError(f"entry {token!r} is not of the form <re>,<im>")
    z = complex(float(re_s), float(im_s))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"entry {token!r} is not finite")
    return z


def read_state_file(path, tol: float = STATE_TOL) -> np.ndarray:
    """Parse and validate a ``DMAT`` file (hermiticity, trace, positivity within ``tol``)."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise InputFileError(path, 1, "empty file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "DMAT":
        raise InputFileError(path, 1, "expected header 'DMAT <d>'")
    try:
        d = int(head[1])
    except ValueError:
        raise InputFileError(path, 1, f"bad dimension {head[1]!r}") from None
    if d < 2 or d & (d - 1):
        raise InputFileError(path, 1, f"dimension {d} is not a power of two >= 2")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if len(rows) == d:
            raise InputFileError(path, lineno, f"more than {d} rows")
        tokens = line.split()
        if len(tokens) != d:
            raise InputFileError(path, lineno, f"expected {d} entries, found {len(tokens)}")
        try:
            rows.append([_parse_complex(t) for t in tokens])
        except ValueError as e:
            raise InputFileError(path, lineno, str(e)) from None
    if len(rows) != d:
        raise InputFileError(path, len(lines) + 1, f"expected {d} rows, found {len(rows)}")
    rho = np.array(rows, dtype=complex)
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InputFileError(path, None, "matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1) > tol:
        raise InputFileError(path, None, f"trace is {tr:.12g}, expected 1")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise InputFileError(path, None, "matrix is not positive semidefinite")
    return rho


def format_state(rho) -> str:
    rho = np.asarray(rho, dtype=complex)
    lines = [f"DMAT {rho.shape[0]}"]
    for row in rho:
        lines.append(" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row))
    return "\n".join(lines) + "\n"


def write_state_file(path, rho) -> None:
    Path(path).write_text(format_state(rho))


def read_moments_file(path) -> CollectiveMoments:
    values: dict[str, float] = {}
    lines = Path(path).read_text().splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep:
            raise InputFileError(path, lineno, "expected 'key = value'")
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise InputFileError(path, lineno, f"unknown key {key!r}")
        if key in values:
            raise InputFileError(path, lineno, f"duplicate key {key!r}")
        try:
            values[key] = float(value)
        except ValueError:
            raise InputFileError(path, lineno, f"bad number {value!r}") from None
        if not math.isfinite(values[key]):
            raise InputFileError(path, lineno, f"{key} is not finite")
    missing = [k for k in REQUIRED_KEYS if k not in values]
    if missing:
        raise InputFileError(path, None, f"missing keys: {', '.join(missing)}")
    present = [k for k in OPTIONAL_KEYS if k in values]
    if present and len(present) != 3:
        raise InputFileError(path, None, "Cxy, Cxz, Cyz must be given together")
    n = values["N"]
    if n != int(n) or n < 1:
        raise InputFileError(path, None, f"N must be a positive integer, got {n:g}")
    n = int(n)
    k_vec = [values["Kxx"], values["Kyy"], values["Kzz"]]
    for name, k in zip(("Kxx", "Kyy", "Kzz"), k_vec):
        if k < -STATE_TOL or k > n * n / 4 + STATE_TOL:
            raise InputFileError(path, None, f"{name} = {k:g} outside [0, N^2/4]")
    j_vec = [values["Jx"], values["Jy"], values["Jz"]]
    for name, j, k in zip(("Jx", "Jy", "Jz"), j_vec, k_vec):
        if j * j > k + STATE_TOL:
            raise InputFileError(path, None, f"{name}^2 exceeds the second moment (negative variance)")
    offdiag = [values[k] for k in OPTIONAL_KEYS] if present else None
    return CollectiveMoments.from_jk(n, j_vec, k_vec, offdiag)


def format_moments(m: CollectiveMoments) -> str:
    lines = [f"N = {m.n}"]
    lines += [f"J{a} = {v!r}" for a, v in zip("xyz", m.j_vec.tolist())]
    lines += [f"K{a}{a} = {v!r}" for a, v in zip("xyz", m.k_vec.tolist())]
    if m.has_full_corr:
        c = m.corr.tolist()
        lines += [f"Cxy = {c[0][1]!r}", f"Cxz = {c[0][2]!r}", f"Cyz = {c[1][2]!r}"]
    return "\n".join(lines) + "\n"


def write_moments_file(path, m: CollectiveMoments) -> None:
    Path(path).write_text(format_moments(m))
