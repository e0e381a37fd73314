"""Reading and writing point-set files.

A point-set file holds ``#`` comment lines, then a line ``n <count>``, then
``count`` rows of ``count`` space-separated decimal integers: the full
symmetric squared-distance matrix.  Output is UTF-8 with LF line endings.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .core import Certificate, SquaredDistanceMatrix
from .errors import ParseError


@dataclass(frozen=True)
class PointSetFile:
    sdm: SquaredDistanceMatrix
    header: tuple[str, ...] = field(default=())


def parse_point_set(text: str) -> PointSetFile:
    header: list[str] = []
    lines = text.split("\n")
    i = 0
    while i < len(lines) and (lines[i].startswith("#") or not lines[i].strip()):
        if lines[i].startswith("#"):
            header.append(lines[i][1:].strip())
        i += 1
    if i == len(lines):
        raise ParseError("missing 'n <count>' line")
    parts = lines[i].split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise ParseError(f"line {i + 1}: expected 'n <count>', got {lines[i]!r}")
    n = int(parts[1])
    rows = []
    for r in range(n):
        i += 1
        if i >= len(lines):
            raise ParseError(f"expected {n} matrix rows, found {r}")
        tokens = lines[i].split()
        if len(tokens) != n or not all(t.isdigit() for t in tokens):
            raise ParseError(f"line {i + 1}: expected {n} non-negative integers")
        rows.append(tuple(int(t) for t in tokens))
    if any(line.strip() for line in lines[i + 1:]):
        raise ParseError(f"unexpected content after line {i + 1}")
    try:
        sdm = SquaredDistanceMatrix(tuple(rows))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return PointSetFile(sdm, tuple(header))


def read_point_set(path: str | os.PathLike) -> PointSetFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_point_set(text)


def format_point_set(
    sdm: SquaredDistanceMatrix,
    header: list[str] | tuple[str, ...] = (),
    cert: Certificate | None = None,
) -> str:
    out = [f"# {h}" if h else "#" for h in header]
    if cert is not None:
        out.append(f"# integral: {'true' if cert.integral else 'false'}")
        out.append(f"# dim: {cert.dim}")
        if cert.diameter is not None:
            out.append(f"# diameter: {cert.diameter}")
        else:
            out.append(f"# diameter_squared: {cert.diameter_squared}")
    out.append(f"n {sdm.n}")
    out += [" ".join(map(str, row)) for row in sdm.entries]
    return "\n".join(out) + "\n"


def write_point_set(
    path: str | os.PathLike,
    sdm: SquaredDistanceMatrix,
    header: list[str] | tuple[str, ...] = (),
    cert: Certificate | None = None,
) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_point_set(sdm, header, cert))
