"""Plain-text formats for matrices, block data and algebras.

Matrix::

    # comment
    ROWS COLS
    a11 a12 ...        (integers, or p/q for rationals)

Block datum::

    SCALE 16
    [subsection 1]
    Q
    <matrix>
    CARTAN
    <matrix>

Algebra (indices are 0-based, coefficients in 0..p-1)::

    DIM n P p UNIT i
    label_0 label_1 ...
    i j k c            (e_i * e_j contains c * e_k)
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DataFileMissing, ParseError
from .exact_linalg import IntMatrix, RatMatrix
from .fdalgebra import FinDimAlgebra
from .gendec import BlockDatum, SubsectionDatum

__all__ = [
    "parse_matrix",
    "format_matrix",
    "read_matrix",
    "parse_block",
    "format_block",
    "read_block",
    "parse_algebra",
    "format_algebra",
    "read_algebra",
    "paper_data_path",
    "load_paper_matrix",
    "load_paper_block",
    "load_paper_algebra",
]


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            out.append(s)
    return out


def _parse_matrix_lines(lines: list[str], pos: int = 0):
    try:
        rows, cols = (int(t) for t in lines[pos].split())
    except (IndexError, ValueError):
        raise ParseError(f"expected 'ROWS COLS' header, got {lines[pos:pos + 1]}") from None
    body = lines[pos + 1:pos + 1 + rows]
    if len(body) != rows:
        raise ParseError(f"expected {rows} matrix rows, got {len(body)}")
    entries = []
    rational = False
    for line in body:
        toks = line.split()
        if len(toks) != cols:
            raise ParseError(f"expected {cols} entries in row {line!r}")
        for t in toks:
            if "/" in t:
                rational = True
                entries.append(Fraction(t))
            else:
                try:
                    entries.append(int(t))
                except ValueError:
                    raise ParseError(f"bad matrix entry {t!r}") from None
    if rational:
        m = RatMatrix(rows, cols, entries)
        return (m.to_integer() if m.is_integral() else m), pos + 1 + rows
    return IntMatrix(rows, cols, entries), pos + 1 + rows


def parse_matrix(text: str):
    """Parse one matrix; rational entries give a RatMatrix, else an IntMatrix."""
    lines = _content_lines(text)
    m, end = _parse_matrix_lines(lines)
    if end != len(lines):
        raise ParseError("trailing content after matrix")
    return m


def format_matrix(m, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" if c else "#" for c in comment.splitlines())
    out.append(f"{m.rows} {m.cols}")
    for i in range(m.rows):
        out.append(" ".join(str(x) for x in m.row(i)))
    return "\n".join(out) + "\n"


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise DataFileMissing(str(path)) from None


def read_matrix(path):
    return parse_matrix(_read_text(path))


def parse_block(text: str) -> BlockDatum:
    lines = _content_lines(text)
    scale = None
    subs = []
    pos = 0
    while pos < len(lines):
        line = lines[pos]
        if line.upper().startswith("SCALE"):
            scale = int(line.split()[1])
            pos += 1
        elif line.startswith("[subsection") and line.endswith("]"):
            label = line[len("[subsection"):-1].strip()
            q = cartan = None
            pos += 1
            while pos < len(lines) and lines[pos].upper() in ("Q", "CARTAN"):
                key = lines[pos].upper()
                m, pos = _parse_matrix_lines(lines, pos + 1)
                if key == "Q":
                    q = m
                else:
                    cartan = m
            if q is None:
                raise ParseError(f"subsection {label} has no Q block")
            subs.append(SubsectionDatum(label, q, cartan if cartan is not None else q.T @ q))
        else:
            raise ParseError(f"unexpected line {line!r}")
    if scale is None:
        raise ParseError("missing SCALE header")
    return BlockDatum(tuple(subs), scale)


def format_block(block: BlockDatum, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"SCALE {block.scale}")
    for s in block.subsections:
        out.append(f"[subsection {s.label}]")
        out.append("Q")
        out.append(format_matrix(s.q).rstrip())
        out.append("CARTAN")
        out.append(format_matrix(s.cartan).rstrip())
    return "\n".join(out) + "\n"


def read_block(path) -> BlockDatum:
    return parse_block(_read_text(path))


def parse_algebra(text: str) -> FinDimAlgebra:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty algebra file")
    head = lines[0].split()
    try:
        fields = {head[i].upper(): int(head[i + 1]) for i in range(0, len(head), 2)}
        n, p, unit = fields["DIM"], fields["P"], fields["UNIT"]
    except (IndexError, KeyError, ValueError):
        raise ParseError(f"bad algebra header {lines[0]!r}") from None
    labels = lines[1].split() if len(lines) > 1 else []
    if len(labels) != n:
        raise ParseError(f"expected {n} labels, got {len(labels)}")
    sc = np.zeros((n, n, n), dtype=np.int64)
    for line in lines[2:]:
        try:
            i, j, k, c = (int(t) for t in line.split())
        except ValueError:
            raise ParseError(f"bad structure constant line {line!r}") from None
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n and 0 <= c < p):
            raise ParseError(f"structure constant out of range: {line!r}")
        sc[i, j, k] = c
    return FinDimAlgebra(p, sc, unit, tuple(labels))


def format_algebra(a: FinDimAlgebra, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"DIM {a.dim} P {a.p} UNIT {a.unit_index}")
    out.append(" ".join(a.labels))
    for i, j, k in zip(*np.nonzero(a.sc)):
        out.append(f"{i} {j} {k} {a.sc[i, j, k]}")
    return "\n".join(out) + "\n"


def read_algebra(path) -> FinDimAlgebra:
    return parse_algebra(_read_text(path))


def paper_data_path(name: str):
    """Path of a bundled data file under ``data/paper``."""
    ref = resources.files("blockcenter").joinpath("data", "paper", name)
    if not ref.is_file():
        raise DataFileMissing(f"bundled data file {name} is missing")
    return ref


def load_paper_matrix(name: str):
    return parse_matrix(paper_data_path(name + ".mat").read_text())


def load_paper_block(name: str) -> BlockDatum:
    return parse_block(paper_data_path(name + ".block").read_text())


def load_paper_algebra(name: str) -> FinDimAlgebra:
    return parse_algebra(paper_data_path(name + ".alg").read_text())
