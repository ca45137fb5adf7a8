"""Reading and writing plain-text level files.

The on-disk format is deliberately dumb: one or more whitespace-separated
real numbers per line, '#' starts a comment, blank lines are skipped.
Written files carry 17 significant digits so a write/read round trip
reproduces every double bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import IoError, ParseError
from .spectra import Spectrum, make_spectrum

__all__ = ["LevelFile", "parse_level_file", "write_level_file"]


@dataclass(frozen=True)
class LevelFile:
    """A parsed level file: original path plus the validated spectrum."""

    path: str
    spectrum: Spectrum

    @property
    def levels(self) -> np.ndarray:
        return self.spectrum.levels


def parse_level_file(path) -> LevelFile:
    """Parse a text level file; errors carry line and column context."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise IoError(f"cannot read level file {p}: {exc.strerror or exc}") from exc

    values: list[float] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        col = 1
        for token in body.split():
            col = body.index(token, col - 1) + 1
            try:
                values.append(float(token))
            except ValueError:
                raise ParseError(
                    f"{p}: {token!r} is not a real number",
                    line=lineno,
                    column=col,
                ) from None
            col += len(token)
    spectrum = make_spectrum(values, label=str(p))
    return LevelFile(path=str(p), spectrum=spectrum)


def write_level_file(path, levels, header: str | None = None) -> None:
    """Write one level per line at 17 significant digits."""
    p = Path(path)
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    arr = np.asarray(levels, dtype=np.float64).reshape(-1)
    lines.extend(f"{x:.17g}" for x in arr)
    try:
        p.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write level file {p}: {exc.strerror or exc}") from exc
