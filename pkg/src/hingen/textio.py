"""Line-oriented delimited text files shared by every reader and writer.

Every file written starts with the header ``#hingen-format 1``. Readers accept
files with or without it; other lines starting with ``#`` are comments.
"""

from __future__ import annotations

import hashlib
import os
from typing import Iterable, Iterator

FORMAT_HEADER = "#hingen-format 1"


class FormatError(ValueError):
    def __init__(self, path, lineno, msg):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {msg}" if lineno else f"{path}: {msg}")


def read_rows(path, ncols: int | None = None, min_cols: int | None = None) -> Iterator[tuple[int, list[str]]]:
    """Yield (line number, fields) for every data line of a tab/space separated file."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if line.startswith("#"):
                if line.startswith("#hingen-format") and line.strip() != FORMAT_HEADER:
                    raise FormatError(path, lineno, f"unsupported format header {line.strip()!r}")
                continue
            fields = line.split("\t") if "\t" in line else line.split()
            fields = [f.strip() for f in fields]
            if ncols is not None and len(fields) != ncols:
                raise FormatError(path, lineno, f"expected {ncols} columns, got {len(fields)}")
            if min_cols is not None and len(fields) < min_cols:
                raise FormatError(path, lineno, f"expected at least {min_cols} columns, got {len(fields)}")
            yield lineno, fields


def write_rows(path, rows: Iterable[Iterable], header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(FORMAT_HEADER + "\n")
        if header:
            fh.write("# " + header + "\n")
        for row in rows:
            fh.write("\t".join(str(x) for x in row) + "\n")


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def tree_digests(root) -> dict[str, str]:
    """sha256 of every file under ``root``, keyed by relative posix path."""
    out = {}
    for dirpath, _, files in os.walk(root):
        for name in files:
            full = os.path.join(dirpath, name)
            rel = os.path.relpath(full, root).replace(os.sep, "/")
            out[rel] = file_digest(full)
    return dict(sorted(out.items()))
