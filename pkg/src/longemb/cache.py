"""On-disk cache of complex slices.

Layout (``<root>/v1/<kind>/m<pm>_n<pn>/s<s>_t<t>/``)::

    basis_d<k>.txt   canonical encodings, one per line
    diff_d<k>.mat    matrix from grading index k to its neighbour

``k`` is the parity-independent grading index: the number of internal
vertices for graph complexes, the number of vertices for bicolored ones.
Every file starts with a header line recording the format version and the
number of payload lines, so truncated files are detected and recomputed.
Writes go through a temporary file and ``os.replace``.
"""
from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .exactq import SparseMatrix

FORMAT_VERSION = 1
ENV_VAR = "LONGEMB_CACHE_DIR"


def default_root(cache_dir: Optional[str] = None) -> Optional[Path]:
    root = cache_dir or os.environ.get(ENV_VAR)
    return Path(root) if root else None


def slice_dir(root: Path, kind: str, m: int, n: int, s: int, t: int) -> Path:
    return root / f"v{FORMAT_VERSION}" / kind / f"m{m % 2}_n{n % 2}" / f"s{s}_t{t}"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(kind: str, count: int) -> str:
    return f"# longemb-cache v{FORMAT_VERSION} {kind} lines={count}"


def _read_checked(path: Path, kind: str) -> Optional[List[str]]:
    try:
        text = path.read_text()
    except OSError:
        return None
    if not text.endswith("\n"):
        return None
    lines = text[:-1].split("\n") if text != "\n" else [""]
    head = lines[0].split()
    if len(head) != 5 or head[:4] != ["#", "longemb-cache", f"v{FORMAT_VERSION}", kind]:
        return None
    try:
        count = int(head[4].split("=", 1)[1])
    except (IndexError, ValueError):
        return None
    body = lines[1:]
    if len(body) != count:
        return None
    return body


def write_slice(directory: Path, bases: Dict[int, List[str]], diffs: Dict[int, SparseMatrix]) -> None:
    for k, items in bases.items():
        _atomic_write(directory / f"basis_d{k}.txt", "\n".join([_header("basis", len(items))] + items) + "\n")
    for k, mat in diffs.items():
        body = mat.to_text().rstrip("\n").split("\n")
        _atomic_write(directory / f"diff_d{k}.mat", "\n".join([_header("matrix", len(body))] + body) + "\n")
    # written last: its presence marks the slice as complete
    index = [f"basis {k}" for k in sorted(bases)] + [f"diff {k}" for k in sorted(diffs)]
    _atomic_write(directory / "index.txt", "\n".join([_header("index", len(index))] + index) + "\n")


def read_slice(directory: Path) -> Optional[Tuple[Dict[int, List[str]], Dict[int, SparseMatrix]]]:
    index = _read_checked(directory / "index.txt", "index")
    if index is None:
        return None
    bases: Dict[int, List[str]] = {}
    diffs: Dict[int, SparseMatrix] = {}
    for entry in index:
        what, k = entry.split()
        k = int(k)
        if what == "basis":
            body = _read_checked(directory / f"basis_d{k}.txt", "basis")
            if body is None:
                return None
            bases[k] = body
        else:
            body = _read_checked(directory / f"diff_d{k}.mat", "matrix")
            if body is None:
                return None
            try:
                diffs[k] = SparseMatrix.from_text("\n".join(body) + "\n")
            except (ValueError, IndexError):
                return None
    return bases, diffs
