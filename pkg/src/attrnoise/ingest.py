"""Dataset parsers producing canonical signed-binary samples.

Three public-benchmark parsers (congressional votes, SPECT heart imaging,
king-rook-vs-king-pawn chess endgames) with fixed preprocessing, plus the
plain CSV reader/writer for the normalized interchange format used by the
CLI: first column label, remaining columns features, every value -1 or +1,
no header.

Files are read from local paths only; ``scripts/fetch_uci_data.sh``
documents where to download the originals.
"""
from __future__ import annotations

from .core import BinaryPoint, SampleDataset


class ParseError(ValueError):
    """Raised on malformed rows, wrong column counts or unmapped tokens."""


_VOTE_LABELS = {"democrat": 1, "republican": -1}
_VOTE_VALUES = {"y": 1, "n": -1}
_SPECT_VALUES = {"0": -1, "1": 1}
_KRKP_VALUES = {"f": 1, "t": -1, "n": 1, "g": 1, "l": -1}
_KRKP_LABELS = {"won": 1, "nowin": -1}
#: 1-indexed position of the three-valued chess attribute that gets dropped.
_KRKP_DROPPED_ATTRIBUTE = 15


def _rows(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if line:
                yield lineno, line.split(",")


def parse_vote(path) -> SampleDataset:
    """Congressional-votes file: label then 16 y/n/? fields per row.

    Rows containing any "?" are dropped; "y" maps to +1, "n" to -1,
    label "democrat" to +1 and "republican" to -1.
    """
    points = []
    for lineno, fields in _rows(path):
        if len(fields) != 17:
            raise ParseError(f"{path}:{lineno}: expected 17 fields, got {len(fields)}")
        if fields[0] not in _VOTE_LABELS:
            raise ParseError(f"{path}:{lineno}: unknown label {fields[0]!r}")
        if "?" in fields[1:]:
            continue
        try:
            features = tuple(_VOTE_VALUES[v] for v in fields[1:])
        except KeyError as exc:
            raise ParseError(f"{path}:{lineno}: unknown vote value {exc.args[0]!r}") from None
        points.append(BinaryPoint(features, _VOTE_LABELS[fields[0]]))
    if not points:
        raise ParseError(f"{path}: no complete rows (every row had a '?')")
    return SampleDataset(tuple(points), 16, provenance="vote/complete-rows-v1")


def _parse_spect_file(path, points):
    for lineno, fields in _rows(path):
        if len(fields) != 23:
            raise ParseError(f"{path}:{lineno}: expected 23 fields, got {len(fields)}")
        try:
            values = [_SPECT_VALUES[v] for v in fields]
        except KeyError as exc:
            raise ParseError(f"{path}:{lineno}: non-binary cell {exc.args[0]!r}") from None
        points.append(BinaryPoint(tuple(values[1:]), values[0]))


def parse_spect(train_path, test_path) -> SampleDataset:
    """SPECT files (label first, 22 binary attributes), concatenated.

    Every 0 becomes -1, in attributes and labels alike.
    """
    points: list[BinaryPoint] = []
    _parse_spect_file(train_path, points)
    _parse_spect_file(test_path, points)
    return SampleDataset(tuple(points), 22, provenance="spect/train+test-v1")


def parse_krkp(path) -> SampleDataset:
    """Chess endgame file: 36 categorical attributes then the label.

    Attribute 15 (1-indexed, three-valued) is dropped; the remaining tokens
    map f->+1, t->-1, n->+1, g->+1, l->-1; label "won"->+1, "nowin"->-1.
    """
    drop = _KRKP_DROPPED_ATTRIBUTE - 1
    points = []
    for lineno, fields in _rows(path):
        if len(fields) != 37:
            raise ParseError(f"{path}:{lineno}: expected 37 fields, got {len(fields)}")
        if fields[-1] not in _KRKP_LABELS:
            raise ParseError(f"{path}:{lineno}: unknown label {fields[-1]!r}")
        attrs = fields[:drop] + fields[drop + 1 : -1]
        try:
            features = tuple(_KRKP_VALUES[v] for v in attrs)
        except KeyError as exc:
            raise ParseError(f"{path}:{lineno}: unmapped token {exc.args[0]!r}") from None
        points.append(BinaryPoint(features, _KRKP_LABELS[fields[-1]]))
    if not points:
        raise ParseError(f"{path}: empty file")
    return SampleDataset(tuple(points), 35, provenance="krkp/drop-attr15-v1")


def read_dataset_csv(path, provenance: str = "") -> SampleDataset:
    """Read the normalized interchange CSV (label first, +-1 values)."""
    points = []
    n = None
    for lineno, fields in _rows(path):
        try:
            values = [int(v) for v in fields]
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-integer cell") from None
        if len(values) < 2:
            raise ParseError(f"{path}:{lineno}: need a label and at least one feature")
        if n is None:
            n = len(values) - 1
        elif len(values) - 1 != n:
            raise ParseError(f"{path}:{lineno}: expected {n} features, got {len(values) - 1}")
        if any(v not in (-1, 1) for v in values):
            raise ParseError(f"{path}:{lineno}: values must be -1 or +1")
        points.append(BinaryPoint(tuple(values[1:]), values[0]))
    if not points:
        raise ParseError(f"{path}: empty file")
    return SampleDataset(tuple(points), n, provenance=provenance or str(path))


def write_dataset_csv(s: SampleDataset, path) -> None:
    """Write the normalized interchange CSV (label first, +-1 values)."""
    with open(path, "w", encoding="utf-8") as fh:
        for p in s.points:
            fh.write(",".join(str(v) for v in (p.label, *p.features)) + "\n")
