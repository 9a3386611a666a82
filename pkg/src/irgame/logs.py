"""Search-log frequency tables and their preprocessing.

Raw logs are reduced to ``(label, count)`` tables, the query and answer
tables are brought to a common number of strategies, and counts become
strictly positive distributions with additive smoothing.
"""
import io
import json
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ._validation import check_nonnegative_scalar
from .exceptions import DomainError, ParameterError, ParseError, ZeroFrequencyError

OTHER_LABEL = "⟨other⟩"
DEFAULT_SMOOTHING = 0.5


def canonical_label(label):
    return str(label).strip().casefold()


@dataclass(frozen=True)
class FrequencyTable:
    """Observed ``(label, count)`` pairs with unique canonical labels."""

    rows: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        rows = tuple((str(label), int(count)) for label, count in self.rows)
        labels = [label for label, _ in rows]
        if len(set(labels)) != len(labels):
            raise DomainError("frequency table labels must be unique")
        if any(count < 0 for _, count in rows):
            raise DomainError("counts must be non-negative")
        if not any(count > 0 for _, count in rows):
            raise DomainError("frequency table needs at least one positive count")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_pairs(cls, pairs):
        """Canonicalize labels and merge duplicates by summing their counts.

        First-appearance order of the canonical labels is kept.
        """
        merged = {}
        for label, count in pairs:
            if isinstance(count, bool) or int(count) != count:
                raise DomainError(f"count for {label!r} is not an integer: {count!r}")
            if count < 0:
                raise DomainError(f"negative count {count} for label {label!r}")
            key = canonical_label(label)
            merged[key] = merged.get(key, 0) + int(count)
        return cls(tuple(merged.items()))

    @classmethod
    def from_mapping(cls, mapping):
        return cls.from_pairs(mapping.items())

    @property
    def labels(self):
        return [label for label, _ in self.rows]

    @property
    def counts(self):
        return np.array([count for _, count in self.rows], dtype=np.int64)

    def __len__(self):
        return len(self.rows)


@dataclass(frozen=True)
class AlignedLog:
    """Query and answer distributions over a common number ``n`` of strategies.

    Strategy ``j`` pairs ``labels[j]`` on the query side with
    ``answer_labels[j]`` on the answer side.
    """

    labels: Tuple[str, ...]
    answer_labels: Tuple[str, ...]
    p: np.ndarray
    q: np.ndarray
    smoothing_alpha: float
    query_table: FrequencyTable
    answer_table: FrequencyTable

    @property
    def n(self):
        return len(self.labels)


def _parse_count(text, line):
    text = text.strip()
    try:
        count = int(text)
    except ValueError:
        raise ParseError(f"count {text!r} is not an integer", line) from None
    if count < 0:
        raise DomainError(f"line {line}: negative count {count}")
    return count


def _parse_csv(stream):
    pairs = []
    header_seen = False
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split(",")
        if not header_seen:
            if [f.strip().lower() for f in fields] != ["label", "count"]:
                raise ParseError("expected header 'label,count'", lineno)
            header_seen = True
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", lineno)
        label = fields[0].strip()
        if not label:
            raise ParseError("empty label", lineno)
        pairs.append((label, _parse_count(fields[1], lineno)))
    if not header_seen:
        raise ParseError("empty input")
    return pairs


def _parse_json(stream):
    try:
        data = json.load(stream)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, list):
        raise ParseError("top-level JSON value must be an array")
    pairs = []
    for i, item in enumerate(data):
        if not isinstance(item, dict) or "label" not in item or "count" not in item:
            raise ParseError(f"item {i} must be an object with 'label' and 'count'")
        label, count = item["label"], item["count"]
        if not isinstance(label, str) or not label.strip():
            raise ParseError(f"item {i}: label must be a nonempty string")
        if isinstance(count, bool) or not isinstance(count, int):
            raise ParseError(f"item {i}: count must be an integer")
        if count < 0:
            raise DomainError(f"item {i}: negative count {count}")
        pairs.append((label, count))
    return pairs


def parse_frequency_table(source, format="csv"):
    """Read a frequency table from a text stream or string.

    CSV input starts with the header ``label,count``; commas inside labels are
    not supported.  JSON input is an array of ``{"label": ..., "count": ...}``.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    fmt = format.lower()
    if fmt == "csv":
        pairs = _parse_csv(source)
    elif fmt == "json":
        pairs = _parse_json(source)
    else:
        raise ParameterError(f"unknown frequency-table format {format!r}")
    if not pairs:
        raise ParseError("no data rows")
    return FrequencyTable.from_pairs(pairs)


def _sorted_rows(rows):
    return sorted(rows, key=lambda row: (-row[1], row[0]))


def _merge_tail(table, n):
    rows = _sorted_rows(table.rows)
    if len(rows) == n:
        return FrequencyTable(tuple(rows))
    head = dict(rows[: n - 1])
    tail = sum(count for _, count in rows[n - 1 :])
    if OTHER_LABEL in head:
        head[OTHER_LABEL] += tail
    else:
        head[OTHER_LABEL] = tail
    return FrequencyTable(tuple(_sorted_rows(head.items())))


def align(queries, answers, target_n=None, smoothing_alpha=DEFAULT_SMOOTHING):
    """Bring both tables to ``n`` strategies and turn them into distributions.

    ``n`` defaults to the smaller distinct-label count.  A side with more
    than ``n`` labels keeps its ``n - 1`` most frequent entries and merges the
    rest into one ``⟨other⟩`` bucket.  Rows are ordered by descending count,
    ties by label.

    Pairing: when both reduced tables carry the same label set, answers are
    reordered to follow the query labels, so strategy ``j`` is the same
    string on both sides.  Otherwise the ``j``-th most frequent query is
    paired with the ``j``-th most frequent answer.
    """
    size = min(len(queries), len(answers))
    if target_n is None:
        target_n = size
    if isinstance(target_n, bool) or int(target_n) != target_n:
        raise ParameterError(f"target_n must be an integer, got {target_n!r}")
    target_n = int(target_n)
    if target_n < 1 or target_n > size:
        raise ParameterError(
            f"target_n must lie in [1, {size}], got {target_n} "
            f"(queries: {len(queries)} labels, answers: {len(answers)} labels)"
        )
    q_table = _merge_tail(queries, target_n)
    a_table = _merge_tail(answers, target_n)
    if set(q_table.labels) == set(a_table.labels):
        counts = dict(a_table.rows)
        a_table = FrequencyTable(tuple((label, counts[label]) for label in q_table.labels))
    return AlignedLog(
        labels=tuple(q_table.labels),
        answer_labels=tuple(a_table.labels),
        p=to_distribution(q_table, smoothing_alpha),
        q=to_distribution(a_table, smoothing_alpha),
        smoothing_alpha=float(smoothing_alpha),
        query_table=q_table,
        answer_table=a_table,
    )


def to_distribution(table, smoothing_alpha=DEFAULT_SMOOTHING):
    """Additively smoothed relative frequencies.

    ``p_i = (count_i + alpha) / (total + n * alpha)``.

    Raises
    ------
    ZeroFrequencyError
        Some count is zero and ``smoothing_alpha`` is 0.
    """
    alpha = check_nonnegative_scalar(smoothing_alpha, "smoothing_alpha")
    counts = table.counts.astype(float)
    if alpha == 0 and np.any(counts == 0):
        zero = [label for label, count in table.rows if count == 0]
        raise ZeroFrequencyError(
            f"zero count for {zero!r}; use a positive smoothing alpha"
        )
    return (counts + alpha) / (counts.sum() + counts.size * alpha)
