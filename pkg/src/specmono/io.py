"""Text formats: edge lists, pair orders, embedding CSV, and JSON output.

Floats are always written with 17 significant digits so files round-trip
exactly and repeated runs are byte-identical.
"""
import json
import math
from math import comb
from pathlib import Path

import numpy as np

from .graphs import Graph
from .numerics import Embedding
from .orders import PairOrder, pair_index


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def fmt_float(x):
    return format(float(x), ".17g")


def _lines(text):
    return text.splitlines()


def _ints(line, count, lineno, what):
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"expected {what}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers for {what}", lineno) from None


# ---------------------------------------------------------------- edge list


def parse_edge_list(text):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty edge list", 1)
    n, m = _ints(lines[0], 2, 1, '"n m" header')
    if n < 0 or m < 0:
        raise ParseError("negative counts in header", 1)
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise ParseError(f"header declares {m} edges, found {len(body)}", min(len(body), m) + 2)
    seen = set()
    for k, line in enumerate(body, start=2):
        u, v = _ints(line, 2, k, '"u v" edge')
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", k)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range [0, {n})", k)
        if u > v:
            raise ParseError(f"edge ({u}, {v}) must be written with u < v", k)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge ({u}, {v})", k)
        seen.add((u, v))
    return Graph(n, tuple(seen))


def format_edge_list(g):
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------- pair order


def parse_order(text):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty order file", 1)
    (n,) = _ints(lines[0], 1, 1, '"n" header')
    if n < 2:
        raise ParseError("an order needs at least 2 points", 1)
    total = comb(n, 2)
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    seq, seen = [], {}
    for k, line in enumerate(body, start=2):
        if k - 2 >= total:
            raise ParseError(f"more than C({n},2) = {total} pair lines", k)
        i, j = _ints(line, 2, k, '"i j" pair')
        if i == j:
            raise ParseError(f"degenerate pair ({i}, {j})", k)
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"point index out of range [0, {n})", k)
        idx = pair_index(i, j, n)
        if idx in seen:
            raise ParseError(f"pair ({min(i, j)}, {max(i, j)}) already ranked on line {seen[idx]}", k)
        seen[idx] = k
        seq.append(idx)
    if len(seq) < total:
        raise ParseError(f"missing rank {len(seq)}: expected {total} pair lines, got {len(seq)}", len(seq) + 2)
    return PairOrder(n, seq)


def format_order(order):
    rows = [str(order.n)] + [f"{i} {j}" for i, j in order.pairs()]
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------- embedding


def parse_embedding(text):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty embedding file", 1)
    head = lines[0].split(",")
    try:
        n, d = (int(h) for h in head)
    except ValueError:
        raise ParseError('expected "n,d" header', 1) from None
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise ParseError(f"header declares {n} rows, found {len(body)}", min(len(body), n) + 2)
    coords = np.empty((n, d))
    for k, line in enumerate(body, start=2):
        parts = line.split(",")
        if len(parts) != d:
            raise ParseError(f"expected {d} values", k)
        try:
            coords[k - 2] = [float(p) for p in parts]
        except ValueError:
            raise ParseError("non-numeric coordinate", k) from None
        if not np.isfinite(coords[k - 2]).all():
            raise ParseError("non-finite coordinate", k)
    return Embedding(coords)


def format_embedding(e):
    rows = [f"{e.n},{e.d}"] + [",".join(fmt_float(x) for x in row) for row in e.coords]
    return "\n".join(rows) + "\n"


PARSERS = {"edge-list": parse_edge_list, "order": parse_order, "embedding-csv": parse_embedding}


def parse_inputs(path, fmt):
    """Read ``path`` as one of ``edge-list``, ``order`` or ``embedding-csv``."""
    try:
        parser = PARSERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None
    return parser(Path(path).read_text())


# ---------------------------------------------------------------- JSON


def dumps(obj, indent=2):
    """JSON with insertion-ordered keys and 17-significant-digit floats;
    non-finite floats become null."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None:
            return "null"
        if isinstance(o, (bool, np.bool_)):
            return "true" if o else "false"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return fmt_float(o) if math.isfinite(o) else "null"
        if isinstance(o, str):
            return _quote(o)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{_quote(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple, np.ndarray)):
            seq = list(o)
            if not seq:
                return "[]"
            if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
                return "[" + ", ".join(enc(v, level + 1) for v in seq) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in seq) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def _quote(s):
    return json.dumps(s)
