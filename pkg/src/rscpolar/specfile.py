"""Channel specification files.

A spec is a YAML (or JSON) mapping with a ``kind`` key::

    kind: bsc            # eps: crossover probability
    eps: 1/10

    kind: bec            # q: erasure probability
    q: 0.5

    kind: mixture        # parts: list of {weight, channel}
    parts:
      - {weight: 1/2, channel: {kind: bsc, eps: 1/8}}
      - {weight: 1/2, channel: {kind: bsc, eps: 3/8}}

    kind: table          # explicit transition rows, optional output labels
    outputs: [a, b, e]
    p0: [1/2, 0, 1/2]
    p1: [0, 1/2, 1/2]

Values written as ``p/q`` are exact fractions, values with a decimal point or
exponent are floats, bare integers fit either. Without a forced mode, a file
mixing fractions and decimals is rejected. The inline forms ``bsc:1/10`` and
``bec:0.5`` are accepted wherever a spec path is.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import yaml

from ._kernels import WEIGHT_TOL
from .algebra import EXACT, FLOAT
from .channel import SymmetricChannel, channel_from_lrp, make_bec, make_bsc, mix
from .errors import AsymmetricChannelError, ParseError, UsageError
from .profile import GeneralChannel, lrp_from_table

KINDS = ("bsc", "bec", "mixture", "table")


@dataclass(frozen=True)
class ChannelSpec:
    """A parsed spec: the symmetric channel, and the table when one was given."""

    kind: str
    mode: str
    channel: SymmetricChannel | None
    table: GeneralChannel | None = None
    symmetric: bool = True
    bec_q: object = None

    def require_symmetric(self) -> SymmetricChannel:
        if self.channel is None:
            raise AsymmetricChannelError(
                "this command needs a symmetric channel; the table's likelihood profile "
                "must satisfy P(eps) == P(1 - eps) for every eps")
        return self.channel


class _Reader:
    def __init__(self, forced_mode: str | None):
        self.forced = forced_mode
        self.kinds_seen: set[str] = set()

    def scalar(self, node, field):
        line = node.start_mark.line + 1
        if not isinstance(node, yaml.ScalarNode):
            raise ParseError("expected a number", line, field)
        text = node.value.strip()
        try:
            if "/" in text:
                value, kind = Fraction(text), "fraction"
            elif any(c in text for c in ".eE") and not text.lower().startswith("0x"):
                value, kind = float(text), "decimal"
            else:
                value, kind = int(text), "integer"
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a probability: {text!r}", line, field) from None
        if kind != "integer":
            self.kinds_seen.add(kind)
        if not 0 <= value <= 1:
            raise ParseError(f"value {text} is outside [0, 1]", line, field)
        return value, line

    def finish(self, value):
        if self.forced == FLOAT:
            return float(value)
        return Fraction(value) if self.mode == EXACT else float(value)

    @property
    def mode(self) -> str:
        if self.forced:
            return self.forced
        if len(self.kinds_seen) > 1:
            raise ParseError("spec mixes fractions with decimals; pass --exact or --float")
        return FLOAT if "decimal" in self.kinds_seen else EXACT


def _mapping(node, field):
    if not isinstance(node, yaml.MappingNode):
        raise ParseError("expected a mapping", node.start_mark.line + 1, field)
    out = {}
    for k, v in node.value:
        out[k.value] = v
    return out


def _get(m: dict, key: str, parent, field):
    if key not in m:
        raise ParseError(f"missing key {key!r}", parent.start_mark.line + 1, field)
    return m[key]


def _sequence(node, field):
    if not isinstance(node, yaml.SequenceNode):
        raise ParseError("expected a list", node.start_mark.line + 1, field)
    return node.value


def _collect(node, reader: _Reader, field="spec"):
    """First pass: validate structure, read raw numbers, remember line numbers."""
    m = _mapping(node, field)
    kind_node = _get(m, "kind", node, field)
    kind = kind_node.value
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}",
                         kind_node.start_mark.line + 1, f"{field}.kind")
    if kind == "bsc":
        return ("bsc", reader.scalar(_get(m, "eps", node, field), f"{field}.eps"))
    if kind == "bec":
        return ("bec", reader.scalar(_get(m, "q", node, field), f"{field}.q"))
    if kind == "mixture":
        parts = []
        for i, part in enumerate(_sequence(_get(m, "parts", node, field), f"{field}.parts")):
            pf = f"{field}.parts[{i}]"
            pm = _mapping(part, pf)
            w = reader.scalar(_get(pm, "weight", part, pf), f"{pf}.weight")
            sub = _collect(_get(pm, "channel", part, pf), reader, f"{pf}.channel")
            if sub[0] == "table":
                raise ParseError("mixture parts must be bsc, bec or mixture", part.start_mark.line + 1, pf)
            parts.append((w, sub))
        if not parts:
            raise ParseError("mixture needs at least one part", node.start_mark.line + 1, f"{field}.parts")
        return ("mixture", parts, node.start_mark.line + 1)
    rows = []
    for key in ("p0", "p1"):
        items = _sequence(_get(m, key, node, field), f"{field}.{key}")
        rows.append([reader.scalar(x, f"{field}.{key}[{j}]") for j, x in enumerate(items)])
    labels = None
    if "outputs" in m:
        labels = [x.value for x in _sequence(m["outputs"], f"{field}.outputs")]
    return ("table", rows, labels, node.start_mark.line + 1)


def _check_sum(values, mode, line, field):
    total = sum(values)
    bad = (total != 1) if mode == EXACT else abs(total - 1) > WEIGHT_TOL
    if bad:
        raise ParseError(f"values sum to {total}, not 1", line, field)


def _build(raw, reader: _Reader, field="spec"):
    kind = raw[0]
    mode = reader.mode
    if kind == "bsc":
        return make_bsc(reader.finish(raw[1][0]))
    if kind == "bec":
        return make_bec(reader.finish(raw[1][0]))
    if kind == "mixture":
        weights = [reader.finish(w) for (w, _), _sub in raw[1]]
        _check_sum(weights, mode, raw[2], f"{field}.parts")
        return mix([(w, _build(sub, reader)) for w, (_, sub) in zip(weights, raw[1])])
    raise AssertionError(kind)


def _inline(text: str):
    kind, _, value = text.partition(":")
    if kind not in ("bsc", "bec") or not value:
        raise ParseError(f"cannot read channel spec {text!r}: not a file, and not of the form bsc:EPS or bec:Q")
    key = "eps" if kind == "bsc" else "q"
    return f"kind: {kind}\n{key}: {value.strip()}\n"


def load_spec_text(text: str, mode: str | None = None) -> ChannelSpec:
    """Parse spec text; ``mode`` forces ``"exact"`` or ``"float"`` for every value."""
    if mode not in (None, EXACT, FLOAT):
        raise UsageError(f"unknown mode {mode!r}")
    try:
        node = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(str(getattr(exc, "problem", exc)), mark.line + 1 if mark else None) from None
    if node is None:
        raise ParseError("empty spec")
    reader = _Reader(mode)
    raw = _collect(node, reader)
    resolved = reader.mode
    if raw[0] == "table":
        rows, labels, line = raw[1], raw[2], raw[3]
        p0 = [reader.finish(v) for v, _ in rows[0]]
        p1 = [reader.finish(v) for v, _ in rows[1]]
        if len(p0) != len(p1) or not p0:
            raise ParseError("p0 and p1 must be nonempty lists of equal length", line, "spec")
        if labels is not None and len(labels) != len(p0):
            raise ParseError("outputs must label every column", line, "spec.outputs")
        _check_sum(p0, resolved, line, "spec.p0")
        _check_sum(p1, resolved, line, "spec.p1")
        table = GeneralChannel.from_probabilities(p0, p1, labels, mode=resolved)
        try:
            channel = channel_from_lrp(lrp_from_table(table))
            symmetric = True
        except AsymmetricChannelError:
            channel, symmetric = None, False
        return ChannelSpec("table", resolved, channel, table, symmetric)
    try:
        channel = _build(raw, reader)
    except ParseError:
        raise
    except UsageError as exc:
        raise ParseError(str(exc), node.start_mark.line + 1) from None
    bec_q = _bec_parameter(channel)
    return ChannelSpec(raw[0], resolved, channel, None, True, bec_q)


def _bec_parameter(channel: SymmetricChannel):
    """Erasure probability when the channel is a BEC (only B(0) and B(1/2) parts), else None."""
    eps = channel.eps
    h = Fraction(1, 2) if channel.mode == EXACT else 0.5
    if not set(eps) <= {0, h}:
        return None
    return channel.components[-1].weight if eps[-1] == h else 0 * h


def load_spec(source: str, mode: str | None = None) -> ChannelSpec:
    """Read a spec from a file path, ``-`` for stdin, or an inline ``bsc:``/``bec:`` form."""
    if source == "-":
        return load_spec_text(sys.stdin.read(), mode)
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return load_spec_text(fh.read(), mode)
    return load_spec_text(_inline(source), mode)
