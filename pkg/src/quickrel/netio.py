"""Reading and writing network documents.

A network document is UTF-8 JSON::

    {
      "metadata": {"name": "fig1", "description": "..."},
      "node_count": 4,
      "directed": false,
      "arcs": [
        {"from": 1, "to": 2, "max_capacity": 5, "lead_time": 4, "pmf": [...]},
        ...
      ]
    }

Arc order in the document is the arc order of every state vector.  ``pmf``
is optional per arc but reliability needs it on all of them; when present it
must have exactly ``max_capacity + 1`` entries.  ``directed`` defaults to
false.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .model import Arc, Network, NetworkError, validate_network
from .reliability import ArcStateDistribution

ARC_FIELDS = ("from", "to", "max_capacity", "lead_time")


class DocumentError(NetworkError):
    """Malformed network document; the message names the offending field or line."""


@dataclass(frozen=True)
class NetworkDocument:
    net: Network
    pmfs: tuple[Optional[ArcStateDistribution], ...]

    @property
    def dists(self) -> Optional[tuple[ArcStateDistribution, ...]]:
        """Per-arc distributions, or None unless every arc carries one."""
        if all(p is not None for p in self.pmfs):
            return self.pmfs
        return None

    @property
    def arcs_missing_pmf(self) -> list[int]:
        return [i for i, p in enumerate(self.pmfs) if p is None]


def _int_field(record: dict, key: str, where: str) -> int:
    if key not in record:
        raise DocumentError(f"{where}: missing field '{key}'")
    value = record[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: field '{key}' must be an integer, got {value!r}")
    return value


def parse_network(text: str) -> NetworkDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object")

    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise DocumentError("field 'metadata' must be an object")
    node_count = _int_field(doc, "node_count", "document")
    directed = doc.get("directed", False)
    if not isinstance(directed, bool):
        raise DocumentError("field 'directed' must be true or false")
    records = doc.get("arcs")
    if not isinstance(records, list):
        raise DocumentError("field 'arcs' must be a list")

    arcs, pmfs = [], []
    for i, rec in enumerate(records):
        where = f"arcs[{i}] (a{i + 1})"
        if not isinstance(rec, dict):
            raise DocumentError(f"{where}: arc record must be an object")
        s, t, cap, lead = (_int_field(rec, k, where) for k in ARC_FIELDS)
        arcs.append(Arc(s, t, cap, lead))
        pmf = rec.get("pmf")
        if pmf is None:
            pmfs.append(None)
            continue
        if not isinstance(pmf, list) or not all(
            isinstance(p, (int, float)) and not isinstance(p, bool) for p in pmf
        ):
            raise DocumentError(f"{where}: field 'pmf' must be a list of numbers")
        if cap >= 0 and len(pmf) != cap + 1:
            raise DocumentError(
                f"{where}: pmf has {len(pmf)} entries, expected max_capacity + 1 = {cap + 1}"
            )
        try:
            pmfs.append(ArcStateDistribution(tuple(pmf)))
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from None

    net = validate_network(
        Network(
            node_count,
            tuple(arcs),
            directed,
            str(meta.get("name", "")),
            str(meta.get("description", "")),
        )
    )
    return NetworkDocument(net, tuple(pmfs))


def load_network(path) -> NetworkDocument:
    return parse_network(Path(path).read_text(encoding="utf-8"))


def network_to_dict(net: Network, dists=None) -> dict:
    arcs = []
    for i, arc in enumerate(net.arcs):
        rec = {
            "from": arc.tail,
            "to": arc.head,
            "max_capacity": arc.max_capacity,
            "lead_time": arc.lead_time,
        }
        if dists is not None and dists[i] is not None:
            rec["pmf"] = list(dists[i].pmf)
        arcs.append(rec)
    doc = {"metadata": {"name": net.name, "description": net.description}}
    doc["node_count"] = net.node_count
    if net.directed:
        doc["directed"] = True
    doc["arcs"] = arcs
    return doc


def dump_network(net: Network, dists=None) -> str:
    return json.dumps(network_to_dict(net, dists), indent=2) + "\n"
