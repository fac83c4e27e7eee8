"""Digital-twin documents and their transformation into a network.

A twin lists spaces, the doors between them and the surveillance assets
(cameras and access readers) serving each door::

    {
      "schema": "surveillance-twin/1",
      "spaces": [{"id": "Lobby", "name": "Lobby", "kind": "Room"}, ...],
      "doors":  [{"id": "d1", "from_space": "Lobby", "to_space": "Office",
                  "one_way": false}, ...],
      "assets": [{"id": "cam1", "serves_door": "d1", "kind": "camera",
                  "availability": 0.99, "privacy_cost_bits": 10}, ...]
    }

Spaces become nodes and doors become directed edges sharing the door id as
their pair id.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DanglingReference, RangeError, SchemaError
from .network import (
    FAILCLOSED,
    FAILURE_MODES,
    Edge,
    Sensor,
    SurveillanceNetwork,
    build_network,
    parse_json,
)

SCHEMA = "surveillance-twin/1"
CAMERA = "camera"
ACCESS_READER = "access_reader"
ASSET_KINDS = (CAMERA, ACCESS_READER)


@dataclass(frozen=True)
class Space:
    id: str
    name: str
    kind: str = "Space"


@dataclass(frozen=True)
class Door:
    id: str
    from_space: str
    to_space: str
    one_way: bool = False


@dataclass(frozen=True)
class Asset:
    id: str
    serves_door: str
    kind: str
    availability: float = 1.0
    privacy_cost_bits: float = 0.0
    access_level: float = 1.0
    failure_mode: str = FAILCLOSED


@dataclass(frozen=True)
class TwinDocument:
    spaces: tuple[Space, ...]
    doors: tuple[Door, ...]
    assets: tuple[Asset, ...]

    def assets_for(self, door_id: str, kind: str) -> list[Asset]:
        return [a for a in self.assets if a.serves_door == door_id and a.kind == kind]


@dataclass(frozen=True)
class ExtractionPolicy:
    reverse_traversal: bool = True
    reverse_requires_access: bool = False
    sensors_bidirectional: bool = True


def _field(item, key, where, kind=None, default=...):
    if not isinstance(item, dict):
        raise SchemaError(f"expected an object, got {type(item).__name__}", where)
    if key not in item:
        if default is ...:
            raise SchemaError(f"missing field {key!r}", where)
        return default
    value = item[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{key!r} must be a number", where)
        return float(value)
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{key!r} must be {kind.__name__}", where)
    return value


def _list(doc, key):
    value = doc.get(key, [])
    if not isinstance(value, list):
        raise SchemaError(f"{key!r} must be an array", "$")
    return value


def twin_from_dict(doc: dict) -> TwinDocument:
    if not isinstance(doc, dict):
        raise SchemaError("twin document must be a JSON object", "$")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"expected schema {SCHEMA!r}, got {doc.get('schema')!r}", "$.schema")

    spaces, seen = [], set()
    for i, item in enumerate(_list(doc, "spaces")):
        where = f"spaces[{i}]"
        sid = _field(item, "id", where, str)
        if sid in seen:
            raise SchemaError(f"duplicate space id {sid!r}", where)
        seen.add(sid)
        spaces.append(Space(sid, _field(item, "name", where, str, sid), _field(item, "kind", where, str, "Space")))

    doors, door_ids = [], set()
    for i, item in enumerate(_list(doc, "doors")):
        where = f"doors[{i}]"
        did = _field(item, "id", where, str)
        if did in door_ids:
            raise SchemaError(f"duplicate door id {did!r}", where)
        door_ids.add(did)
        a = _field(item, "from_space", where, str)
        b = _field(item, "to_space", where, str)
        for ref in (a, b):
            if ref not in seen:
                raise DanglingReference(f"door references unknown space {ref!r}", where)
        doors.append(Door(did, a, b, _field(item, "one_way", where, bool, False)))

    assets, asset_ids = [], set()
    for i, item in enumerate(_list(doc, "assets")):
        where = f"assets[{i}]"
        aid = _field(item, "id", where, str)
        if aid in asset_ids:
            raise SchemaError(f"duplicate asset id {aid!r}", where)
        asset_ids.add(aid)
        door = _field(item, "serves_door", where, str)
        if door not in door_ids:
            raise DanglingReference(f"asset serves unknown door {door!r}", where)
        kind = _field(item, "kind", where, str)
        if kind not in ASSET_KINDS:
            raise SchemaError(f"unknown asset kind {kind!r}; expected one of {ASSET_KINDS}", where)
        availability = _field(item, "availability", where, float, 1.0)
        if not 0.0 <= availability <= 1.0:
            raise RangeError(f"availability must be in [0, 1], got {availability}", where)
        bits = _field(item, "privacy_cost_bits", where, float, 0.0)
        if not 0.0 <= bits < float("inf"):
            raise RangeError(f"privacy_cost_bits must be >= 0, got {bits}", where)
        level = _field(item, "access_level", where, float, 1.0)
        if not 0.0 < level <= 1.0:
            raise RangeError(f"access_level must be in (0, 1], got {level}", where)
        mode = _field(item, "failure_mode", where, str, FAILCLOSED)
        if mode not in FAILURE_MODES:
            raise SchemaError(f"failure_mode must be one of {FAILURE_MODES}, got {mode!r}", where)
        assets.append(Asset(aid, door, kind, availability, bits, level, mode))

    return TwinDocument(tuple(spaces), tuple(doors), tuple(assets))


def parse_twin(document: str | bytes) -> TwinDocument:
    return twin_from_dict(parse_json(document))


def load_twin(path) -> TwinDocument:
    return parse_twin(Path(path).read_bytes())


def is_twin_document(doc) -> bool:
    return isinstance(doc, dict) and ("spaces" in doc or "schema" in doc)


def extract_network(
    twin: TwinDocument, policy: ExtractionPolicy | None = None
) -> SurveillanceNetwork:
    """One node per space, one or two directed edges per door.

    The most restrictive reader on a door sets its quality and fault
    behaviour; every camera contributes its own sensor. Reverse traversal
    needs no card unless ``policy.reverse_requires_access``.
    """
    policy = policy or ExtractionPolicy()
    edges = []
    for door in twin.doors:
        readers = twin.assets_for(door.id, ACCESS_READER)
        sensors = tuple(
            Sensor(c.privacy_cost_bits, 1.0 - c.availability)
            for c in twin.assets_for(door.id, CAMERA)
        )
        reader = min(readers, key=lambda a: a.access_level) if readers else None
        access = {}
        if reader is not None:
            access = {
                "quality": reader.access_level,
                "access_failure_prob": 1.0 - reader.availability,
                "access_failure_mode": reader.failure_mode,
            }
        edges.append(Edge(door.from_space, door.to_space, pair=door.id, sensors=sensors, **access))
        if policy.reverse_traversal and not door.one_way:
            edges.append(
                Edge(
                    door.to_space,
                    door.from_space,
                    pair=door.id,
                    sensors=sensors if policy.sensors_bidirectional else (),
                    **(access if policy.reverse_requires_access else {}),
                )
            )
    return build_network([s.id for s in twin.spaces], edges)


def demo_twin_path():
    """Path to the bundled demonstration building."""
    return resources.files("surveillance_reliability") / "data" / "demo_building.twin.json"


def load_demo_twin() -> TwinDocument:
    return parse_twin(demo_twin_path().read_bytes())
