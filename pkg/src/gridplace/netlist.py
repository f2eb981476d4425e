"""Netlist domain model and the native line-based text format.

A netlist is a set of rectangular nodes (hard macros, standard cells, soft
clusters, zero-area ports) connected by weighted nets. Pin offsets are stored
relative to the owning node's center, matching the convention of the Bookshelf
files this tool consumes. Node locations are not part of the netlist; they
live in separate placement maps (see `Pose`).

Native text format, one record per line (see README for the grammar):

    canvas WIDTH HEIGHT
    node ID KIND WIDTH HEIGHT MOVABLE
    net ID [WEIGHT]
    pin NETID NODEID DX DY [s]
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import (
    DanglingPinReference,
    EmptyNetlist,
    InvalidDimension,
    IoFailure,
    MalformedLine,
    MissingFile,
)

log = logging.getLogger(__name__)


class NodeKind(str, Enum):
    MACRO = "macro"
    STDCELL = "stdcell"
    CLUSTER = "cluster"
    PORT = "port"


class Orientation(str, Enum):
    """Manhattan orientations reachable by mirroring: N, FN, S, FS."""

    N = "N"
    FN = "FN"
    S = "S"
    FS = "FS"


# Per-axis sign applied to a center-relative pin offset (dx, dy).
ORIENT_SIGNS = {
    Orientation.N: (1.0, 1.0),
    Orientation.FN: (-1.0, 1.0),
    Orientation.S: (-1.0, -1.0),
    Orientation.FS: (1.0, -1.0),
}

_SIGN_TO_ORIENT = {v: k for k, v in ORIENT_SIGNS.items()}


def transform_pin_offset(dx: float, dy: float, orient: Orientation) -> tuple[float, float]:
    """Rotate/mirror a center-relative pin offset into canvas coordinates."""
    sx, sy = ORIENT_SIGNS[orient]
    return sx * dx, sy * dy


def mirror_orientation(orient: Orientation, axis: str) -> Orientation:
    """Compose a mirror with an orientation. axis 'x' negates dx, 'y' negates dy."""
    sx, sy = ORIENT_SIGNS[orient]
    if axis == "x":
        sx = -sx
    elif axis == "y":
        sy = -sy
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return _SIGN_TO_ORIENT[(sx, sy)]


class Pose(NamedTuple):
    """A placed node: center coordinates plus orientation."""

    x: float
    y: float
    orient: Orientation = Orientation.N


# A placement maps node id -> Pose. Plain dicts keep snapshots cheap.
Placement = dict


@dataclass
class Pin:
    """A net endpoint on a node, offset from the node center."""

    node: str
    dx: float = 0.0
    dy: float = 0.0
    is_source: bool = False


@dataclass
class Net:
    name: str
    pins: list[Pin] = field(default_factory=list)
    weight: float = 1.0

    def source_index(self) -> int:
        """Index of the driving pin: the marked source, else the first pin."""
        for i, p in enumerate(self.pins):
            if p.is_source:
                return i
        return 0


@dataclass
class Node:
    name: str
    kind: NodeKind
    width: float
    height: float
    movable: bool

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass
class Canvas:
    """Placement region, origin at (0, 0)."""

    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise InvalidDimension(f"canvas must have positive size, got {self.width} x {self.height}")

    def contains_point(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.width and 0.0 <= y <= self.height


@dataclass
class Netlist:
    nodes: list[Node]
    nets: list[Net]
    canvas: Canvas
    _index: dict[str, Node] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.nodes:
            raise EmptyNetlist("netlist has no nodes")
        self._index = {}
        for n in self.nodes:
            if n.name in self._index:
                raise InvalidDimension(f"duplicate node id {n.name!r}")
            self._index[n.name] = n
        for net in self.nets:
            for pin in net.pins:
                if pin.node not in self._index:
                    raise DanglingPinReference(f"net {net.name!r} pin references unknown node {pin.node!r}")

    def node(self, name: str) -> Node:
        return self._index[name]

    def has_node(self, name: str) -> bool:
        return name in self._index

    def nodes_of_kind(self, *kinds: NodeKind) -> list[Node]:
        want = set(kinds)
        return [n for n in self.nodes if n.kind in want]

    @property
    def movable_macros(self) -> list[Node]:
        return [n for n in self.nodes if n.kind == NodeKind.MACRO and n.movable]


def validate_nets(nets: Iterable[Net], where: str = "netlist") -> list[Net]:
    """Drop nets with fewer than two pins and demote extra source pins.

    Returns the retained nets; logs one warning per dropped net and per
    demoted source.
    """
    kept = []
    for net in nets:
        if len(net.pins) < 2:
            log.warning("%s: dropping net %r with %d pin(s)", where, net.name, len(net.pins))
            continue
        seen_source = False
        for pin in net.pins:
            if pin.is_source:
                if seen_source:
                    log.warning("%s: net %r has multiple source pins, keeping the first", where, net.name)
                    pin.is_source = False
                seen_source = True
        kept.append(net)
    return kept


# ---------------------------------------------------------------------------
# Native text format


def write_netlist(netlist: Netlist, path) -> None:
    """Serialize a netlist in the native line format."""
    lines = [f"canvas {netlist.canvas.width!r} {netlist.canvas.height!r}"]
    for n in netlist.nodes:
        lines.append(f"node {n.name} {n.kind.value} {n.width!r} {n.height!r} {int(n.movable)}")
    for net in netlist.nets:
        lines.append(f"net {net.name} {net.weight!r}")
        for p in net.pins:
            src = " s" if p.is_source else ""
            lines.append(f"pin {net.name} {p.node} {p.dx!r} {p.dy!r}{src}")
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def read_netlist(path) -> Netlist:
    """Parse the native line format. Raises MalformedLine with line numbers."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    canvas = None
    nodes: list[Node] = []
    nets: dict[str, Net] = {}
    node_by_name: dict[str, Node] = {}
    clamped = 0
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        try:
            if kind == "canvas":
                if len(tok) != 3:
                    raise ValueError("expected: canvas WIDTH HEIGHT")
                canvas = Canvas(float(tok[1]), float(tok[2]))
            elif kind == "node":
                if len(tok) != 6:
                    raise ValueError("expected: node ID KIND WIDTH HEIGHT MOVABLE")
                name, nk, w, h, mv = tok[1], tok[2], float(tok[3]), float(tok[4]), tok[5]
                if mv not in ("0", "1"):
                    raise ValueError(f"MOVABLE must be 0 or 1, got {mv!r}")
                node_kind = NodeKind(nk)
                if node_kind == NodeKind.PORT:
                    if w != 0 or h != 0:
                        raise ValueError("ports must have zero width and height")
                elif w <= 0 or h <= 0:
                    raise ValueError(f"{nk} node needs positive size, got {w} x {h}")
                node = Node(name, node_kind, w, h, movable=mv == "1")
                nodes.append(node)
                node_by_name[name] = node
            elif kind == "net":
                if len(tok) not in (2, 3):
                    raise ValueError("expected: net ID [WEIGHT]")
                weight = float(tok[2]) if len(tok) == 3 else 1.0
                if tok[1] in nets:
                    raise ValueError(f"duplicate net id {tok[1]!r}")
                nets[tok[1]] = Net(tok[1], [], weight)
            elif kind == "pin":
                if len(tok) not in (5, 6):
                    raise ValueError("expected: pin NETID NODEID DX DY [s]")
                if len(tok) == 6 and tok[5] != "s":
                    raise ValueError(f"trailing token must be 's', got {tok[5]!r}")
                if tok[1] not in nets:
                    raise ValueError(f"pin before net declaration {tok[1]!r}")
                owner = node_by_name.get(tok[2])
                if owner is None:
                    raise DanglingPinReference(f"pin references unknown node {tok[2]!r}")
                dx, dy = float(tok[3]), float(tok[4])
                # Pin offsets must stay within the owner's half-extents.
                cdx = min(max(dx, -owner.width / 2), owner.width / 2)
                cdy = min(max(dy, -owner.height / 2), owner.height / 2)
                if cdx != dx or cdy != dy:
                    clamped += 1
                nets[tok[1]].pins.append(Pin(tok[2], cdx, cdy, is_source=len(tok) == 6))
            else:
                raise ValueError(f"unknown record {kind!r}")
        except DanglingPinReference:
            raise
        except (ValueError, InvalidDimension) as exc:
            raise MalformedLine(path, lineno, str(exc)) from exc
    if canvas is None:
        raise MalformedLine(path, 0, "missing canvas record")
    if clamped:
        log.warning("%s: clamped %d pin offset(s) to the owner's half-extents", path, clamped)
    kept = validate_nets(list(nets.values()), where=str(path))
    return Netlist(nodes=nodes, nets=kept, canvas=canvas)
