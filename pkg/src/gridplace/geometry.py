"""Uniform placement grid, cell geometry, and legality predicates.

The canvas is divided into n_cols x n_rows equal cells. Cell (0, 0) is the
lower-left cell; cell centers are ((col + 0.5) * cell_w, (row + 0.5) * cell_h).
Each cell owns two routing boundaries: its right edge (horizontal routing,
capacity h_capacity tracks) and its top edge (vertical routing, v_capacity).

Legality: a node's bounding box must lie inside the canvas and may touch, but
not positively overlap, other nodes' boxes. Comparisons use a relative epsilon
of 1e-9 of the canvas extent so that cell-aligned placements are not rejected
over last-ulp noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidDimension, OutOfRange, UnknownNode
from .netlist import Canvas, Netlist, Node, NodeKind, Orientation, Placement, Pose

EPS_FRAC = 1e-9


@dataclass(frozen=True)
class Grid:
    canvas: Canvas
    n_cols: int
    n_rows: int
    h_capacity: float
    v_capacity: float

    @property
    def cell_w(self) -> float:
        return self.canvas.width / self.n_cols

    @property
    def cell_h(self) -> float:
        return self.canvas.height / self.n_rows

    @property
    def n_cells(self) -> int:
        return self.n_cols * self.n_rows

    def cell_center(self, col: int, row: int) -> tuple[float, float]:
        if not (0 <= col < self.n_cols and 0 <= row < self.n_rows):
            raise OutOfRange(f"cell ({col}, {row}) outside {self.n_cols} x {self.n_rows} grid")
        return (col + 0.5) * self.cell_w, (row + 0.5) * self.cell_h

    def cell_of_point(self, x: float, y: float) -> tuple[int, int]:
        """Cell containing a point; points on the far edges map inward."""
        col = min(max(int(math.floor(x / self.cell_w)), 0), self.n_cols - 1)
        row = min(max(int(math.floor(y / self.cell_h)), 0), self.n_rows - 1)
        return col, row

    @property
    def tol(self) -> float:
        return EPS_FRAC * max(self.canvas.width, self.canvas.height)


def build_grid(
    canvas: Canvas,
    n_cols: int = 32,
    n_rows: int = 32,
    h_capacity: float | None = None,
    v_capacity: float | None = None,
) -> Grid:
    """Construct a grid over the canvas.

    Capacities default to 10 tracks per unit boundary length: the right edge of
    a cell is cell_h long, the top edge cell_w.
    """
    if n_cols < 1 or n_rows < 1:
        raise InvalidDimension(f"grid needs at least one cell, got {n_cols} x {n_rows}")
    cell_h = canvas.height / n_rows
    cell_w = canvas.width / n_cols
    if h_capacity is None:
        h_capacity = 10.0 * cell_h
    if v_capacity is None:
        v_capacity = 10.0 * cell_w
    if h_capacity <= 0 or v_capacity <= 0:
        raise InvalidDimension(f"capacities must be positive, got {h_capacity}, {v_capacity}")
    return Grid(canvas, n_cols, n_rows, h_capacity, v_capacity)


def node_bbox(node: Node, pose: Pose) -> tuple[float, float, float, float]:
    """(x1, y1, x2, y2) of the node's outline at the given center pose.

    Orientation never changes the outline because widths/heights are preserved
    by all four mirrorings.
    """
    hw, hh = node.width / 2.0, node.height / 2.0
    return pose.x - hw, pose.y - hh, pose.x + hw, pose.y + hh


def bbox_inside_canvas(bbox, canvas: Canvas, tol: float = 0.0) -> bool:
    x1, y1, x2, y2 = bbox
    return x1 >= -tol and y1 >= -tol and x2 <= canvas.width + tol and y2 <= canvas.height + tol


def overlap_area(a, b) -> float:
    """Positive-area intersection of two bboxes; 0.0 when they only touch."""
    w = min(a[2], b[2]) - max(a[0], b[0])
    h = min(a[3], b[3]) - max(a[1], b[1])
    if w <= 0.0 or h <= 0.0:
        return 0.0
    return w * h


def boxes_overlap(a, b, tol: float = 0.0) -> bool:
    """True when the boxes share positive area beyond tol in both axes."""
    return (min(a[2], b[2]) - max(a[0], b[0]) > tol) and (min(a[3], b[3]) - max(a[1], b[1]) > tol)


def is_legal_macro_location(
    netlist: Netlist,
    placement: Placement,
    macro_id: str,
    cell: tuple[int, int],
    orient: Orientation,
    grid: Grid,
) -> bool:
    """Whether a macro may sit at the given cell center with this orientation.

    Legal means the bounding box stays inside the canvas and shares no
    positive area with any other placed macro; touching edges is allowed. The
    orientation cannot change the outline (mirrors preserve extents) but is
    part of the location contract.
    """
    if not netlist.has_node(macro_id):
        raise UnknownNode(f"no node {macro_id!r} in netlist")
    node = netlist.node(macro_id)
    cx, cy = grid.cell_center(*cell)
    box = node_bbox(node, Pose(cx, cy, orient))
    tol = grid.tol
    if not bbox_inside_canvas(box, netlist.canvas, tol):
        return False
    for other in netlist.nodes:
        if other.kind != NodeKind.MACRO or other.name == macro_id:
            continue
        pose = placement.get(other.name)
        if pose is not None and boxes_overlap(box, node_bbox(other, pose), tol):
            return False
    return True


def placement_is_legal(netlist: Netlist, placement: Placement, grid: Grid) -> bool:
    """Every movable macro in-canvas and overlap-free against all other macros."""
    tol = grid.tol
    macros = [n for n in netlist.nodes if n.kind == NodeKind.MACRO]
    boxes = {}
    for n in macros:
        if n.name in placement:
            boxes[n.name] = node_bbox(n, placement[n.name])
    for n in macros:
        if not n.movable:
            continue
        if n.name not in placement:
            return False
        box = boxes[n.name]
        if not bbox_inside_canvas(box, netlist.canvas, tol):
            return False
        for other in macros:
            if other.name == n.name or other.name not in boxes:
                continue
            if boxes_overlap(box, boxes[other.name], tol):
                return False
    return True
