"""Brute-force reference implementations used to freeze expected test values.

Every quantity is recomputed here with plain Python loops and stdlib math so
that agreement with the package's vectorized evaluator is evidence rather
than tautology. Only data containers (netlist nodes/nets, grids, poses) are
shared with the package; nothing is imported from its cost, force, or
annealing modules.

Grids are nested lists indexed [col][row]; cell (0, 0) is the lower-left
cell; h[c][r] is demand on the right boundary of cell (c, r), v[c][r] on the
top boundary.
"""

from __future__ import annotations

import math

from gridplace.netlist import NodeKind

# Orientation value -> (sign_x, sign_y) applied to pin offsets.
SIGNS = {"N": (1, 1), "FN": (-1, 1), "S": (-1, -1), "FS": (1, -1)}


def zeros(n_cols, n_rows):
    return [[0.0] * n_rows for _ in range(n_cols)]


def flatten(grid):
    return [x for col in grid for x in col]


def add_grids(a, b):
    return [[x + y for x, y in zip(ca, cb)] for ca, cb in zip(a, b)]


def top_mean(values, fraction):
    """Mean of the k = clamp(ceil(fraction * n), 1, n) largest values."""
    n = len(values)
    if n == 0:
        raise ValueError("no values to pool")
    k = max(1, min(math.ceil(fraction * n), n))
    ranked = sorted(values, reverse=True)
    return sum(ranked[:k]) / k


def rect_overlap(a, b):
    """Overlap area of axis-aligned boxes given as (x1, y1, x2, y2)."""
    w = min(a[2], b[2]) - max(a[0], b[0])
    h = min(a[3], b[3]) - max(a[1], b[1])
    if w > 0.0 and h > 0.0:
        return w * h
    return 0.0


# ---------------------------------------------------------------------------
# Pin geometry


def pin_points(netlist, placement, net):
    """Absolute pin positions: center + orientation-signed offset."""
    pts = []
    for pin in net.pins:
        pose = placement[pin.node]
        sx, sy = SIGNS[pose.orient.value]
        pts.append((pose.x + sx * pin.dx, pose.y + sy * pin.dy))
    return pts


def cell_of(px, py, grid):
    """Containing cell by floored division, clamped onto the grid."""
    col = min(max(int(math.floor(px / grid.cell_w)), 0), grid.n_cols - 1)
    row = min(max(int(math.floor(py / grid.cell_h)), 0), grid.n_rows - 1)
    return col, row


# ---------------------------------------------------------------------------
# Wirelength


def wirelength(netlist, placement):
    """Mean over nets of weight * HPWL / (canvas width + height)."""
    total = 0.0
    for net in netlist.nets:
        pts = pin_points(netlist, placement, net)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        total += net.weight * (max(xs) - min(xs) + max(ys) - min(ys))
    cv = netlist.canvas
    return total / (cv.width + cv.height) / len(netlist.nets)


# ---------------------------------------------------------------------------
# Density


def occupancy_boxes(netlist, placement):
    """Footprints of area-carrying nodes (macros and clusters, never ports)."""
    boxes = []
    for node in netlist.nodes:
        if node.kind not in (NodeKind.MACRO, NodeKind.CLUSTER):
            continue
        pose = placement[node.name]
        boxes.append((pose.x - node.width / 2.0, pose.y - node.height / 2.0,
                      pose.x + node.width / 2.0, pose.y + node.height / 2.0))
    return boxes


def density_grid(netlist, placement, grid):
    """Per-cell total overlap area / cell area."""
    boxes = occupancy_boxes(netlist, placement)
    cell_area = grid.cell_w * grid.cell_h
    out = zeros(grid.n_cols, grid.n_rows)
    for c in range(grid.n_cols):
        for r in range(grid.n_rows):
            cell = (c * grid.cell_w, r * grid.cell_h,
                    (c + 1) * grid.cell_w, (r + 1) * grid.cell_h)
            acc = 0.0
            for box in boxes:
                acc += rect_overlap(box, cell)
            out[c][r] = acc / cell_area
    return out


def density(netlist, placement, grid):
    return top_mean(flatten(density_grid(netlist, placement, grid)), 0.10)


# ---------------------------------------------------------------------------
# Macro congestion: a macro body consumes capacity on every cell boundary
# strictly inside its footprint, in proportion to the overlap length.


def macro_demand(netlist, placement, grid, h_usage=1.0, v_usage=1.0):
    h = zeros(grid.n_cols, grid.n_rows)
    v = zeros(grid.n_cols, grid.n_rows)
    for node in netlist.nodes:
        if node.kind is not NodeKind.MACRO:
            continue
        pose = placement[node.name]
        x1 = pose.x - node.width / 2.0
        x2 = pose.x + node.width / 2.0
        y1 = pose.y - node.height / 2.0
        y2 = pose.y + node.height / 2.0
        for c in range(grid.n_cols):
            bx = (c + 1) * grid.cell_w
            if not (x1 < bx < x2):
                continue
            for r in range(grid.n_rows):
                lo = r * grid.cell_h
                ov = min(y2, lo + grid.cell_h) - max(y1, lo)
                if ov > 0.0:
                    h[c][r] += ov * h_usage / grid.h_capacity
        for r in range(grid.n_rows):
            by = (r + 1) * grid.cell_h
            if not (y1 < by < y2):
                continue
            for c in range(grid.n_cols):
                lo = c * grid.cell_w
                ov = min(x2, lo + grid.cell_w) - max(x1, lo)
                if ov > 0.0:
                    v[c][r] += ov * v_usage / grid.v_capacity
    return h, v


# ---------------------------------------------------------------------------
# Net routing demand: a cell-stepping walker over the chosen route pattern.


def _walk_h(h, weight, row, c0, c1):
    # Step cell by cell; the boundary between c and c+1 belongs to cell c.
    c = c0
    while c != c1:
        nxt = c + (1 if c1 > c else -1)
        h[min(c, nxt)][row] += weight
        c = nxt


def _walk_v(v, weight, col, r0, r1):
    r = r0
    while r != r1:
        nxt = r + (1 if r1 > r else -1)
        v[col][min(r, nxt)] += weight
        r = nxt


def _l_route(h, v, weight, src, dst):
    # Horizontal arm at the source row first, then the vertical arm at the
    # destination column.
    _walk_h(h, weight, src[1], src[0], dst[0])
    _walk_v(v, weight, dst[0], src[1], dst[1])


def _route_three(h, v, weight, src, sinks):
    # Scan pairs over [source] + sinks sorted by (col, row); the first pair
    # sharing a row (checked before a shared column) contributes a straight
    # segment, and the third cell branches off the nearer endpoint by
    # Manhattan distance (ties keep the earlier endpoint).
    ordered = [src] + sorted(sinks)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        a, b = ordered[i], ordered[j]
        third = ordered[3 - i - j]
        if a[1] == b[1]:
            _walk_h(h, weight, a[1], a[0], b[0])
        elif a[0] == b[0]:
            _walk_v(v, weight, a[0], a[1], b[1])
        else:
            continue
        da = abs(third[0] - a[0]) + abs(third[1] - a[1])
        db = abs(third[0] - b[0]) + abs(third[1] - b[1])
        _l_route(h, v, weight, a if da <= db else b, third)
        return
    for s in sinks:
        _l_route(h, v, weight, src, s)


def route_demand(h, v, weight, src, sinks):
    """Add one net's routing demand; src and sinks are distinct cells."""
    if not sinks:
        return
    if len(sinks) == 1:
        _l_route(h, v, weight, src, sinks[0])
    elif len(sinks) == 2:
        _route_three(h, v, weight, src, sinks)
    else:
        for s in sinks:
            _l_route(h, v, weight, src, s)


def net_demand(netlist, placement, grid):
    """Summed per-net routing demand / boundary capacity."""
    h = zeros(grid.n_cols, grid.n_rows)
    v = zeros(grid.n_cols, grid.n_rows)
    for net in netlist.nets:
        pts = pin_points(netlist, placement, net)
        cells = [cell_of(px, py, grid) for px, py in pts]
        src = cells[net.source_index()]
        sinks = sorted(set(c for c in cells if c != src))
        route_demand(h, v, net.weight, src, sinks)
    for c in range(grid.n_cols):
        for r in range(grid.n_rows):
            h[c][r] /= grid.h_capacity
            v[c][r] /= grid.v_capacity
    return h, v


# ---------------------------------------------------------------------------
# Smoothing: scatter each entry uniformly over its own edge-truncated window.


def smooth(values, radius, axis):
    n_cols = len(values)
    n_rows = len(values[0])
    out = zeros(n_cols, n_rows)
    for c in range(n_cols):
        for r in range(n_rows):
            val = values[c][r]
            if axis == 0:
                lo = max(c - radius, 0)
                hi = min(c + radius, n_cols - 1)
                share = val / (hi - lo + 1)
                for cc in range(lo, hi + 1):
                    out[cc][r] += share
            else:
                lo = max(r - radius, 0)
                hi = min(r + radius, n_rows - 1)
                share = val / (hi - lo + 1)
                for rr in range(lo, hi + 1):
                    out[c][rr] += share
    return out


# ---------------------------------------------------------------------------
# Congestion and full proxy composition


def congestion_surfaces(netlist, placement, grid, radius=2,
                        h_usage=1.0, v_usage=1.0):
    """Macro demand plus smoothed net demand, per direction."""
    hm, vm = macro_demand(netlist, placement, grid, h_usage, v_usage)
    hn, vn = net_demand(netlist, placement, grid)
    hc = add_grids(hm, smooth(hn, radius, axis=0))
    vc = add_grids(vm, smooth(vn, radius, axis=1))
    return hc, vc


def congestion(netlist, placement, grid, radius=2, h_usage=1.0, v_usage=1.0):
    hc, vc = congestion_surfaces(netlist, placement, grid, radius,
                                 h_usage, v_usage)
    return top_mean(flatten(hc) + flatten(vc), 0.05)


def components(netlist, placement, grid, radius=2, h_usage=1.0, v_usage=1.0):
    return (wirelength(netlist, placement),
            density(netlist, placement, grid),
            congestion(netlist, placement, grid, radius, h_usage, v_usage))


def proxy_total(wl, dens, cong, gamma, lam):
    return wl + gamma * dens + lam * cong


# ---------------------------------------------------------------------------
# Rank correlation: O(n^2) pair counting. The final expression matches the
# package's on identical integer counts, so results agree bit for bit.


def kendall(xs, ys):
    n = len(xs)
    n0 = n * (n - 1) // 2
    nc = nd = n1 = n2 = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = (xs[i] > xs[j]) - (xs[i] < xs[j])
            dy = (ys[i] > ys[j]) - (ys[i] < ys[j])
            if dx == 0:
                n1 += 1
            if dy == 0:
                n2 += 1
            if dx * dy > 0:
                nc += 1
            elif dx * dy < 0:
                nd += 1
    return (nc - nd) / math.sqrt((n0 - n1) * (n0 - n2))
