"""Placement proxy cost: wirelength + weighted density + weighted congestion.

All three components are computed on a clustered netlist over a uniform grid:

  * wirelength: mean over nets of weight * HPWL(net) / (canvas_w + canvas_h),
    pin positions honoring node orientation.
  * density: per-cell sum of macro/cluster bbox overlap divided by cell area
    (values can exceed 1), averaged over the densest 10% of cells.
  * congestion: per-boundary demand/capacity from two sources. Macros consume
    tracks on every cell boundary their outline crosses; nets consume tracks
    along rectilinear routes between the grid cells holding their pins. Net
    demand is smoothed along the routing direction, macro demand is not. The
    cost is the mean of the top 5% of all horizontal and vertical values
    pooled together.

Routing patterns by the number of distinct pin cells k:
  k=1 ignored; k=2 an L (horizontal arm first, leaving the source cell);
  k=3 a shared straight segment plus a branched L when two cells share a row
  or column, else a star; k>3 a star of k-1 L routes from the source cell.

Grids are numpy arrays indexed [col, row]; cell (0, 0) is lower-left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyCellSet, EmptyNetlist, MissingLocation, OutOfRange
from .geometry import Grid
from .netlist import ORIENT_SIGNS, Netlist, NodeKind, Placement

DEFAULT_GAMMA = 0.5
DEFAULT_LAMBDA = 0.5


@dataclass(frozen=True)
class ProxyWeights:
    gamma: float = DEFAULT_GAMMA   # density weight
    lam: float = DEFAULT_LAMBDA    # congestion weight

    def __post_init__(self):
        for name, v in (("gamma", self.gamma), ("lam", self.lam)):
            if not math.isfinite(v) or v < 0:
                raise OutOfRange(f"{name} must be finite and >= 0, got {v}")


@dataclass(frozen=True)
class CostConfig:
    smooth_radius: int = 2
    macro_h_usage: float = 1.0     # tracks consumed per unit boundary length
    macro_v_usage: float = 1.0


@dataclass(frozen=True)
class ProxyBreakdown:
    wirelength: float
    density: float
    congestion: float
    total: float

    @staticmethod
    def combine(wirelength: float, density: float, congestion: float, weights: ProxyWeights) -> "ProxyBreakdown":
        total = wirelength + weights.gamma * density + weights.lam * congestion
        return ProxyBreakdown(wirelength, density, congestion, total)


@dataclass(frozen=True)
class CongestionGrids:
    """Demand/capacity ratios per cell boundary, net demand unsmoothed."""

    h_macro: np.ndarray
    v_macro: np.ndarray
    h_net: np.ndarray
    v_net: np.ndarray

    def combined(self, radius: int) -> tuple[np.ndarray, np.ndarray]:
        h = self.h_macro + smooth_grid(self.h_net, radius, axis=0)
        v = self.v_macro + smooth_grid(self.v_net, radius, axis=1)
        return h, v


def top_fraction_mean(values: np.ndarray, fraction: float) -> float:
    """Mean of the ceil(fraction * len) largest values."""
    flat = np.asarray(values, dtype=float).ravel()
    if flat.size == 0:
        raise EmptyCellSet("no values to pool")
    k = math.ceil(fraction * flat.size)
    k = max(1, min(k, flat.size))
    ordered = np.sort(flat)
    return float(np.mean(ordered[flat.size - k:]))


def smooth_grid(values: np.ndarray, radius: int, axis: int) -> np.ndarray:
    """Spread each entry uniformly over a (2*radius+1) window along axis.

    Windows truncate at the grid edge and each entry divides by its own actual
    window size, so the total mass is conserved.
    """
    a = np.asarray(values, dtype=float)
    if radius < 0:
        raise OutOfRange(f"radius must be nonnegative, got {radius}")
    n = a.shape[axis]
    if radius == 0 or n == 1:
        return a.copy()
    idx = np.arange(n)
    lo = np.maximum(idx - radius, 0)
    hi = np.minimum(idx + radius, n - 1)
    wsize = (hi - lo + 1).astype(float)
    shape = [1, 1]
    shape[axis] = n
    contrib = a / wsize.reshape(shape)
    c = np.cumsum(contrib, axis=axis)
    top = np.take(c, hi, axis=axis)
    bot = np.take(c, np.maximum(idx - radius - 1, 0), axis=axis)
    mask = (idx - radius - 1 >= 0).reshape(shape)
    return top - np.where(mask, bot, 0.0)


# ---------------------------------------------------------------------------
# Routing patterns


def _l_route_segments(src: tuple[int, int], dst: tuple[int, int]):
    """Segments of an L route, horizontal arm first from the source cell.

    Returns (h_segs, v_segs); an h_seg (row, lo, hi) crosses the right
    boundaries of columns lo..hi-1 in that row, a v_seg (col, lo, hi) the top
    boundaries of rows lo..hi-1 in that column.
    """
    (c1, r1), (c2, r2) = src, dst
    h_segs = []
    v_segs = []
    if c1 != c2:
        h_segs.append((r1, min(c1, c2), max(c1, c2)))
    if r1 != r2:
        v_segs.append((c2, min(r1, r2), max(r1, r2)))
    return h_segs, v_segs


def _three_cell_segments(cells: list[tuple[int, int]]):
    """Route three distinct cells; cells[0] is the source.

    If two cells share a row or column, that straight segment is routed once
    and an L branches to the third cell from the nearer endpoint (Manhattan
    distance, ties to the first endpoint). Otherwise a source-anchored star.
    """
    ordered = [cells[0]] + sorted(cells[1:])
    for i, j in ((0, 1), (0, 2), (1, 2)):
        a, b = ordered[i], ordered[j]
        third = ordered[3 - i - j]
        if a[1] == b[1]:  # shared row
            h_segs = [(a[1], min(a[0], b[0]), max(a[0], b[0]))]
            v_segs = []
        elif a[0] == b[0]:  # shared column
            h_segs = []
            v_segs = [(a[0], min(a[1], b[1]), max(a[1], b[1]))]
        else:
            continue
        da = abs(third[0] - a[0]) + abs(third[1] - a[1])
        db = abs(third[0] - b[0]) + abs(third[1] - b[1])
        branch = a if da <= db else b
        h2, v2 = _l_route_segments(branch, third)
        return h_segs + h2, v_segs + v2
    h_segs = []
    v_segs = []
    for sink in ordered[1:]:
        h, v = _l_route_segments(ordered[0], sink)
        h_segs += h
        v_segs += v
    return h_segs, v_segs


def net_route_segments(source_cell: tuple[int, int], sink_cells, weight_unused=None):
    """All boundary-crossing segments for one net's distinct cells."""
    sinks = []
    seen = {tuple(source_cell)}
    for c in sink_cells:
        c = tuple(c)
        if c not in seen:
            seen.add(c)
            sinks.append(c)
    if not sinks:
        return [], []
    if len(sinks) == 1:
        return _l_route_segments(tuple(source_cell), sinks[0])
    if len(sinks) == 2:
        return _three_cell_segments([tuple(source_cell)] + sinks)
    h_segs = []
    v_segs = []
    for sink in sinks:
        h, v = _l_route_segments(tuple(source_cell), sink)
        h_segs += h
        v_segs += v
    return h_segs, v_segs


def route_net(source_cell, sink_cells, weight: float, grid: Grid):
    """Raw routing demand of one net as (H, V) arrays, [col, row] indexed.

    H[c, r] counts weight-scaled crossings of the right boundary of cell
    (c, r); V likewise for top boundaries. Capacity is not applied here.
    """
    for c in [tuple(source_cell)] + [tuple(c) for c in sink_cells]:
        if not (0 <= c[0] < grid.n_cols and 0 <= c[1] < grid.n_rows):
            raise OutOfRange(f"cell {c} outside {grid.n_cols} x {grid.n_rows} grid")
    h = np.zeros((grid.n_cols, grid.n_rows))
    v = np.zeros((grid.n_cols, grid.n_rows))
    h_segs, v_segs = net_route_segments(source_cell, sink_cells)
    for row, lo, hi in h_segs:
        h[lo:hi, row] += weight
    for col, lo, hi in v_segs:
        v[col, lo:hi] += weight
    return h, v


# ---------------------------------------------------------------------------
# Evaluator: build static arrays once, evaluate placements many times


class Evaluator:
    """Vectorized proxy-cost evaluation for a fixed netlist and grid."""

    def __init__(self, netlist: Netlist, grid: Grid, config: CostConfig | None = None):
        self.netlist = netlist
        self.grid = grid
        self.config = config or CostConfig()
        self._node_names = [n.name for n in netlist.nodes]
        self._node_idx = {n.name: i for i, n in enumerate(netlist.nodes)}
        n = len(netlist.nodes)
        self._half_w = np.array([nd.width / 2.0 for nd in netlist.nodes])
        self._half_h = np.array([nd.height / 2.0 for nd in netlist.nodes])
        kinds = [nd.kind for nd in netlist.nodes]
        self._density_mask = np.array([k in (NodeKind.MACRO, NodeKind.CLUSTER) for k in kinds])
        self._macro_mask = np.array([k == NodeKind.MACRO for k in kinds])

        pin_owner = []
        pin_dx = []
        pin_dy = []
        net_sizes = []
        src_pin = []
        weights = []
        for net in netlist.nets:
            si = net.source_index()
            src_pin.append(len(pin_owner) + si)
            net_sizes.append(len(net.pins))
            weights.append(net.weight)
            for p in net.pins:
                pin_owner.append(self._node_idx[p.node])
                pin_dx.append(p.dx)
                pin_dy.append(p.dy)
        self._pin_owner = np.array(pin_owner, dtype=np.intp)
        self._pin_dx = np.array(pin_dx)
        self._pin_dy = np.array(pin_dy)
        self._net_weight = np.array(weights)
        self._src_pin = np.array(src_pin, dtype=np.intp)
        sizes = np.array(net_sizes, dtype=np.intp)
        self._net_start = np.concatenate(([0], np.cumsum(sizes)))  # len n_nets + 1
        self._pin_net = np.repeat(np.arange(len(net_sizes), dtype=np.intp), sizes)
        self._n_nets = len(net_sizes)
        # Column/row edge coordinates for separable overlap accumulation.
        g = grid
        self._col_edges = np.arange(g.n_cols + 1) * g.cell_w
        self._row_edges = np.arange(g.n_rows + 1) * g.cell_h
        self._n = n

    # -- placement decoding

    def node_arrays(self, placement: Placement):
        """(x, y, sx, sy) arrays in node order; every node must be placed."""
        n = self._n
        x = np.empty(n)
        y = np.empty(n)
        sx = np.empty(n)
        sy = np.empty(n)
        for i, name in enumerate(self._node_names):
            pose = placement.get(name)
            if pose is None:
                raise MissingLocation(f"node {name!r} has no location")
            x[i] = pose[0]
            y[i] = pose[1]
            s = ORIENT_SIGNS[pose[2]]
            sx[i] = s[0]
            sy[i] = s[1]
        return x, y, sx, sy

    def _pin_xy(self, x, y, sx, sy):
        o = self._pin_owner
        px = x[o] + sx[o] * self._pin_dx
        py = y[o] + sy[o] * self._pin_dy
        return px, py

    # -- components

    def wirelength_from_arrays(self, x, y, sx, sy) -> float:
        if self._n_nets == 0:
            return 0.0
        px, py = self._pin_xy(x, y, sx, sy)
        starts = self._net_start[:-1]
        hp = (np.maximum.reduceat(px, starts) - np.minimum.reduceat(px, starts)
              + np.maximum.reduceat(py, starts) - np.minimum.reduceat(py, starts))
        norm = self.netlist.canvas.width + self.netlist.canvas.height
        return float(np.dot(self._net_weight, hp) / norm / self._n_nets)

    def density_grid_from_arrays(self, x, y) -> np.ndarray:
        g = self.grid
        m = self._density_mask
        if not m.any():
            return np.zeros((g.n_cols, g.n_rows))
        x1 = (x - self._half_w)[m]
        x2 = (x + self._half_w)[m]
        y1 = (y - self._half_h)[m]
        y2 = (y + self._half_h)[m]
        # Overlap of [x1, x2] with column i is the difference of the clamped
        # cumulative coverage at consecutive column edges (separable in x/y).
        cx = np.clip(self._col_edges[None, :], x1[:, None], x2[:, None])
        wx = np.diff(cx, axis=1)
        cy = np.clip(self._row_edges[None, :], y1[:, None], y2[:, None])
        wy = np.diff(cy, axis=1)
        return np.einsum("ni,nj->ij", wx, wy) / (g.cell_w * g.cell_h)

    def macro_congestion_from_arrays(self, x, y):
        g = self.grid
        m = self._macro_mask
        h = np.zeros((g.n_cols, g.n_rows))
        v = np.zeros((g.n_cols, g.n_rows))
        if not m.any():
            return h, v
        x1 = (x - self._half_w)[m]
        x2 = (x + self._half_w)[m]
        y1 = (y - self._half_h)[m]
        y2 = (y + self._half_h)[m]
        # Right boundaries sit at the interior + far column edges.
        bx = self._col_edges[1:]
        cross_h = (x1[:, None] < bx[None, :]) & (bx[None, :] < x2[:, None])
        cy = np.clip(self._row_edges[None, :], y1[:, None], y2[:, None])
        wy = np.diff(cy, axis=1)
        h = np.einsum("mc,mr->cr", cross_h.astype(float), wy)
        h *= self.config.macro_h_usage / g.h_capacity
        by = self._row_edges[1:]
        cross_v = (y1[:, None] < by[None, :]) & (by[None, :] < y2[:, None])
        cx = np.clip(self._col_edges[None, :], x1[:, None], x2[:, None])
        wx = np.diff(cx, axis=1)
        v = np.einsum("mr,mc->cr", cross_v.astype(float), wx)
        v *= self.config.macro_v_usage / g.v_capacity
        return h, v

    def net_congestion_from_arrays(self, x, y, sx, sy):
        """Unsmoothed net routing demand / capacity."""
        g = self.grid
        h = np.zeros((g.n_cols, g.n_rows))
        v = np.zeros((g.n_cols, g.n_rows))
        if self._n_nets == 0:
            return h, v
        px, py = self._pin_xy(x, y, sx, sy)
        pc = np.clip(np.floor(px / g.cell_w).astype(np.intp), 0, g.n_cols - 1)
        pr = np.clip(np.floor(py / g.cell_h).astype(np.intp), 0, g.n_rows - 1)
        cell = pc * g.n_rows + pr
        keys = self._pin_net * g.n_cells + cell
        uniq = np.unique(keys)
        unet = uniq // g.n_cells
        ucell = uniq % g.n_cells
        # Distinct-cell count per net, aligned to unique order.
        counts = np.bincount(unet, minlength=self._n_nets)
        src_cell = cell[self._src_pin]
        k_of = counts[unet]
        src_of = src_cell[unet]
        # k == 2 and k > 3 decompose into source-anchored L pairs.
        lmask = (ucell != src_of) & ((k_of == 2) | (k_of >= 4))
        w_of = self._net_weight[unet]
        hdiff = np.zeros((g.n_cols + 1, g.n_rows))
        vdiff = np.zeros((g.n_cols, g.n_rows + 1))
        if lmask.any():
            cs = src_of[lmask] // g.n_rows
            rs = src_of[lmask] % g.n_rows
            ct = ucell[lmask] // g.n_rows
            rt = ucell[lmask] % g.n_rows
            w = w_of[lmask]
            lo_c = np.minimum(cs, ct)
            hi_c = np.maximum(cs, ct)
            np.add.at(hdiff, (lo_c, rs), w)
            np.add.at(hdiff, (hi_c, rs), -w)
            lo_r = np.minimum(rs, rt)
            hi_r = np.maximum(rs, rt)
            np.add.at(vdiff, (ct, lo_r), w)
            np.add.at(vdiff, (ct, hi_r), -w)
        # Three-cell nets keep their special pattern; handled per net.
        tri_nets = np.nonzero(counts == 3)[0]
        if tri_nets.size:
            order = np.argsort(unet, kind="stable")
            starts = np.searchsorted(unet[order], tri_nets)
            for net_i, s in zip(tri_nets, starts):
                cells_flat = ucell[order[s:s + 3]]
                src = int(src_cell[net_i])
                cells = [(int(c) // g.n_rows, int(c) % g.n_rows) for c in cells_flat]
                src_cr = (src // g.n_rows, src % g.n_rows)
                sinks = [c for c in cells if c != src_cr]
                h_segs, v_segs = _three_cell_segments([src_cr] + sinks)
                wt = float(self._net_weight[net_i])
                for row, lo, hi in h_segs:
                    hdiff[lo, row] += wt
                    hdiff[hi, row] -= wt
                for col, lo, hi in v_segs:
                    vdiff[col, lo] += wt
                    vdiff[col, hi] -= wt
        h = np.cumsum(hdiff, axis=0)[:g.n_cols]
        v = np.cumsum(vdiff, axis=1)[:, :g.n_rows]
        return h / g.h_capacity, v / g.v_capacity

    # -- public API

    def congestion_grids(self, placement: Placement) -> CongestionGrids:
        x, y, sx, sy = self.node_arrays(placement)
        hm, vm = self.macro_congestion_from_arrays(x, y)
        hn, vn = self.net_congestion_from_arrays(x, y, sx, sy)
        return CongestionGrids(hm, vm, hn, vn)

    def components(self, placement: Placement) -> tuple[float, float, float]:
        x, y, sx, sy = self.node_arrays(placement)
        wl = self.wirelength_from_arrays(x, y, sx, sy)
        dens = top_fraction_mean(self.density_grid_from_arrays(x, y), 0.10)
        hm, vm = self.macro_congestion_from_arrays(x, y)
        hn, vn = self.net_congestion_from_arrays(x, y, sx, sy)
        r = self.config.smooth_radius
        hc = hm + smooth_grid(hn, r, axis=0)
        vc = vm + smooth_grid(vn, r, axis=1)
        cong = top_fraction_mean(np.concatenate([hc.ravel(), vc.ravel()]), 0.05)
        return wl, dens, cong

    def breakdown(self, placement: Placement, weights: ProxyWeights | None = None) -> ProxyBreakdown:
        wl, dens, cong = self.components(placement)
        return ProxyBreakdown.combine(wl, dens, cong, weights or ProxyWeights())


# ---------------------------------------------------------------------------
# One-shot convenience wrappers


def wirelength_cost(netlist: Netlist, placement: Placement, grid: Grid) -> float:
    if not netlist.nets:
        raise EmptyNetlist("wirelength over zero nets")
    ev = Evaluator(netlist, grid)
    return ev.wirelength_from_arrays(*ev.node_arrays(placement))


def density_cost(netlist: Netlist, placement: Placement, grid: Grid) -> float:
    ev = Evaluator(netlist, grid)
    x, y, _, _ = ev.node_arrays(placement)
    return top_fraction_mean(ev.density_grid_from_arrays(x, y), 0.10)


def density_grid(netlist: Netlist, placement: Placement, grid: Grid) -> np.ndarray:
    ev = Evaluator(netlist, grid)
    x, y, _, _ = ev.node_arrays(placement)
    return ev.density_grid_from_arrays(x, y)


def macro_congestion(netlist: Netlist, placement: Placement, grid: Grid,
                     config: CostConfig | None = None):
    ev = Evaluator(netlist, grid, config)
    x, y, _, _ = ev.node_arrays(placement)
    return ev.macro_congestion_from_arrays(x, y)


def net_congestion(netlist: Netlist, placement: Placement, grid: Grid):
    ev = Evaluator(netlist, grid)
    return ev.net_congestion_from_arrays(*ev.node_arrays(placement))


def congestion_cost(netlist: Netlist, placement: Placement, grid: Grid,
                    config: CostConfig | None = None) -> float:
    ev = Evaluator(netlist, grid, config)
    grids = ev.congestion_grids(placement)
    hc, vc = grids.combined(ev.config.smooth_radius)
    return top_fraction_mean(np.concatenate([hc.ravel(), vc.ravel()]), 0.05)


def proxy_cost(netlist: Netlist, placement: Placement, grid: Grid,
               weights: ProxyWeights | None = None,
               config: CostConfig | None = None) -> ProxyBreakdown:
    return Evaluator(netlist, grid, config).breakdown(placement, weights)
