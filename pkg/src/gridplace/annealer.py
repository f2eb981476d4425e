"""Simulated annealing over macro locations on the placement grid.

State: every movable macro sits at some cell center with one of four
orientations. Proposals are swap (two macros trade cells), shift (one macro to
a 4-adjacent cell), mirror (flip one macro's orientation about an axis), move
(one macro to a uniform random cell), and shuffle (random permutation of four
macros' cells). Illegal proposals are resampled up to 10 times, then the step
becomes a no-op. Acceptance is Metropolis with a geometric cooling schedule.

Soft clusters do not take part in proposals; a force-directed pass relocates
them every fd_interval_multiplier * n_macros evaluated actions, and the cost
keeps the stale cluster locations in between. The final answer re-runs FD on
the best macro placement and re-scores it.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import multiprocessing
from pathlib import Path

import numpy as np

from .clustering import ClusteredNetlist
from .cost import CostConfig, Evaluator, ProxyBreakdown, ProxyWeights
from .errors import InitFailed, MissingLocation, OutOfRange, Unplaceable
from .fd import FDParams, fd_place
from .geometry import Grid
from .netlist import Netlist, NodeKind, Orientation, Placement, Pose, mirror_orientation

log = logging.getLogger(__name__)

ACTIONS = ("swap", "shift", "mirror", "move", "shuffle")
FD_MULTIPLIER_CYCLE = (2, 3, 4, 5)
MAX_PROPOSAL_ATTEMPTS = 10
SHUFFLE_SIZE = 4


@dataclass(frozen=True)
class SAConfig:
    seed: int = 0
    max_steps: int = 10000
    init: str = "spiral"                    # "spiral" | "greedy"
    t_init: float | None = None             # None -> probe-based auto
    cooling_ratio: float = 0.95
    epoch_len: int | None = None            # None -> 10 * n_movable_macros
    action_weights: dict | None = None      # None -> uniform
    fd_interval_multiplier: int | None = None  # None -> cycle keyed by seed
    fd_params: FDParams = field(default_factory=FDParams)
    weights: ProxyWeights = field(default_factory=ProxyWeights)
    cost_config: CostConfig = field(default_factory=CostConfig)
    probe_count: int = 100

    def __post_init__(self):
        if not 0.0 < self.cooling_ratio < 1.0:
            raise OutOfRange(f"cooling_ratio must be in (0, 1), got {self.cooling_ratio}")
        if self.max_steps < 0:
            raise OutOfRange(f"max_steps must be >= 0, got {self.max_steps}")
        if self.epoch_len is not None and self.epoch_len < 1:
            raise OutOfRange(f"epoch_len must be >= 1, got {self.epoch_len}")
        if self.fd_interval_multiplier is not None and self.fd_interval_multiplier < 1:
            raise OutOfRange(f"fd_interval_multiplier must be >= 1, got {self.fd_interval_multiplier}")


@dataclass
class SAResult:
    best_placement: Placement
    best_cost: ProxyBreakdown
    init_cost: ProxyBreakdown
    cost_trace: list
    actions_taken: dict
    steps_run: int
    seed: int
    fd_interval_multiplier: int


@dataclass
class ParallelResult:
    workers: list                       # SAResult of each worker that finished
    best_index: int                     # index into workers
    configs: list                       # config of each finished worker
    failed: list = field(default_factory=list)  # (worker slot, error text)

    @property
    def best(self) -> SAResult:
        return self.workers[self.best_index]


# ---------------------------------------------------------------------------
# Legality bookkeeping over the macro set


class _MacroState:
    """Array-backed overlap/canvas checks for all macros (fixed included)."""

    def __init__(self, netlist: Netlist, grid: Grid, base: Placement, require_fixed=True):
        macros = [n for n in netlist.nodes if n.kind == NodeKind.MACRO]
        self.names = [n.name for n in macros]
        self.index = {n.name: i for i, n in enumerate(macros)}
        self.hw = np.array([n.width / 2.0 for n in macros])
        self.hh = np.array([n.height / 2.0 for n in macros])
        self.movable = np.array([n.movable for n in macros])
        self.x = np.full(len(macros), np.nan)
        self.y = np.full(len(macros), np.nan)
        self.canvas = netlist.canvas
        self.tol = grid.tol
        for i, node in enumerate(macros):
            pose = base.get(node.name)
            if pose is not None:
                self.x[i] = pose[0]
                self.y[i] = pose[1]
            elif not node.movable and require_fixed:
                raise MissingLocation(f"fixed macro {node.name!r} has no location")
        self.movable_names = [n.name for n in macros if n.movable]
        self.movable_idx = np.array([self.index[nm] for nm in self.movable_names], dtype=np.intp)

    def legal_at(self, i: int) -> bool:
        """Current coordinates of macro i are in-canvas and overlap-free."""
        cx, cy = self.x[i], self.y[i]
        hw, hh = self.hw[i], self.hh[i]
        t = self.tol
        if not (cx - hw >= -t and cx + hw <= self.canvas.width + t
                and cy - hh >= -t and cy + hh <= self.canvas.height + t):
            return False
        # NaN coordinates (unplaced) compare False and drop out naturally.
        ox = (self.hw + hw) - np.abs(self.x - cx)
        oy = (self.hh + hh) - np.abs(self.y - cy)
        hit = (ox > t) & (oy > t)
        hit[i] = False
        return not bool(hit.any())

    def try_moves(self, moves) -> bool:
        """Tentatively apply [(i, x, y)]; revert and return False if illegal."""
        olds = [(i, self.x[i], self.y[i]) for i, _, _ in moves]
        for i, nx, ny in moves:
            self.x[i] = nx
            self.y[i] = ny
        for i, _, _ in moves:
            if not self.legal_at(i):
                for j, ox, oy in olds:
                    self.x[j] = ox
                    self.y[j] = oy
                return False
        return True

    def revert(self, olds) -> None:
        for i, ox, oy in olds:
            self.x[i] = ox
            self.y[i] = oy


# ---------------------------------------------------------------------------
# Initial placements


def spiral_cells(n_cols: int, n_rows: int) -> list:
    """Grid cells in counterclockwise inward spiral order from lower-left."""
    out = []
    c0, r0, c1, r1 = 0, 0, n_cols - 1, n_rows - 1
    while c0 <= c1 and r0 <= r1:
        for c in range(c0, c1 + 1):
            out.append((c, r0))
        for r in range(r0 + 1, r1 + 1):
            out.append((c1, r))
        if r1 > r0:
            for c in range(c1 - 1, c0 - 1, -1):
                out.append((c, r1))
        if c1 > c0:
            for r in range(r1 - 1, r0, -1):
                out.append((c0, r))
        c0 += 1
        r0 += 1
        c1 -= 1
        r1 -= 1
    return out


def _place_macros(netlist: Netlist, grid: Grid, fixed: Placement, order, cells) -> Placement:
    st = _MacroState(netlist, grid, fixed)
    placed: Placement = {}
    for node in order:
        i = st.index[node.name]
        for (col, row) in cells:
            cx, cy = grid.cell_center(col, row)
            if st.try_moves([(i, cx, cy)]):
                placed[node.name] = Pose(cx, cy, Orientation.N)
                break
        else:
            raise Unplaceable(node.name)
    return placed


def init_spiral(netlist: Netlist, grid: Grid, fixed: Placement) -> Placement:
    """Each movable macro (input order) takes the first legal cell along a
    counterclockwise inward spiral from the lower-left cell."""
    order = [n for n in netlist.nodes if n.kind == NodeKind.MACRO and n.movable]
    return _place_macros(netlist, grid, fixed, order, spiral_cells(grid.n_cols, grid.n_rows))


def init_greedy_pack(netlist: Netlist, grid: Grid, fixed: Placement) -> Placement:
    """Macros in descending area order take the first legal cell scanning
    row-major from the lower-left corner."""
    movable = [n for n in netlist.nodes if n.kind == NodeKind.MACRO and n.movable]
    order = sorted(range(len(movable)), key=lambda i: (-movable[i].area, i))
    cells = [(c, r) for r in range(grid.n_rows) for c in range(grid.n_cols)]
    return _place_macros(netlist, grid, fixed, [movable[i] for i in order], cells)


INITIALIZERS = {"spiral": init_spiral, "greedy": init_greedy_pack}


# ---------------------------------------------------------------------------
# Annealer


def _action_probs(weights: dict | None) -> np.ndarray:
    if weights is None:
        return np.full(len(ACTIONS), 1.0 / len(ACTIONS))
    bad = set(weights) - set(ACTIONS)
    if bad:
        raise ValueError(f"unknown action(s) {sorted(bad)}; valid: {ACTIONS}")
    p = np.array([max(0.0, float(weights.get(a, 0.0))) for a in ACTIONS])
    s = p.sum()
    if s <= 0:
        raise ValueError("action weights sum to zero")
    return p / s


class _Annealer:
    def __init__(self, cnl: ClusteredNetlist, fixed: Placement, config: SAConfig):
        self.cnl = cnl
        self.netlist = cnl.netlist
        self.grid = cnl.grid
        self.config = config
        self.movable = [n for n in self.netlist.nodes if n.kind == NodeKind.MACRO and n.movable]
        if not self.movable:
            raise InitFailed("no movable macros to anneal")
        base: Placement = {}
        for node in self.netlist.nodes:
            if not node.movable:
                pose = fixed.get(node.name)
                if pose is None:
                    raise MissingLocation(f"fixed node {node.name!r} has no location")
                base[node.name] = pose
        init_fn = INITIALIZERS.get(config.init)
        if init_fn is None:
            raise InitFailed(f"unknown initializer {config.init!r}")
        macros = init_fn(self.netlist, self.grid, base)
        self.placement: Placement = {**base, **macros}
        self.has_clusters = any(
            n.kind == NodeKind.CLUSTER and n.movable for n in self.netlist.nodes
        )
        if self.has_clusters:
            self.placement = fd_place(self.netlist, self.placement, config.fd_params)
        self.evaluator = Evaluator(self.netlist, self.grid, config.cost_config)
        self.state = _MacroState(self.netlist, self.grid, self.placement)
        self.rng = np.random.Generator(np.random.PCG64(config.seed))
        self.probs = _action_probs(config.action_weights)
        n = len(self.movable)
        self.epoch_len = config.epoch_len if config.epoch_len else 10 * n
        mult = config.fd_interval_multiplier
        if mult is None:
            mult = FD_MULTIPLIER_CYCLE[config.seed % len(FD_MULTIPLIER_CYCLE)]
        self.fd_multiplier = mult
        self.fd_every = mult * n
        self.cur = self.evaluator.breakdown(self.placement, config.weights)
        self.init_cost = self.cur
        self.init_snapshot = dict(self.placement)
        self.best_cost = self.cur
        self.best_snapshot = dict(self.placement)

    # -- proposals ---------------------------------------------------------

    def _candidate(self, action: str):
        """One candidate for the action, or None when it cannot be built.

        Returns a list of (name, Pose) updates already vetted for legality
        (arrays in self.state are left in the applied state on success).
        """
        st = self.state
        rng = self.rng
        n = len(st.movable_idx)
        if action == "mirror":
            pick = int(st.movable_idx[rng.integers(n)])
            axis = "x" if rng.integers(2) == 0 else "y"
            name = st.names[pick]
            pose = self.placement[name]
            return [(name, Pose(pose.x, pose.y, mirror_orientation(pose.orient, axis)))]
        if action == "swap":
            if n < 2:
                return None
            a, b = (int(v) for v in rng.choice(n, size=2, replace=False))
            ia, ib = int(st.movable_idx[a]), int(st.movable_idx[b])
            ax, ay = st.x[ia], st.y[ia]
            bx, by = st.x[ib], st.y[ib]
            if not st.try_moves([(ia, bx, by), (ib, ax, ay)]):
                return None
            na, nb = st.names[ia], st.names[ib]
            return [
                (na, Pose(float(bx), float(by), self.placement[na].orient)),
                (nb, Pose(float(ax), float(ay), self.placement[nb].orient)),
            ]
        if action == "shift":
            pick = int(st.movable_idx[rng.integers(n)])
            col, row = self.grid.cell_of_point(st.x[pick], st.y[pick])
            dc, dr = ((1, 0), (-1, 0), (0, 1), (0, -1))[rng.integers(4)]
            col, row = col + dc, row + dr
            if not (0 <= col < self.grid.n_cols and 0 <= row < self.grid.n_rows):
                return None
            cx, cy = self.grid.cell_center(col, row)
            if not st.try_moves([(pick, cx, cy)]):
                return None
            name = st.names[pick]
            return [(name, Pose(cx, cy, self.placement[name].orient))]
        if action == "move":
            pick = int(st.movable_idx[rng.integers(n)])
            col = int(rng.integers(self.grid.n_cols))
            row = int(rng.integers(self.grid.n_rows))
            cx, cy = self.grid.cell_center(col, row)
            if not st.try_moves([(pick, cx, cy)]):
                return None
            name = st.names[pick]
            return [(name, Pose(cx, cy, self.placement[name].orient))]
        if action == "shuffle":
            k = min(SHUFFLE_SIZE, n)
            chosen = [int(v) for v in rng.choice(n, size=k, replace=False)]
            perm = rng.permutation(k)
            idxs = [int(st.movable_idx[c]) for c in chosen]
            olds = [(st.x[i], st.y[i]) for i in idxs]
            moves = [(idxs[t], olds[int(perm[t])][0], olds[int(perm[t])][1]) for t in range(k)]
            if not st.try_moves(moves):
                return None
            out = []
            for t in range(k):
                name = st.names[idxs[t]]
                ox, oy = olds[int(perm[t])]
                out.append((name, Pose(float(ox), float(oy), self.placement[name].orient)))
            return out
        raise ValueError(f"unknown action {action!r}")

    def _revert_candidate(self, updates, old_poses):
        for name, _ in updates:
            i = self.state.index.get(name)
            if i is not None:
                pose = old_poses[name]
                self.state.x[i] = pose.x
                self.state.y[i] = pose.y
        self.placement.update(old_poses)

    def _propose(self):
        """Pick an action and try to instantiate it legally.

        Returns (action, updates, old_poses) where updates is None after 10
        failed attempts. On success the state arrays and placement dict carry
        the candidate; call _revert_candidate to back out.
        """
        action = ACTIONS[int(self.rng.choice(len(ACTIONS), p=self.probs))]
        for _ in range(MAX_PROPOSAL_ATTEMPTS):
            updates = self._candidate(action)
            if updates is None:
                continue
            old_poses = {name: self.placement[name] for name, _ in updates}
            self.placement.update(dict(updates))
            return action, updates, old_poses
        return action, None, None

    # -- temperature -------------------------------------------------------

    def _auto_t_init(self) -> float:
        uphill = []
        for _ in range(self.config.probe_count):
            _, updates, old_poses = self._propose()
            if updates is None:
                continue
            cand = self.evaluator.breakdown(self.placement, self.config.weights)
            self._revert_candidate(updates, old_poses)
            delta = cand.total - self.cur.total
            if delta > 0:
                uphill.append(delta)
        if not uphill:
            return 0.0
        return float(np.median(uphill)) / math.log(2.0)

    # -- main loop ---------------------------------------------------------

    def run(self, deadline=None, accept_audit=None) -> SAResult:
        cfg = self.config
        t = cfg.t_init if cfg.t_init is not None else self._auto_t_init()
        trace = []
        actions_taken = {a: 0 for a in ACTIONS}
        macro_actions = 0
        steps = 0
        if accept_audit is not None:
            accept_audit(-1, self.placement)
        for step in range(cfg.max_steps):
            if deadline is not None and time.monotonic() >= deadline:
                break
            steps = step + 1
            action, updates, old_poses = self._propose()
            actions_taken[action] += 1
            if updates is not None:
                cand = self.evaluator.breakdown(self.placement, cfg.weights)
                delta = cand.total - self.cur.total
                accept = delta <= 0.0 or (t > 0.0 and self.rng.random() < math.exp(-delta / t))
                if accept:
                    self.cur = cand
                    if accept_audit is not None:
                        accept_audit(step, self.placement)
                    if cand.total < self.best_cost.total:
                        self.best_cost = cand
                        self.best_snapshot = dict(self.placement)
                else:
                    self._revert_candidate(updates, old_poses)
                macro_actions += 1
                if self.has_clusters and macro_actions % self.fd_every == 0:
                    self.placement = fd_place(self.netlist, self.placement, cfg.fd_params)
                    self.cur = self.evaluator.breakdown(self.placement, cfg.weights)
                    if self.cur.total < self.best_cost.total:
                        self.best_cost = self.cur
                        self.best_snapshot = dict(self.placement)
            trace.append((step, self.cur.total))
            if (step + 1) % self.epoch_len == 0:
                t *= cfg.cooling_ratio
        # Re-run FD on the best macro placement and re-score. The re-score can
        # exceed the stale-cluster score, so the initialization state (whose
        # re-score is bit-identical by FD determinism) acts as a floor.
        if self.has_clusters:
            final_placement = fd_place(self.netlist, self.best_snapshot, cfg.fd_params)
            final_cost = self.evaluator.breakdown(final_placement, cfg.weights)
        else:
            final_placement = self.best_snapshot
            final_cost = self.best_cost
        if final_cost.total > self.init_cost.total:
            final_placement = self.init_snapshot
            final_cost = self.init_cost
        return SAResult(
            best_placement=final_placement,
            best_cost=final_cost,
            init_cost=self.init_cost,
            cost_trace=trace,
            actions_taken=actions_taken,
            steps_run=steps,
            seed=cfg.seed,
            fd_interval_multiplier=self.fd_multiplier,
        )


def anneal(cnl: ClusteredNetlist, fixed: Placement, config: SAConfig,
           deadline=None, accept_audit=None) -> SAResult:
    """Run one annealing worker. Deterministic given (netlist, config) when no
    deadline cuts it short."""
    return _Annealer(cnl, fixed, config).run(deadline=deadline, accept_audit=accept_audit)


# ---------------------------------------------------------------------------
# Parallel workers


def _worker(args):
    cnl, fixed, config, deadline = args
    return anneal(cnl, fixed, config, deadline=deadline)


def derive_worker_seeds(seeds, n_workers: int) -> list:
    """Block-split seeds over workers: two seeds -> half/half, one per worker
    when counts match, contiguous blocks otherwise."""
    if not seeds:
        raise ValueError("need at least one seed")
    return [seeds[i * len(seeds) // n_workers] for i in range(n_workers)]


def run_parallel(cnl: ClusteredNetlist, fixed: Placement, base_config: SAConfig,
                 n_workers: int, seeds, wall_clock_budget: float | None = None,
                 parallel: bool = True) -> ParallelResult:
    """Run independent annealing workers and keep the lowest-cost result.

    Workers never communicate. Each gets a seed from the block split and, when
    the base config leaves fd_interval_multiplier unset, a multiplier from the
    (2, 3, 4, 5) cycle keyed by its seed. The budget is a shared wall-clock
    window measured from launch.
    """
    if n_workers < 1:
        raise ValueError("n_workers must be >= 1")
    worker_seeds = derive_worker_seeds(list(seeds), n_workers)
    configs = [replace(base_config, seed=s) for s in worker_seeds]
    deadline = time.monotonic() + wall_clock_budget if wall_clock_budget else None
    args = [(cnl, fixed, cfg, deadline) for cfg in configs]
    outcomes: list = [None] * n_workers
    if parallel and n_workers > 1:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=n_workers, mp_context=ctx) as pool:
            futures = [pool.submit(_worker, a) for a in args]
            outcomes = [_future_outcome(f) for f in futures]
    else:
        for i, a in enumerate(args):
            try:
                outcomes[i] = ("ok", _worker(a))
            except Exception as exc:  # keep going; fail only if all workers fail
                outcomes[i] = ("err", exc)
    results = []
    kept_configs = []
    failed = []
    for i, (status, payload) in enumerate(outcomes):
        if status == "ok":
            results.append(payload)
            kept_configs.append(configs[i])
        else:
            log.warning("annealing worker %d failed: %s", i, payload)
            failed.append((i, str(payload)))
    if not results:
        first = next(p for s, p in outcomes if s == "err")
        raise first
    best_index = min(range(len(results)), key=lambda i: (results[i].best_cost.total, i))
    return ParallelResult(workers=results, best_index=best_index,
                          configs=kept_configs, failed=failed)


def _future_outcome(fut):
    try:
        return "ok", fut.result()
    except Exception as exc:
        return "err", exc


def write_trace_csv(result: SAResult, path) -> None:
    lines = ["step,cost"]
    lines += [f"{s},{c!r}" for s, c in result.cost_trace]
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Macro shuffling study op


def shuffle_same_size(netlist: Netlist, placement: Placement, seed: int) -> Placement:
    """Randomly permute poses within groups of identically sized movable
    macros. A macro receives both the location and the orientation of the
    macro whose spot it takes, so legality is preserved exactly."""
    rng = np.random.Generator(np.random.PCG64(seed))
    groups: dict[tuple, list] = {}
    for node in netlist.nodes:
        if node.kind == NodeKind.MACRO and node.movable and node.name in placement:
            groups.setdefault((node.width, node.height), []).append(node.name)
    out = dict(placement)
    for key in groups:
        names = groups[key]
        if len(names) < 2:
            continue
        perm = rng.permutation(len(names))
        poses = [placement[nm] for nm in names]
        for t, nm in enumerate(names):
            out[nm] = poses[int(perm[t])]
    return out
