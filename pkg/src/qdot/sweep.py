"""Parameter grids, inverse-current classification and zero-current contours."""

from __future__ import annotations

import dataclasses
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .device import DeviceSpec, Lead, OperatingPoint
from .electrostatics import Direct, PaperSymmetric
from .errors import InvalidParameterError, InvariantViolation
from .model import evaluate
from .observables import TransportReport, check_invariants

AXIS_NAMES = ("U", "dT", "dV")
DEAD_BAND = 1e-12


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise InvalidParameterError(f"unknown axis {self.name!r}; expected one of {AXIS_NAMES}")
        values = tuple(float(v) for v in self.values)
        if not values or any(b <= a for a, b in zip(values, values[1:])):
            raise InvalidParameterError(f"axis {self.name} needs strictly increasing values")
        object.__setattr__(self, "values", values)

    @classmethod
    def linspace(cls, name, lo, hi, steps):
        if steps < 2 or not lo < hi:
            raise InvalidParameterError(f"axis {name}: need steps >= 2 and min < max")
        return cls(name, tuple(np.linspace(lo, hi, int(steps))))

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class GridSpec:
    """A 1D or 2D grid over ``U``, ``dT`` and ``dV``.

    Parameters not swept are taken from ``device`` and ``op``.
    """

    axes: tuple
    device: DeviceSpec
    op: OperatingPoint

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        names = [a.name for a in self.axes]
        if not 1 <= len(names) <= 2 or len(set(names)) != len(names):
            raise InvalidParameterError(f"grid needs one or two distinct axes, got {names}")
        if "U" in names and not isinstance(self.device.charging, (PaperSymmetric, Direct)):
            raise InvalidParameterError("U can only be swept with paper_symmetric or direct charging")
        for corner in itertools.product(*[(a.values[0], a.values[-1]) for a in self.axes]):
            self.point(dict(zip(names, corner)))

    @property
    def shape(self) -> tuple:
        return tuple(len(a) for a in self.axes)

    @property
    def names(self) -> tuple:
        return tuple(a.name for a in self.axes)

    def __len__(self):
        return int(np.prod(self.shape))

    def coordinates(self, index: int) -> dict:
        multi = np.unravel_index(index, self.shape)
        return {a.name: a.values[i] for a, i in zip(self.axes, multi)}

    def point(self, coords: dict) -> tuple[DeviceSpec, OperatingPoint]:
        device, op = self.device, self.op
        if "U" in coords:
            charging = dataclasses.replace(device.charging, U=coords["U"])
            device = dataclasses.replace(device, charging=charging)
        changes = {k: coords[k] for k in ("dT", "dV") if k in coords}
        if changes:
            op = dataclasses.replace(op, **changes)
        return device, op


@dataclass(frozen=True)
class PointClassification:
    inverse_particle: bool
    inverse_energy: bool
    dead_band: bool


def _against_both(J, dT, dV, tol):
    if dT > tol and dV > tol:
        return J < -tol
    if dT < -tol and dV < -tol:
        return J > tol
    return False


def classify(report: TransportReport, dT: float, dV: float, tol: float = DEAD_BAND) -> PointClassification:
    """Flag currents that run against both the thermal and the electrical force.

    ``dead_band`` marks points where either current is numerically zero.
    """
    flags = PointClassification(
        inverse_particle=_against_both(report.J_rho, dT, dV, tol),
        inverse_energy=_against_both(report.J_u, dT, dV, tol),
        dead_band=abs(report.J_rho) <= tol or abs(report.J_u) <= tol,
    )
    if flags.inverse_particle and flags.inverse_energy:
        raise InvariantViolation(f"both currents inverse at dT={dT}, dV={dV}")
    return flags


class SweepPointError(RuntimeError):
    def __init__(self, coords, cause):
        super().__init__(f"evaluation failed at {coords}: {cause}")
        self.coords = coords
        self.cause = cause


def _evaluate_point(grid: GridSpec, index: int, tol: float):
    coords = grid.coordinates(index)
    try:
        device, op = grid.point(coords)
        report = check_invariants(evaluate(device, op))
        flags = classify(report, op.dT, op.dV, tol)
    except InvariantViolation as exc:
        raise InvariantViolation(f"at {coords}: {exc}") from exc
    except Exception as exc:
        raise SweepPointError(coords, exc) from exc
    return report, flags


def _evaluate_chunk(grid, indices, tol):
    return [_evaluate_point(grid, i, tol) for i in indices]


@dataclass(frozen=True)
class SweepResult:
    grid: GridSpec
    reports: tuple
    flags: tuple
    tol: float = DEAD_BAND

    def field(self, name: str) -> np.ndarray:
        """Report attribute or classification flag ``name`` shaped like the grid."""
        if name in ("inverse_particle", "inverse_energy", "dead_band"):
            data = [getattr(f, name) for f in self.flags]
        elif name in ("p00", "p10", "p01", "p11"):
            k = ("p00", "p10", "p01", "p11").index(name)
            data = [r.p[k] for r in self.reports]
        else:
            data = [getattr(r, name) for r in self.reports]
        return np.array(data).reshape(self.grid.shape)

    def coordinate_arrays(self) -> list[np.ndarray]:
        return np.meshgrid(*[np.array(a.values) for a in self.grid.axes], indexing="ij")

    def rows(self):
        for i, (report, flags) in enumerate(zip(self.reports, self.flags)):
            yield self.grid.coordinates(i), report, flags


def sweep(grid: GridSpec, tol: float = DEAD_BAND, workers: int = 1) -> SweepResult:
    """Evaluate every grid point; rows are stored in row-major order.

    With ``workers > 1`` points are evaluated in a process pool. Each point is
    an independent pure computation, so the result does not depend on
    ``workers``.
    """
    n = len(grid)
    if workers <= 1:
        results = _evaluate_chunk(grid, range(n), tol)
    else:
        chunks = np.array_split(np.arange(n), workers * 4)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_evaluate_chunk, itertools.repeat(grid), [c.tolist() for c in chunks], itertools.repeat(tol))
            results = [r for part in parts for r in part]
    reports, flags = zip(*results)
    return SweepResult(grid, reports, flags, tol)


# --- zero-current contours -------------------------------------------------


def _bisect_edge(func, a, b, fa, scale, max_iter=200):
    """Root of ``func`` on the segment ``a -> b`` by bisection on the parameter."""
    lo, hi = 0.0, 1.0
    s_lo = fa >= 0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        x = a + mid * (b - a)
        fm = func(x)
        if abs(fm) <= 1e-12 * scale:
            return x
        if (fm >= 0) == s_lo:
            lo = mid
        else:
            hi = mid
    return a + 0.5 * (lo + hi) * (b - a)


def zero_contour(result: SweepResult, quantity: str = "J_rho") -> list[np.ndarray]:
    """Polylines along which ``quantity`` vanishes on a 2D sweep.

    Sign changes are detected on grid edges (a value of exactly 0 counts as
    positive), each crossing is located by bisection on fresh model
    evaluations, and crossings are chained cell by cell. Saddle cells are
    resolved with a fresh evaluation at the cell centre.

    Returns a list of ``(k, 2)`` arrays in the grid's axis coordinates. Closed
    contours repeat their first point at the end.
    """
    grid = result.grid
    if len(grid.axes) != 2:
        raise InvalidParameterError("zero_contour needs a 2D grid")
    values = result.field(quantity)
    positive = values >= 0
    xs = [np.array(a.values) for a in grid.axes]
    scale = max(float(np.abs(values).max()), 1.0)

    def func(x):
        device, op = grid.point(dict(zip(grid.names, x)))
        return getattr(evaluate(device, op), quantity)

    def node(i, j):
        return np.array([xs[0][i], xs[1][j]])

    crossings = {}

    def crossing(edge):
        # edge = (axis, i, j): from node (i, j) one step along `axis`
        if edge not in crossings:
            axis, i, j = edge
            i2, j2 = (i + 1, j) if axis == 0 else (i, j + 1)
            crossings[edge] = _bisect_edge(func, node(i, j), node(i2, j2), values[i, j], scale)
        return crossings[edge]

    segments = []
    n0, n1 = values.shape
    for i in range(n0 - 1):
        for j in range(n1 - 1):
            c = (positive[i, j], positive[i + 1, j], positive[i + 1, j + 1], positive[i, j + 1])
            bottom, right, top, left = (0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j)
            sides = [e for e, (u, v) in zip((bottom, right, top, left), zip(c, c[1:] + c[:1])) if u != v]
            if len(sides) == 2:
                segments.append(tuple(sides))
            elif len(sides) == 4:
                centre = 0.5 * (node(i, j) + node(i + 1, j + 1))
                if (func(centre) >= 0) == c[0]:
                    segments += [(bottom, right), (top, left)]
                else:
                    segments += [(left, bottom), (right, top)]

    adjacency = {}
    for a, b in segments:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)

    polylines = []
    visited = set()

    def walk(start):
        path = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nxt = [e for e in adjacency[cur] if e != prev and (e not in visited or (e == start and len(path) > 2))]
            if not nxt:
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)
            if cur == start:
                return path
            visited.add(cur)

    # open chains end on the grid boundary (degree 1), walk those first
    for edge in sorted(adjacency):
        if len(adjacency[edge]) == 1 and edge not in visited:
            polylines.append(walk(edge))
    for edge in sorted(adjacency):
        if edge not in visited:
            polylines.append(walk(edge))
    return [np.array([crossing(e) for e in path]) for path in polylines]


@dataclass(frozen=True)
class DisjointnessReport:
    particle_count: int
    energy_count: int
    particle_bbox: tuple | None
    energy_bbox: tuple | None

    @property
    def disjoint(self) -> bool:
        return True


def _bbox(mask, coords):
    if not mask.any():
        return None
    return tuple((float(c[mask].min()), float(c[mask].max())) for c in coords)


def region_disjointness(result: SweepResult) -> DisjointnessReport:
    """Counts and bounding boxes of the inverse-particle and inverse-energy regions.

    Bounding boxes are ``((min, max) per axis)`` in axis order.

    Raises
    ------
    InvariantViolation
        If any point carries both flags.
    """
    particle = result.field("inverse_particle")
    energy = result.field("inverse_energy")
    overlap = particle & energy
    coords = result.coordinate_arrays()
    if overlap.any():
        where = [tuple(float(c[idx]) for c in coords) for idx in zip(*np.nonzero(overlap))]
        raise InvariantViolation(f"inverse regions overlap at {where[:10]}")
    return DisjointnessReport(
        particle_count=int(particle.sum()),
        energy_count=int(energy.sum()),
        particle_bbox=_bbox(particle, coords),
        energy_bbox=_bbox(energy, coords),
    )


# --- near-equilibrium response ---------------------------------------------


@dataclass(frozen=True)
class OnsagerResult:
    L: np.ndarray
    asymmetry: float


def onsager_check(device: DeviceSpec, T: float, h: float = 1e-4) -> OnsagerResult:
    """Linear-response matrix by central differences around equilibrium.

    Fluxes are the particle current ``N_L`` and the mean heat current
    ``(Q_L_out + Q_R_in) / 2``; the conjugate affinities are ``dV / T`` and
    ``dT / T**2``. ``asymmetry`` is ``|L_12 - L_21| / max|L|``.
    """

    def fluxes(dT, dV):
        r = evaluate(device, OperatingPoint(T, dT, dV))
        return np.array([r.N_L, 0.5 * (r.Q_L_out + r.Q_R_in)])

    d_dV = (fluxes(0.0, h) - fluxes(0.0, -h)) / (2 * h)
    d_dT = (fluxes(h, 0.0) - fluxes(-h, 0.0)) / (2 * h)
    L = np.column_stack([T * d_dV, T**2 * d_dT])
    return OnsagerResult(L=L, asymmetry=float(abs(L[0, 1] - L[1, 0]) / np.abs(L).max()))
