"""Grid construction and degree-of-freedom bookkeeping for the coupled bar.

Two layouts are supported:

* ``overlap`` -- the nonlocal grid extends one horizon past each interface,
  so the two models coexist on the flanking strips.  Used by the
  matching-displacement and matching-stress methods.
* ``vhcm`` -- the nonlocal grid covers exactly the nonlocal region and the
  local grids may overshoot the interfaces by a small offset ``epsilon``.
  Used by the variable-horizon method.

Node coordinates are always generated from index formulas (never by
accumulating increments) so that coincident nodes compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, GeometryError, RangeError

__all__ = [
    "BarGeometry",
    "Discretization",
    "CoupledGrid",
    "build_overlap_grid",
    "build_vhcm_grid",
    "containing_cell",
]


@dataclass(frozen=True)
class BarGeometry:
    """Bar of length ``length`` with the nonlocal region on (a, b)."""

    length: float = 3.0
    a: float = 1.0
    b: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.a < self.b < self.length:
            raise GeometryError(
                f"need 0 < a < b < length, got a={self.a}, b={self.b}, length={self.length}"
            )


@dataclass(frozen=True)
class Discretization:
    """Grid-size parameters.

    ``delta`` is the horizon radius, ``m`` the number of nonlocal cells per
    horizon (h_delta = delta/m), ``ratio`` the local-to-nonlocal spacing
    ratio h_e/h_delta, and ``epsilon`` the interface offset used by the
    misaligned and variable-horizon configurations.
    """

    delta: float
    m: int = 2
    ratio: float = 2.0
    epsilon: float = 0.0
    tol_div: float = 1e-9

    def __post_init__(self):
        if self.delta <= 0.0:
            raise ConfigurationError(f"horizon must be positive, got {self.delta}")
        if self.m < 1:
            raise ConfigurationError(f"cells per horizon must be >= 1, got {self.m}")
        if self.ratio < 1.0:
            raise ConfigurationError(f"grid ratio h_e/h_delta must be >= 1, got {self.ratio}")
        if self.epsilon < 0.0:
            raise ConfigurationError(f"interface offset must be >= 0, got {self.epsilon}")
        if self.epsilon > 0.0 and self.epsilon >= self.h_delta:
            raise ConfigurationError(
                f"interface offset {self.epsilon} must be smaller than h_delta={self.h_delta}"
            )

    @property
    def h_delta(self) -> float:
        return self.delta / self.m

    @property
    def h_e(self) -> float:
        return self.ratio * self.h_delta


def _exact_cells(length: float, h: float, what: str, tol: float) -> int:
    """Number of cells of size ``h`` in ``length``, or raise if not integral."""
    raw = length / h
    n = round(raw)
    if n < 1 or abs(raw - n) > tol * max(1.0, abs(raw)):
        raise ConfigurationError(f"{what} = {length} is not an integer multiple of {h}")
    return n


@dataclass(frozen=True)
class CoupledGrid:
    """Node sets and index maps shared by all assembly routines.

    The global unknown ordering is the block layout
    ``[u_local_0 .. u_local_{n1}, u_nl_0 .. u_nl_K, u_local_{n1+1} .. u_local_{Ne+1}]``
    where K = n_delta + 2m for the overlap layout and K = n_delta for the
    variable-horizon layout.  Immutable after construction.
    """

    layout: str
    geometry: BarGeometry
    local_nodes: np.ndarray
    nonlocal_nodes: np.ndarray
    n1: int
    n2: int
    n_delta: int
    m: int
    h_e: float
    h_delta: float
    delta: float
    epsilon: float = 0.0

    def __post_init__(self):
        self.local_nodes.setflags(write=False)
        self.nonlocal_nodes.setflags(write=False)

    @property
    def N_e(self) -> int:
        return self.n1 + self.n2

    @property
    def N_delta(self) -> int:
        return self.n_delta + 2 * self.m

    @property
    def n_nonlocal(self) -> int:
        """Number of nonlocal unknowns (last nonlocal node index + 1)."""
        return len(self.nonlocal_nodes)

    @property
    def N(self) -> int:
        """Total number of unknowns."""
        return len(self.local_nodes) + len(self.nonlocal_nodes)

    def gdof_local(self, j: int) -> int:
        """Global column of local node ``j`` (0 .. N_e+1)."""
        if j <= self.n1:
            return j
        return len(self.nonlocal_nodes) + j

    def gdof_nonlocal(self, k: int) -> int:
        """Global column of nonlocal node ``k``."""
        return self.n1 + 1 + k

    def dof_coordinates(self) -> np.ndarray:
        """Coordinates of all unknowns in global ordering."""
        return np.concatenate(
            [
                self.local_nodes[: self.n1 + 1],
                self.nonlocal_nodes,
                self.local_nodes[self.n1 + 1 :],
            ]
        )

    def dof_tags(self) -> list[tuple[str, int]]:
        """(grid tag, node index) of all unknowns in global ordering."""
        tags = [("local", j) for j in range(self.n1 + 1)]
        tags += [("nonlocal", k) for k in range(len(self.nonlocal_nodes))]
        tags += [("local", j) for j in range(self.n1 + 1, self.N_e + 2)]
        return tags


def _local_nodes(
    geom: BarGeometry, n1: int, n2: int, h_e: float, right_start: float, tol: float
) -> np.ndarray:
    left = np.array([j * h_e for j in range(n1 + 1)])
    right = np.array([geom.length - (n2 - i) * h_e for i in range(n2 + 1)])
    # guard against drift in the generated coordinates
    if abs(right[0] - right_start) > 10.0 * tol * max(1.0, geom.length):
        raise ConfigurationError(
            f"right local grid starts at {right[0]}, expected {right_start}"
        )
    return np.concatenate([left, right])


def build_overlap_grid(geom: BarGeometry, disc: Discretization) -> CoupledGrid:
    """Grid for the overlap coupling layout.

    The nonlocal nodes run from one horizon left of the left interface to one
    horizon right of the right interface.  A nonzero ``epsilon`` shifts the
    interior nonlocal span so its end nodes sit at a+epsilon and b-epsilon,
    which requires (b - a - 2 epsilon) to be a multiple of h_delta.
    """
    hd, he, eps = disc.h_delta, disc.h_e, disc.epsilon
    if geom.a <= disc.delta:
        raise GeometryError(f"left interface a={geom.a} must exceed the horizon {disc.delta}")
    if geom.b >= geom.length - disc.delta:
        raise GeometryError(
            f"right interface b={geom.b} must lie below length - horizon = {geom.length - disc.delta}"
        )
    n_delta = _exact_cells(geom.b - geom.a - 2 * eps, hd, "b - a - 2*epsilon", disc.tol_div)
    n1 = _exact_cells(geom.a, he, "a", disc.tol_div)
    n2 = _exact_cells(geom.length - geom.b, he, "length - b", disc.tol_div)
    N_delta = n_delta + 2 * disc.m
    x0 = geom.a + eps - disc.delta
    nonlocal_nodes = np.array([x0 + k * hd for k in range(N_delta + 1)])
    local_nodes = _local_nodes(geom, n1, n2, he, geom.b)
    return CoupledGrid(
        layout="overlap",
        geometry=geom,
        local_nodes=local_nodes,
        nonlocal_nodes=nonlocal_nodes,
        n1=n1,
        n2=n2,
        n_delta=n_delta,
        m=disc.m,
        h_e=he,
        h_delta=hd,
        delta=disc.delta,
        epsilon=eps,
    )


def build_vhcm_grid(geom: BarGeometry, disc: Discretization) -> CoupledGrid:
    """Grid for the variable-horizon layout.

    Nonlocal nodes cover exactly [a, b].  The local grids end at a+epsilon on
    the left and start at b-epsilon on the right, overlapping the nonlocal
    grid by the offset.
    """
    hd, he, eps = disc.h_delta, disc.h_e, disc.epsilon
    n_delta = _exact_cells(geom.b - geom.a, hd, "b - a", disc.tol_div)
    n1 = _exact_cells(geom.a + eps, he, "a + epsilon", disc.tol_div)
    n2 = _exact_cells(geom.length - geom.b + eps, he, "length - b + epsilon", disc.tol_div)
    nonlocal_nodes = np.array([geom.a + k * hd for k in range(n_delta + 1)])
    local_nodes = _local_nodes(geom, n1, n2, he, geom.b - eps)
    return CoupledGrid(
        layout="vhcm",
        geometry=geom,
        local_nodes=local_nodes,
        nonlocal_nodes=nonlocal_nodes,
        n1=n1,
        n2=n2,
        n_delta=n_delta,
        m=disc.m,
        h_e=he,
        h_delta=hd,
        delta=disc.delta,
        epsilon=eps,
    )


def containing_cell(grid: CoupledGrid, side: str, x: float) -> int:
    """Index j of the local cell [node_j, node_{j+1}] containing ``x``.

    Left-closed convention: a coordinate equal to a node belongs to the cell
    to its right, except at the last node of the side which resolves to the
    adjacent interior cell.
    """
    tol = 1e-12 * max(1.0, grid.geometry.length)
    nodes = grid.local_nodes
    if side == "left":
        lo, hi = 0, grid.n1
    elif side == "right":
        lo, hi = grid.n1 + 1, grid.N_e + 1
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if x < nodes[lo] - tol or x > nodes[hi] + tol:
        raise RangeError(f"{x} lies outside the {side} local span [{nodes[lo]}, {nodes[hi]}]")
    j = lo + int(np.floor((x - nodes[lo]) / grid.h_e + tol))
    return min(max(j, lo), hi - 1)
