"""Phase-space domains with membership, signed distance, and normals.

A domain is an open region Omega given implicitly by a signed-distance-like
function (negative inside, zero on the boundary, Lipschitz constant <= 1).
Bounded kinds additionally expose an arclength parametrization of the
boundary used to discretize the incoming/outgoing sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotOnBoundaryError,
    UndefinedNormalError,
    UnsupportedDomainError,
)
from .expressions import Expression, parse_expression

_CORNER_TOL = 1e-9


@dataclass(frozen=True)
class DomainSpec:
    """Open domain Omega in R^N.

    kind: "rectangle" (half-width a, half-height xi), "stadium" (disk of
    radius R cut to |v| < vmax), "disk", "half_space" (x[axis] < bound), or
    "product" (box from per-coordinate intervals).
    """

    kind: str
    dimension: int
    params: tuple

    # -- membership -------------------------------------------------------

    def signed_distance(self, points) -> np.ndarray | float:
        """Negative inside Omega, positive outside, ~0 on the boundary."""
        X = np.asarray(points, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != self.dimension:
            raise DimensionMismatchError(f"points of dimension {X.shape[1]} in {self.dimension}-d domain")
        sd = self._signed_distance(X)
        return float(sd[0]) if single else sd

    def _signed_distance(self, X: np.ndarray) -> np.ndarray:
        if self.kind == "rectangle":
            a, xi = self.params
            return _box_sdf(X, np.array([[-a, a], [-xi, xi]]))
        if self.kind == "stadium":
            R, vmax = self.params
            disk = np.linalg.norm(X, axis=1) - R
            slab = np.abs(X[:, 1]) - vmax
            return np.maximum(disk, slab)
        if self.kind == "disk":
            (R,) = self.params
            return np.linalg.norm(X, axis=1) - R
        if self.kind == "half_space":
            axis, bound = self.params
            return X[:, axis] - bound
        intervals = np.asarray(self.params, dtype=float)
        return _box_sdf(X, intervals)

    def contains(self, points) -> np.ndarray | bool:
        sd = self.signed_distance(points)
        if np.isscalar(sd):
            return sd < 0.0
        return sd < 0.0

    def outward_normal(self, y) -> np.ndarray:
        """Unit outward normal where defined; raises UndefinedNormalError at corners."""
        point = np.asarray(y, dtype=float)
        if self.kind == "disk":
            norm = np.linalg.norm(point)
            if norm == 0.0:
                raise UndefinedNormalError("normal undefined at the center")
            return point / norm
        if self.kind == "half_space":
            axis, _ = self.params
            normal = np.zeros(self.dimension)
            normal[axis] = 1.0
            return normal
        if self.kind == "stadium":
            R, vmax = self.params
            on_arc = abs(np.linalg.norm(point) - R) <= _CORNER_TOL
            on_slab = abs(abs(point[1]) - vmax) <= _CORNER_TOL
            if on_arc and on_slab:
                raise UndefinedNormalError(f"corner point {point}")
            if on_arc:
                return point / np.linalg.norm(point)
            if on_slab:
                return np.array([0.0, np.sign(point[1])])
            raise NotOnBoundaryError(f"{point} is not on the stadium boundary")
        intervals = self._intervals()
        active = []
        for axis in range(self.dimension):
            lo, hi = intervals[axis]
            if abs(point[axis] - lo) <= _CORNER_TOL:
                active.append((axis, -1.0))
            if abs(point[axis] - hi) <= _CORNER_TOL:
                active.append((axis, 1.0))
        if len(active) == 0:
            raise NotOnBoundaryError(f"{point} is not on the boundary")
        if len(active) > 1:
            raise UndefinedNormalError(f"corner point {point}")
        axis, sign = active[0]
        normal = np.zeros(self.dimension)
        normal[axis] = sign
        return normal

    # -- geometry helpers ---------------------------------------------------

    def _intervals(self) -> np.ndarray:
        if self.kind == "rectangle":
            a, xi = self.params
            return np.array([[-a, a], [-xi, xi]])
        if self.kind == "product":
            return np.asarray(self.params, dtype=float)
        raise UnsupportedDomainError(f"{self.kind} has no interval decomposition")

    @property
    def is_bounded(self) -> bool:
        return self.kind in ("rectangle", "stadium", "disk", "product")

    def bounding_box(self) -> np.ndarray:
        """(N, 2) array of [lo, hi] enclosing Omega; raises for unbounded kinds."""
        if self.kind == "rectangle" or self.kind == "product":
            return self._intervals()
        if self.kind == "disk":
            (R,) = self.params
            return np.array([[-R, R]] * self.dimension)
        if self.kind == "stadium":
            R, vmax = self.params
            return np.array([[-R, R], [-vmax, vmax]])
        raise UnsupportedDomainError(f"{self.kind} is unbounded")

    # -- boundary arclength parametrization (2-d bounded kinds) -------------

    def perimeter(self) -> float:
        return sum(length for _, length in self._boundary_pieces())

    def _boundary_pieces(self):
        """Ordered (piece, length) pairs walking the boundary counterclockwise."""
        if self.dimension != 2 or not self.is_bounded:
            raise UnsupportedDomainError(f"no boundary parametrization for kind {self.kind}")
        if self.kind == "disk":
            (R,) = self.params
            return [(("arc", R, -np.pi, np.pi), 2 * np.pi * R)]
        if self.kind in ("rectangle", "product"):
            (lo_x, hi_x), (lo_v, hi_v) = self._intervals()
            return [
                (("seg", (hi_x, lo_v), (hi_x, hi_v)), hi_v - lo_v),
                (("seg", (hi_x, hi_v), (lo_x, hi_v)), hi_x - lo_x),
                (("seg", (lo_x, hi_v), (lo_x, lo_v)), hi_v - lo_v),
                (("seg", (lo_x, lo_v), (hi_x, lo_v)), hi_x - lo_x),
            ]
        R, vmax = self.params
        w = float(np.sqrt(R * R - vmax * vmax))
        theta = float(np.arctan2(vmax, w))
        return [
            (("arc", R, -theta, theta), 2 * theta * R),
            (("seg", (w, vmax), (-w, vmax)), 2 * w),
            (("arc", R, np.pi - theta, np.pi + theta), 2 * theta * R),
            (("seg", (-w, -vmax), (w, -vmax)), 2 * w),
        ]

    def boundary_point(self, s) -> np.ndarray:
        """Boundary point at arclength s (wraps modulo the perimeter)."""
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        pieces = self._boundary_pieces()
        total = sum(length for _, length in pieces)
        s_arr = np.mod(s_arr, total)
        out = np.empty((s_arr.size, 2))
        offset = 0.0
        remaining = np.ones(s_arr.size, dtype=bool)
        for piece, length in pieces:
            mask = remaining & (s_arr <= offset + length + 1e-15)
            local = (s_arr[mask] - offset) / length
            if piece[0] == "seg":
                _, start, end = piece
                start, end = np.asarray(start), np.asarray(end)
                out[mask] = start[None, :] + local[:, None] * (end - start)[None, :]
            else:
                _, R, th0, th1 = piece
                angles = th0 + local * (th1 - th0)
                out[mask] = R * np.stack([np.cos(angles), np.sin(angles)], axis=1)
            remaining &= ~mask
            offset += length
        if np.isscalar(s) or np.asarray(s).ndim == 0:
            return out[0]
        return out

    def boundary_arclength(self, points) -> np.ndarray:
        """Inverse parametrization: arclength of (near-)boundary points."""
        X = np.atleast_2d(np.asarray(points, dtype=float))
        pieces = self._boundary_pieces()
        result = np.empty(X.shape[0])
        best = np.full(X.shape[0], np.inf)
        offset = 0.0
        for piece, length in pieces:
            if piece[0] == "seg":
                _, start, end = piece
                start, end = np.asarray(start), np.asarray(end)
                direction = (end - start) / length
                local = np.clip((X - start) @ direction, 0.0, length)
                foot = start[None, :] + local[:, None] * direction[None, :]
                dist = np.linalg.norm(X - foot, axis=1)
                s_here = offset + local
            else:
                _, R, th0, th1 = piece
                angles = np.arctan2(X[:, 1], X[:, 0])
                # unwrap into [th0, th1]
                angles = np.where(angles < th0 - 1e-12, angles + 2 * np.pi, angles)
                clipped = np.clip(angles, th0, th1)
                foot = R * np.stack([np.cos(clipped), np.sin(clipped)], axis=1)
                dist = np.linalg.norm(X - foot, axis=1)
                s_here = offset + (clipped - th0) * R
            closer = dist < best
            result[closer] = s_here[closer]
            best[closer] = dist[closer]
            offset += length
        return result

    def sample_boundary(self, n: int, jitter_seed: int | None = None) -> np.ndarray:
        """n boundary points, equally spaced in arclength (jittered if seeded)."""
        total = self.perimeter()
        s = (np.arange(n) + 0.5) * total / n
        if jitter_seed is not None:
            rng = np.random.default_rng(jitter_seed)
            s = s + rng.uniform(-0.5, 0.5, n) * total / n
        return self.boundary_point(s)

    def describe(self) -> dict:
        info = {"kind": self.kind, "dimension": self.dimension}
        if self.kind == "rectangle":
            info["a"], info["xi"] = self.params
        elif self.kind == "stadium":
            info["R"], info["vmax"] = self.params
        elif self.kind == "disk":
            (info["R"],) = self.params
        elif self.kind == "half_space":
            info["axis"], info["bound"] = self.params
        else:
            info["intervals"] = [list(pair) for pair in self.params]
        return info


def _box_sdf(X: np.ndarray, intervals: np.ndarray) -> np.ndarray:
    """Exact Euclidean signed distance to an axis-aligned box."""
    center = (intervals[:, 0] + intervals[:, 1]) / 2.0
    half = (intervals[:, 1] - intervals[:, 0]) / 2.0
    q = np.abs(X - center) - half
    outside = np.linalg.norm(np.maximum(q, 0.0), axis=1)
    inside = np.minimum(np.max(q, axis=1), 0.0)
    return outside + inside


def rectangle_domain(a: float, xi: float) -> DomainSpec:
    """Omega = (-a, a) x (-xi, xi)."""
    if a <= 0 or xi <= 0:
        raise ValueError("rectangle half-widths must be positive")
    return DomainSpec(kind="rectangle", dimension=2, params=(float(a), float(xi)))


def stadium_domain(R: float = float(np.sqrt(2.0)), vmax: float = 1.0) -> DomainSpec:
    """Omega = {x^2 + v^2 < R^2} cut to |v| < vmax (vmax < R)."""
    if not (0 < vmax < R):
        raise ValueError("need 0 < vmax < R")
    return DomainSpec(kind="stadium", dimension=2, params=(float(R), float(vmax)))


def disk_domain(R: float) -> DomainSpec:
    if R <= 0:
        raise ValueError("radius must be positive")
    return DomainSpec(kind="disk", dimension=2, params=(float(R),))


def half_space_domain(axis: int, bound: float, dimension: int = 2) -> DomainSpec:
    """Omega = {x : x[axis] < bound}."""
    if not 0 <= axis < dimension:
        raise DimensionMismatchError("half-space axis outside dimension")
    return DomainSpec(kind="half_space", dimension=dimension, params=(int(axis), float(bound)))


def product_domain(intervals) -> DomainSpec:
    intervals = tuple((float(lo), float(hi)) for lo, hi in intervals)
    for lo, hi in intervals:
        if not lo < hi:
            raise ValueError(f"empty interval ({lo}, {hi})")
    return DomainSpec(kind="product", dimension=len(intervals), params=intervals)


@dataclass(frozen=True)
class MeasureSpec:
    """Flow-invariant reference measure: Lebesgue or a product density.

    product_weighted densities are one expression per coordinate, each in the
    single variable x1 standing for that coordinate.
    """

    kind: str
    dimension: int
    densities: tuple[Expression, ...] | None = None
    density_texts: tuple[str, ...] | None = None

    def density(self, points) -> np.ndarray | float:
        X = np.asarray(points, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if self.kind == "lebesgue":
            values = np.ones(X.shape[0])
        else:
            values = np.ones(X.shape[0])
            for axis, expr in enumerate(self.densities):
                values = values * expr(X[:, axis : axis + 1])
            if np.any(values < 0):
                raise ValueError("measure density must be nonnegative")
        return float(values[0]) if single else values

    def describe(self) -> dict:
        info = {"kind": self.kind}
        if self.density_texts is not None:
            info["densities"] = list(self.density_texts)
        return info


def lebesgue_measure(dimension: int = 2) -> MeasureSpec:
    return MeasureSpec(kind="lebesgue", dimension=dimension)


def product_weighted_measure(density_texts, dimension: int) -> MeasureSpec:
    texts = tuple(density_texts)
    if len(texts) != dimension:
        raise DimensionMismatchError(f"{len(texts)} densities for dimension {dimension}")
    densities = tuple(parse_expression(text, 1) for text in texts)
    return MeasureSpec(kind="product_weighted", dimension=dimension, densities=densities, density_texts=texts)
