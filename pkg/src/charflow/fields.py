"""Time-independent Lipschitz vector fields driving the characteristic flow.

Builtin kinds cover the phase-space (position, velocity) structure: free
transport F(x, v) = (v, 0), the harmonic force field F(x, v) = (v, -w^2 x),
and a plane rotation.  Arbitrary fields come from parsed component
expressions.  Every field carries a Lipschitz bound kappa used for flow
stability estimates and safe step control.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import DimensionMismatchError, NonFiniteStateError
from .expressions import Expression, parse_expression


@dataclass(frozen=True)
class VectorFieldSpec:
    """A vector field F: R^N -> R^N with a Lipschitz bound.

    Attributes:
        kind: one of "free_transport", "harmonic", "rotation", "custom".
        dimension: N >= 1 (even for the phase-space kinds).
        lipschitz_bound: kappa with |F(x1)-F(x2)| <= kappa |x1-x2|; exact for
            builtin kinds, user-supplied or sampled for custom fields.
        omega: angular frequency for harmonic / rotation kinds.
        expressions: parsed per-component expressions for custom fields.
    """

    kind: str
    dimension: int
    lipschitz_bound: float
    omega: float | None = None
    expressions: tuple[Expression, ...] | None = None
    expression_texts: tuple[str, ...] | None = dataclass_field(default=None)

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """F applied row-wise to an (m, N) array; returns (m, N)."""
        X = np.asarray(points, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dimension:
            raise DimensionMismatchError(
                f"expected points of shape (m, {self.dimension}), got {X.shape}"
            )
        half = self.dimension // 2
        if self.kind == "free_transport":
            out = np.zeros_like(X)
            out[:, :half] = X[:, half:]
            return out
        if self.kind == "harmonic":
            out = np.empty_like(X)
            out[:, :half] = X[:, half:]
            out[:, half:] = -(self.omega**2) * X[:, :half]
            return out
        if self.kind == "rotation":
            out = np.empty_like(X)
            out[:, 0] = -self.omega * X[:, 1]
            out[:, 1] = self.omega * X[:, 0]
            return out
        columns = [expr(X) for expr in self.expressions]
        return np.stack(columns, axis=1)

    def exact_flow(self, points: np.ndarray, t: float) -> np.ndarray | None:
        """Closed-form flow map for builtin kinds (oracle path); None for custom."""
        X = np.atleast_2d(np.asarray(points, dtype=float))
        half = self.dimension // 2
        if self.kind == "free_transport":
            out = X.copy()
            out[:, :half] += t * X[:, half:]
        elif self.kind == "harmonic":
            w = self.omega
            c, s = np.cos(w * t), np.sin(w * t)
            out = np.empty_like(X)
            out[:, :half] = X[:, :half] * c + X[:, half:] * (s / w)
            out[:, half:] = -X[:, :half] * (w * s) + X[:, half:] * c
        elif self.kind == "rotation":
            a = self.omega * t
            c, s = np.cos(a), np.sin(a)
            out = np.empty_like(X)
            out[:, 0] = c * X[:, 0] - s * X[:, 1]
            out[:, 1] = s * X[:, 0] + c * X[:, 1]
        else:
            return None
        return out if np.asarray(points).ndim == 2 else out[0]

    def describe(self) -> dict:
        info = {"kind": self.kind, "dimension": self.dimension, "lipschitz_bound": self.lipschitz_bound}
        if self.omega is not None:
            info["omega"] = self.omega
        if self.expression_texts is not None:
            info["expressions"] = list(self.expression_texts)
        return info


def free_transport_field(dimension: int = 2) -> VectorFieldSpec:
    """Vlasov free streaming F(x, v) = (v, 0); kappa = 1."""
    if dimension % 2 != 0:
        raise DimensionMismatchError("free transport needs an even phase-space dimension")
    return VectorFieldSpec(kind="free_transport", dimension=dimension, lipschitz_bound=1.0)


def harmonic_field(omega: float = 1.0, dimension: int = 2) -> VectorFieldSpec:
    """Harmonic force field F(x, v) = (v, -omega^2 x); kappa = max(1, omega^2)."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if dimension % 2 != 0:
        raise DimensionMismatchError("harmonic field needs an even phase-space dimension")
    return VectorFieldSpec(
        kind="harmonic",
        dimension=dimension,
        lipschitz_bound=max(1.0, omega**2),
        omega=omega,
    )


def rotation_field(omega: float = 1.0) -> VectorFieldSpec:
    """Counterclockwise plane rotation F(x1, x2) = (-omega x2, omega x1); kappa = omega."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    return VectorFieldSpec(kind="rotation", dimension=2, lipschitz_bound=omega, omega=omega)


def parse_field_expression(
    component_texts,
    dimension: int,
    lipschitz_bound: float | None = None,
    lipschitz_box: tuple | None = None,
    lipschitz_samples: int = 10_000,
    rng_seed: int = 0,
) -> VectorFieldSpec:
    """Build a custom field from one arithmetic expression per component.

    The component count must equal ``dimension``.  When no Lipschitz bound is
    supplied it is estimated by pair sampling over ``lipschitz_box`` (default
    [-1, 1]^N) and inflated by 25% as a safety margin for step control.
    """
    texts = tuple(component_texts)
    if len(texts) != dimension:
        raise DimensionMismatchError(
            f"{len(texts)} component expressions for dimension {dimension}"
        )
    expressions = tuple(parse_expression(text, dimension) for text in texts)
    probe = VectorFieldSpec(
        kind="custom",
        dimension=dimension,
        lipschitz_bound=1.0,
        expressions=expressions,
        expression_texts=texts,
    )
    if lipschitz_bound is None:
        box = lipschitz_box or tuple((-1.0, 1.0) for _ in range(dimension))
        sampled = estimate_lipschitz(probe, box, lipschitz_samples, rng_seed=rng_seed)
        lipschitz_bound = max(1.25 * sampled, 1e-12)
    return VectorFieldSpec(
        kind="custom",
        dimension=dimension,
        lipschitz_bound=float(lipschitz_bound),
        expressions=expressions,
        expression_texts=texts,
    )


def evaluate_field(field: VectorFieldSpec, x) -> np.ndarray:
    """F(x) at a single finite point."""
    point = np.asarray(x, dtype=float)
    if point.shape != (field.dimension,):
        raise DimensionMismatchError(
            f"point of shape {point.shape} for field of dimension {field.dimension}"
        )
    if not np.all(np.isfinite(point)):
        raise NonFiniteStateError(f"field evaluated at non-finite point {point}")
    value = field.evaluate_batch(point[None, :])[0]
    if not np.all(np.isfinite(value)):
        raise NonFiniteStateError(f"field produced non-finite value at {point}")
    return value


def estimate_lipschitz(field: VectorFieldSpec, box, samples: int, rng_seed: int = 0) -> float:
    """Sampled lower bound on kappa: max |F(x1)-F(x2)| / |x1-x2| over random pairs."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    box = np.asarray(box, dtype=float)
    if box.shape != (field.dimension, 2):
        raise DimensionMismatchError(f"box of shape {box.shape} for dimension {field.dimension}")
    rng = np.random.default_rng(rng_seed)
    lo, hi = box[:, 0], box[:, 1]
    X1 = rng.uniform(lo, hi, size=(samples, field.dimension))
    X2 = rng.uniform(lo, hi, size=(samples, field.dimension))
    dx = np.linalg.norm(X1 - X2, axis=1)
    keep = dx > 1e-12
    if not np.any(keep):
        return 0.0
    dF = np.linalg.norm(field.evaluate_batch(X1[keep]) - field.evaluate_batch(X2[keep]), axis=1)
    return float(np.max(dF / dx[keep]))


def sampled_divergence(field: VectorFieldSpec, box, samples: int, rng_seed: int = 0, step: float = 1e-5):
    """Central-difference div F at random points (diagnostic, not a proof).

    Returns (max_abs, mean_abs) of the sampled divergence.  A measure-invariant
    Lebesgue flow should report values at rounding level.
    """
    box = np.asarray(box, dtype=float)
    rng = np.random.default_rng(rng_seed)
    X = rng.uniform(box[:, 0], box[:, 1], size=(samples, field.dimension))
    div = np.zeros(samples)
    for axis in range(field.dimension):
        shift = np.zeros(field.dimension)
        shift[axis] = step
        forward = field.evaluate_batch(X + shift)[:, axis]
        backward = field.evaluate_batch(X - shift)[:, axis]
        div += (forward - backward) / (2.0 * step)
    return float(np.max(np.abs(div))), float(np.mean(np.abs(div)))
