"""Space-time staggered grid: field containers, shapes and flattening."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class BoundaryKind(Enum):
    MIRROR = "mirror"
    PERIODIC = "periodic"

    @property
    def kappa(self) -> int:
        """Number of boundary faces dropped per axis (1 mirror, 0 periodic)."""
        return 1 if self is BoundaryKind.MIRROR else 0


@dataclass(frozen=True)
class GridSpec:
    """Sizes and boundary kinds; single source of truth for operator shapes.

    spatial_dims has length 1 (signals), 2 (grayscale images) or 3 (RGB images,
    third entry fixed to 3).  Densities live at cell centers on P-1 interior
    time layers, momenta at cell faces on P half-integer time layers.  The
    color axis (third axis of RGB grids) carries its own boundary kind.
    """

    spatial_dims: tuple[int, ...]
    time_steps: int
    spatial_boundary: BoundaryKind = BoundaryKind.MIRROR
    color_boundary: BoundaryKind = BoundaryKind.PERIODIC

    def __post_init__(self):
        dims = tuple(int(n) for n in self.spatial_dims)
        object.__setattr__(self, "spatial_dims", dims)
        if not 1 <= len(dims) <= 3:
            raise ValueError(f"spatial_dims must have 1-3 axes, got {len(dims)}")
        if any(n < 1 for n in dims):
            raise ValueError(f"spatial sizes must be positive, got {dims}")
        if len(dims) == 3 and dims[2] != 3:
            raise ValueError(f"RGB grids need spatial_dims[2] == 3, got {dims[2]}")
        if self.time_steps < 2:
            raise ValueError(f"time_steps must be >= 2, got {self.time_steps}")

    @property
    def ndim_space(self) -> int:
        return len(self.spatial_dims)

    @property
    def has_color(self) -> bool:
        return len(self.spatial_dims) == 3

    def boundary(self, axis: int) -> BoundaryKind:
        """Boundary kind of spatial axis `axis` (color axis is axis 2)."""
        if self.has_color and axis == 2:
            return self.color_boundary
        return self.spatial_boundary

    def kappa(self, axis: int) -> int:
        return self.boundary(axis).kappa

    @property
    def center_shape(self) -> tuple[int, ...]:
        """Centers x P half-integer time layers (midpoint/divergence grid)."""
        return self.spatial_dims + (self.time_steps,)

    @property
    def interior_shape(self) -> tuple[int, ...]:
        """Centers x P-1 interior time layers (the density unknowns)."""
        return self.spatial_dims + (self.time_steps - 1,)

    def face_shape(self, axis: int) -> tuple[int, ...]:
        """Shape of the momentum block for spatial axis `axis`."""
        dims = list(self.spatial_dims)
        dims[axis] -= self.kappa(axis)
        return tuple(dims) + (self.time_steps,)


@dataclass(frozen=True)
class FieldSizes:
    m_total: int
    f_total: int
    m_block_shapes: tuple[tuple[int, ...], ...]
    interior_shape: tuple[int, ...]
    center_shape: tuple[int, ...]


def field_sizes(spec: GridSpec) -> FieldSizes:
    """Flattened lengths and per-block shapes of the m- and f-vectors."""
    blocks = tuple(spec.face_shape(a) for a in range(spec.ndim_space))
    m_total = sum(int(np.prod(s)) for s in blocks)
    return FieldSizes(
        m_total=m_total,
        f_total=int(np.prod(spec.interior_shape)),
        m_block_shapes=blocks,
        interior_shape=spec.interior_shape,
        center_shape=spec.center_shape,
    )


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class CenterField:
    """Density samples: interior layers plus the fixed endpoint images."""

    interior: np.ndarray
    f0: np.ndarray
    f1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "interior", _frozen(self.interior))
        object.__setattr__(self, "f0", _frozen(self.f0))
        object.__setattr__(self, "f1", _frozen(self.f1))

    @classmethod
    def zeros(cls, spec: GridSpec, f0: np.ndarray, f1: np.ndarray) -> "CenterField":
        return cls(np.zeros(spec.interior_shape), f0, f1)

    def validate(self, spec: GridSpec) -> None:
        if self.interior.shape != spec.interior_shape:
            raise ValueError(
                f"interior shape {self.interior.shape} != expected "
                f"{spec.interior_shape} (centers x P-1)"
            )
        for name, arr in (("f0", self.f0), ("f1", self.f1)):
            if arr.shape != spec.spatial_dims:
                raise ValueError(
                    f"{name} shape {arr.shape} != spatial dims {spec.spatial_dims}"
                )


@dataclass(frozen=True)
class FaceField:
    """Momentum samples: one block per spatial axis, at half-integer times."""

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(_frozen(b) for b in self.blocks))

    @classmethod
    def zeros(cls, spec: GridSpec) -> "FaceField":
        return cls(tuple(np.zeros(spec.face_shape(a)) for a in range(spec.ndim_space)))

    def validate(self, spec: GridSpec) -> None:
        if len(self.blocks) != spec.ndim_space:
            raise ValueError(
                f"expected {spec.ndim_space} momentum blocks, got {len(self.blocks)}"
            )
        for a, b in enumerate(self.blocks):
            want = spec.face_shape(a)
            if b.shape != want:
                raise ValueError(
                    f"momentum block for axis {a}: shape {b.shape} != expected "
                    f"{want} (N-kappa faces on axis {a})"
                )


@dataclass(frozen=True)
class RunReport:
    """Per-iteration solver trace."""

    energy_trace: np.ndarray
    residual_trace: np.ndarray
    dual_residual_trace: np.ndarray
    iterations: int
    wall_time: float
    all_finite: bool = True

    def __post_init__(self):
        for name in ("energy_trace", "residual_trace", "dual_residual_trace"):
            trace = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, trace)
            if trace.shape != (self.iterations,):
                raise ValueError(f"{name} must have length iterations={self.iterations}")


def flatten(obj, spec: GridSpec) -> np.ndarray:
    """Column-major (first axis fastest) linearization of a field.

    CenterField flattens its interior layers; FaceField concatenates its
    axis blocks in axis order.  Plain arrays / block sequences are accepted.
    """
    if isinstance(obj, CenterField):
        obj.validate(spec)
        return obj.interior.ravel(order="F")
    if isinstance(obj, FaceField):
        obj.validate(spec)
        return np.concatenate([b.ravel(order="F") for b in obj.blocks])
    if isinstance(obj, np.ndarray):
        if obj.shape not in (spec.interior_shape, spec.center_shape):
            raise ValueError(
                f"array shape {obj.shape} matches neither interior "
                f"{spec.interior_shape} nor center {spec.center_shape} grid"
            )
        return obj.ravel(order="F")
    # sequence of momentum blocks
    return flatten(FaceField(tuple(obj)), spec)


def unflatten_center(vec: np.ndarray, spec: GridSpec) -> np.ndarray:
    sizes = field_sizes(spec)
    vec = np.asarray(vec)
    if vec.size != sizes.f_total:
        raise ValueError(f"f-vector length {vec.size} != {sizes.f_total}")
    return vec.reshape(spec.interior_shape, order="F")


def unflatten_faces(vec: np.ndarray, spec: GridSpec) -> tuple[np.ndarray, ...]:
    sizes = field_sizes(spec)
    vec = np.asarray(vec)
    if vec.size != sizes.m_total:
        raise ValueError(f"m-vector length {vec.size} != {sizes.m_total}")
    out = []
    pos = 0
    for shape in sizes.m_block_shapes:
        n = int(np.prod(shape))
        out.append(vec[pos:pos + n].reshape(shape, order="F"))
        pos += n
    return tuple(out)
