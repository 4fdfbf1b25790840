"""Staggered-grid averaging/difference operators, applied matrix-free.

Conventions (checked against the dense Kronecker constructions in the tests):
the forward difference D maps cell centers to faces, its transpose is the
negative discrete divergence mapping faces back to centers; averaging S works
the same way with weights 1/2.  Mirror axes drop the two boundary faces
(no flux over the boundary), periodic axes wrap.  Time always behaves like a
mirror axis whose boundary data enters through the f+ / f- vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import BoundaryKind, CenterField, FaceField, GridSpec


def _sl(ndim: int, axis: int, s) -> tuple:
    idx = [slice(None)] * ndim
    idx[axis] = s
    return tuple(idx)


# ---------------------------------------------------------------------------
# 1D primitives along an arbitrary axis
# ---------------------------------------------------------------------------

def diff(u: np.ndarray, axis: int, n: int, periodic: bool) -> np.ndarray:
    """D u: centers -> faces, scaled by n."""
    if periodic:
        return n * (u - np.roll(u, 1, axis=axis))
    lo = _sl(u.ndim, axis, slice(None, -1))
    hi = _sl(u.ndim, axis, slice(1, None))
    return n * (u[hi] - u[lo])


def diff_t(v: np.ndarray, axis: int, n: int, periodic: bool) -> np.ndarray:
    """D^T v: faces -> centers (negative divergence), scaled by n."""
    if periodic:
        return n * (v - np.roll(v, -1, axis=axis))
    shape = list(v.shape)
    shape[axis] = n
    out = np.zeros(shape, dtype=v.dtype)
    if n == 1 or v.shape[axis] == 0:
        return out
    out[_sl(v.ndim, axis, slice(1, None))] = n * v
    out[_sl(v.ndim, axis, slice(None, -1))] -= n * v
    return out


def avg(u: np.ndarray, axis: int, periodic: bool) -> np.ndarray:
    """S u: centers -> faces, midpoint weights 1/2."""
    if periodic:
        return 0.5 * (np.roll(u, 1, axis=axis) + u)
    lo = _sl(u.ndim, axis, slice(None, -1))
    hi = _sl(u.ndim, axis, slice(1, None))
    return 0.5 * (u[lo] + u[hi])


def avg_t(v: np.ndarray, axis: int, n: int, periodic: bool) -> np.ndarray:
    """S^T v: faces -> centers."""
    if periodic:
        return 0.5 * (v + np.roll(v, -1, axis=axis))
    shape = list(v.shape)
    shape[axis] = n
    out = np.zeros(shape, dtype=v.dtype)
    if n == 1 or v.shape[axis] == 0:
        return out
    out[_sl(v.ndim, axis, slice(1, None))] = 0.5 * v
    out[_sl(v.ndim, axis, slice(None, -1))] += 0.5 * v
    return out


# ---------------------------------------------------------------------------
# grid-level operators (time axis is last)
# ---------------------------------------------------------------------------

def _check_m(m, spec: GridSpec) -> tuple[np.ndarray, ...]:
    blocks = m.blocks if isinstance(m, FaceField) else tuple(m)
    if len(blocks) != spec.ndim_space:
        raise ValueError(f"expected {spec.ndim_space} momentum blocks, got {len(blocks)}")
    for a, b in enumerate(blocks):
        if b.shape != spec.face_shape(a):
            raise ValueError(
                f"momentum block axis {a}: shape {b.shape} != {spec.face_shape(a)}"
            )
    return blocks


def _check_f(f, spec: GridSpec) -> np.ndarray:
    arr = f.interior if isinstance(f, CenterField) else np.asarray(f)
    if arr.shape != spec.interior_shape:
        raise ValueError(f"density shape {arr.shape} != {spec.interior_shape}")
    return arr


def _per(spec: GridSpec, axis: int) -> bool:
    return spec.boundary(axis) is BoundaryKind.PERIODIC


def apply_Sm(m, spec: GridSpec) -> list[np.ndarray]:
    """Midpoint momentum: block a averaged along axis a, shaped centers x P."""
    blocks = _check_m(m, spec)
    return [
        avg_t(b, a, spec.spatial_dims[a], _per(spec, a)) for a, b in enumerate(blocks)
    ]


def apply_Sm_t(u: list[np.ndarray], spec: GridSpec) -> list[np.ndarray]:
    return [avg(ua, a, _per(spec, a)) for a, ua in enumerate(u)]


def apply_Sf(f, spec: GridSpec) -> np.ndarray:
    """Time-average of interior layers (without the endpoint contribution)."""
    arr = _check_f(f, spec)
    return avg_t(arr, arr.ndim - 1, spec.time_steps, False)


def apply_Sf_t(v: np.ndarray, spec: GridSpec) -> np.ndarray:
    return avg(v, v.ndim - 1, False)


def apply_Dm(m, spec: GridSpec) -> np.ndarray:
    """Spatial divergence contribution, summed over axis blocks."""
    blocks = _check_m(m, spec)
    out = np.zeros(spec.center_shape)
    for a, b in enumerate(blocks):
        out += diff_t(b, a, spec.spatial_dims[a], _per(spec, a))
    return out


def apply_Dm_t(y: np.ndarray, spec: GridSpec) -> list[np.ndarray]:
    return [
        diff(y, a, spec.spatial_dims[a], _per(spec, a)) for a in range(spec.ndim_space)
    ]


def apply_Df(f, spec: GridSpec) -> np.ndarray:
    arr = _check_f(f, spec)
    return diff_t(arr, arr.ndim - 1, spec.time_steps, False)


def apply_Df_t(y: np.ndarray, spec: GridSpec) -> np.ndarray:
    return diff(y, y.ndim - 1, spec.time_steps, False)


def apply_A(m, f, spec: GridSpec) -> np.ndarray:
    """Full space-time divergence (D_m | D_f)(m, f) on the center x P grid."""
    return apply_Dm(m, spec) + apply_Df(f, spec)


def apply_At(y: np.ndarray, spec: GridSpec) -> tuple[list[np.ndarray], np.ndarray]:
    return apply_Dm_t(y, spec), apply_Df_t(y, spec)


def f_plus(f0: np.ndarray, f1: np.ndarray, spec: GridSpec) -> np.ndarray:
    """Endpoint contribution to the time averages: (f0/2, 0, ..., 0, f1/2)."""
    out = np.zeros(spec.center_shape)
    out[..., 0] += 0.5 * f0
    out[..., -1] += 0.5 * f1
    return out


def f_minus(f0: np.ndarray, f1: np.ndarray, spec: GridSpec) -> np.ndarray:
    """Endpoint contribution to the time differences: P(-f0, 0, ..., 0, f1)."""
    out = np.zeros(spec.center_shape)
    out[..., 0] -= spec.time_steps * f0
    out[..., -1] += spec.time_steps * f1
    return out


def mass_per_layer(f: CenterField, spec: GridSpec) -> np.ndarray:
    """Total mass of every time layer, endpoints included (length P+1)."""
    f.validate(spec)
    sums = [float(f.f0.sum())]
    axes = tuple(range(spec.ndim_space))
    sums.extend(np.asarray(f.interior.sum(axis=axes)).ravel().tolist())
    sums.append(float(f.f1.sum()))
    return np.array(sums)


@dataclass(frozen=True)
class OperatorSet:
    """Operators plus the cached endpoint vectors for one transport problem."""

    spec: GridSpec
    f0: np.ndarray
    f1: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray

    @classmethod
    def build(cls, spec: GridSpec, f0: np.ndarray, f1: np.ndarray) -> "OperatorSet":
        f0 = np.asarray(f0, dtype=float)
        f1 = np.asarray(f1, dtype=float)
        for name, arr in (("f0", f0), ("f1", f1)):
            if arr.shape != spec.spatial_dims:
                raise ValueError(f"{name} shape {arr.shape} != {spec.spatial_dims}")
        return cls(spec, f0, f1, f_plus(f0, f1, spec), f_minus(f0, f1, spec))

    def Sm(self, m) -> list[np.ndarray]:
        return apply_Sm(m, self.spec)

    def Sm_t(self, u) -> list[np.ndarray]:
        return apply_Sm_t(u, self.spec)

    def Sf(self, f) -> np.ndarray:
        return apply_Sf(f, self.spec)

    def Sf_t(self, v) -> np.ndarray:
        return apply_Sf_t(v, self.spec)

    def Sf_mid(self, f) -> np.ndarray:
        """Midpoint densities S_f f + f+ (endpoints folded in)."""
        return apply_Sf(f, self.spec) + self.f_plus

    def A(self, m, f) -> np.ndarray:
        return apply_A(m, f, self.spec)

    def At(self, y) -> tuple[list[np.ndarray], np.ndarray]:
        return apply_At(y, self.spec)

    def continuity_residual(self, m, f) -> float:
        return float(np.linalg.norm(self.A(m, f) - self.f_minus))


# ---------------------------------------------------------------------------
# dense constructions (oracles for the matrix-free paths)
# ---------------------------------------------------------------------------

def dense_diff_matrix(n: int, periodic: bool) -> np.ndarray:
    """Forward difference D_n ((n-1) x n) or its periodic variant (n x n)."""
    if periodic:
        mat = np.eye(n) - np.roll(np.eye(n), -1, axis=1)
        return n * mat
    mat = np.zeros((n - 1, n))
    for j in range(n - 1):
        mat[j, j] = -1.0
        mat[j, j + 1] = 1.0
    return n * mat


def dense_avg_matrix(n: int, periodic: bool) -> np.ndarray:
    if periodic:
        return 0.5 * (np.eye(n) + np.roll(np.eye(n), -1, axis=1))
    mat = np.zeros((n - 1, n))
    for j in range(n - 1):
        mat[j, j] = 0.5
        mat[j, j + 1] = 0.5
    return mat


def _kron_chain(mats: list[np.ndarray]) -> np.ndarray:
    """Kronecker lift matching column-major flattening (first axis fastest)."""
    out = mats[-1]
    for mat in reversed(mats[:-1]):
        out = np.kron(out, mat)
    return out


def dense_A_matrix(spec: GridSpec) -> np.ndarray:
    """Explicit (D_m | D_f), columns ordered as flatten(FaceField), flatten(f)."""
    d = spec.ndim_space
    P = spec.time_steps
    cols = []
    for a in range(d):
        mats = []
        for ax in range(d):
            if ax == a:
                mats.append(dense_diff_matrix(spec.spatial_dims[ax], _per(spec, ax)).T)
            else:
                mats.append(np.eye(spec.spatial_dims[ax]))
        mats.append(np.eye(P))
        cols.append(_kron_chain(mats))
    mats = [np.eye(n) for n in spec.spatial_dims]
    mats.append(dense_diff_matrix(P, False).T)
    cols.append(_kron_chain(mats))
    return np.hstack(cols)


def dense_Sm_matrix(spec: GridSpec) -> np.ndarray:
    """Block-diagonal averaging of the momentum blocks (stacked outputs)."""
    d = spec.ndim_space
    P = spec.time_steps
    blocks = []
    for a in range(d):
        mats = []
        for ax in range(d):
            if ax == a:
                mats.append(dense_avg_matrix(spec.spatial_dims[ax], _per(spec, ax)).T)
            else:
                mats.append(np.eye(spec.spatial_dims[ax]))
        mats.append(np.eye(P))
        blocks.append(_kron_chain(mats))
    total_rows = sum(b.shape[0] for b in blocks)
    total_cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((total_rows, total_cols))
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def dense_Sf_matrix(spec: GridSpec) -> np.ndarray:
    mats = [np.eye(n) for n in spec.spatial_dims]
    mats.append(dense_avg_matrix(spec.time_steps, False).T)
    return _kron_chain(mats)
