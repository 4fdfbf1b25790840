"""Orthogonal trigonometric transforms and discrete Laplacian spectra.

The dense matrices built here are the normative definitions; the fast paths
delegate to scipy.fft with the matching orthonormal scaling and agree with
the dense products to machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.fft as sfft

from .grid import BoundaryKind, GridSpec


class TransformKind(Enum):
    DCT2 = "dct2"
    DST1 = "dst1"
    DFT = "dft"


# ---------------------------------------------------------------------------
# fast transforms (orthonormal scaling throughout)
# ---------------------------------------------------------------------------

def dct2(v: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply the orthonormal DCT-II matrix C_n along `axis`."""
    v = np.asarray(v)
    if v.shape[axis] < 1:
        raise ValueError("dct2 needs length >= 1")
    return sfft.dct(v, type=2, norm="ortho", axis=axis)


def idct2(v: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply C_n^T (the inverse, since C_n is orthogonal)."""
    v = np.asarray(v)
    if v.shape[axis] < 1:
        raise ValueError("idct2 needs length >= 1")
    return sfft.idct(v, type=2, norm="ortho", axis=axis)


def dst1(v: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply the DST-I matrix S_{n-1}; symmetric orthogonal, an involution."""
    v = np.asarray(v)
    if v.shape[axis] < 1:
        raise ValueError("dst1 needs length >= 1")
    return sfft.dst(v, type=1, norm="ortho", axis=axis)


def dft(v: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply the unitary Fourier matrix F_n = n^{-1/2}(e^{-2pi i jk/n})."""
    v = np.asarray(v)
    if v.shape[axis] < 1:
        raise ValueError("dft needs length >= 1")
    return sfft.fft(v, norm="ortho", axis=axis)


def idft(v: np.ndarray, axis: int = -1) -> np.ndarray:
    """Apply conj(F_n), the unitary inverse."""
    v = np.asarray(v)
    if v.shape[axis] < 1:
        raise ValueError("idft needs length >= 1")
    return sfft.ifft(v, norm="ortho", axis=axis)


# ---------------------------------------------------------------------------
# Laplacian eigenvalues
# ---------------------------------------------------------------------------

def laplacian_eigs(kind: str, n: int) -> np.ndarray:
    """Eigenvalues of the unscaled second-difference matrix of the given kind.

    zero: 4 sin^2(k pi / 2n), k = 1..n-1   (size n-1, Dirichlet)
    mirr: 4 sin^2(j pi / 2n), j = 0..n-1   (size n, Neumann)
    per:  4 sin^2(k pi / n),  k = 0..n-1   (size n, periodic)
    """
    if kind == "zero":
        if n < 2:
            raise ValueError("zero kind needs n >= 2")
        k = np.arange(1, n)
        return 4.0 * np.sin(k * np.pi / (2 * n)) ** 2
    if n < 1:
        raise ValueError("laplacian_eigs needs n >= 1")
    if kind == "mirr":
        j = np.arange(n)
        return 4.0 * np.sin(j * np.pi / (2 * n)) ** 2
    if kind == "per":
        k = np.arange(n)
        return 4.0 * np.sin(k * np.pi / n) ** 2
    raise ValueError(f"unknown Laplacian kind {kind!r} (want zero|mirr|per)")


# ---------------------------------------------------------------------------
# dense (normative) matrices
# ---------------------------------------------------------------------------

def dense_dct2_matrix(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n >= 1 required")
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    eps = np.where(j == 0, 1.0 / np.sqrt(2.0), 1.0)
    return np.sqrt(2.0 / n) * eps * np.cos(j * (2 * k + 1) * np.pi / (2 * n))


def dense_dst1_matrix(m: int) -> np.ndarray:
    """DST-I matrix S_m of size m x m (m = n-1 in the Dirichlet setting)."""
    if m < 1:
        raise ValueError("m >= 1 required")
    n = m + 1
    j, k = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    return np.sqrt(2.0 / n) * np.sin(j * k * np.pi / n)


def dense_dft_matrix(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n >= 1 required")
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(-2j * np.pi * j * k / n) / np.sqrt(n)


def dense_laplacian(kind: str, n: int) -> np.ndarray:
    """Dense second-difference matrix whose spectrum is laplacian_eigs(kind, n).

    Sizes: zero -> (n-1, n-1), mirr/per -> (n, n).
    """
    if kind == "zero":
        if n < 2:
            raise ValueError("zero kind needs n >= 2")
        m = n - 1
        lap = 2.0 * np.eye(m) - np.eye(m, k=1) - np.eye(m, k=-1)
        return lap
    if n < 1:
        raise ValueError("n >= 1 required")
    if kind == "mirr":
        lap = 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
        lap[0, 0] = 1.0
        lap[-1, -1] = 1.0
        return lap
    if kind == "per":
        lap = 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
        if n > 1:
            lap[0, -1] -= 1.0
            lap[-1, 0] -= 1.0
        else:
            lap[0, 0] = 0.0
        return lap
    raise ValueError(f"unknown Laplacian kind {kind!r} (want zero|mirr|per)")


# ---------------------------------------------------------------------------
# per-grid transform plan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxisPlan:
    """Transform choice for one axis of the center grid."""

    kind: TransformKind
    n: int

    def forward(self, x: np.ndarray, axis: int) -> np.ndarray:
        if self.kind is TransformKind.DCT2:
            return dct2(x, axis=axis)
        if self.kind is TransformKind.DST1:
            return dst1(x, axis=axis)
        return dft(x, axis=axis)

    def inverse(self, x: np.ndarray, axis: int) -> np.ndarray:
        if self.kind is TransformKind.DCT2:
            return idct2(x, axis=axis)
        if self.kind is TransformKind.DST1:
            return dst1(x, axis=axis)
        return idft(x, axis=axis)

    @property
    def d_zero(self) -> np.ndarray:
        return laplacian_eigs("zero", self.n)

    @property
    def d_mirr(self) -> np.ndarray:
        return laplacian_eigs("mirr", self.n)

    @property
    def d_per(self) -> np.ndarray:
        return laplacian_eigs("per", self.n)


@dataclass(frozen=True)
class SpectralPlan:
    """Axis-by-axis transforms diagonalizing the divergence normal operator.

    Axes follow the center grid: spatial axes first (DCT-II for mirror
    boundaries, DFT for periodic), time last (always DCT-II since time
    differences see Neumann conditions through the fixed endpoints).
    """

    axes: tuple[AxisPlan, ...]

    @classmethod
    def for_grid(cls, spec: GridSpec) -> "SpectralPlan":
        plans = []
        for a, n in enumerate(spec.spatial_dims):
            if spec.boundary(a) is BoundaryKind.MIRROR:
                plans.append(AxisPlan(TransformKind.DCT2, n))
            else:
                plans.append(AxisPlan(TransformKind.DFT, n))
        plans.append(AxisPlan(TransformKind.DCT2, spec.time_steps))
        return cls(tuple(plans))

    @property
    def needs_complex(self) -> bool:
        return any(p.kind is TransformKind.DFT for p in self.axes)

    def forward(self, x: np.ndarray) -> np.ndarray:
        for axis, plan in enumerate(self.axes):
            x = plan.forward(x, axis)
        return x

    def inverse(self, x: np.ndarray) -> np.ndarray:
        for axis, plan in enumerate(self.axes):
            x = plan.inverse(x, axis)
        return x

    def eigenvalue_tensor(self, spec: GridSpec) -> np.ndarray:
        """Eigenvalues of A A^T on the center grid, Kronecker-summed per axis."""
        shape = spec.center_shape
        total = np.zeros(shape)
        for axis, plan in enumerate(self.axes):
            if axis < spec.ndim_space:
                scale = spec.spatial_dims[axis]
                kind = "mirr" if plan.kind is TransformKind.DCT2 else "per"
            else:
                scale = spec.time_steps
                kind = "mirr"
            d = scale ** 2 * laplacian_eigs(kind, shape[axis])
            bshape = [1] * len(shape)
            bshape[axis] = shape[axis]
            total = total + d.reshape(bshape)
        return total
