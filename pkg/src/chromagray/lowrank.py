"""Singular value decomposition and rank-truncated reconstruction of planes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SvdFactors", "RankPolicy", "svd_decompose", "numerical_rank", "reconstruct"]


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD of one plane: plane = U @ diag(S) @ V.T.

    U is (h, r) and V is (w, r), both with orthonormal columns; S holds the
    r = min(h, w) singular values sorted non-increasing.
    """

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    def __post_init__(self) -> None:
        if self.U.ndim != 2 or self.V.ndim != 2 or self.S.ndim != 1:
            raise ValueError("malformed SVD factors")
        r = self.S.shape[0]
        if self.U.shape[1] != r or self.V.shape[1] != r:
            raise ValueError("factor shapes do not agree on the rank dimension")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.U.shape[0], self.V.shape[0])


@dataclass(frozen=True)
class RankPolicy:
    """How many singular directions survive reconstruction.

    mode "full" keeps the full numerical rank (drops only numerically-zero
    directions), "fixed" keeps exactly k, "energy" keeps the smallest k whose
    cumulative squared singular values reach the requested fraction.
    """

    mode: str = "full"
    k: int | None = None
    energy: float | None = None
    tol: float | None = None

    def __post_init__(self) -> None:
        if self.mode == "full":
            if self.k is not None or self.energy is not None:
                raise ValueError("mode 'full' takes no k or energy parameter")
            if self.tol is not None and self.tol <= 0:
                raise ValueError("tol must be positive")
        elif self.mode == "fixed":
            if self.k is None or self.k < 1:
                raise ValueError("mode 'fixed' needs a positive k")
            if self.energy is not None:
                raise ValueError("mode 'fixed' takes no energy parameter")
        elif self.mode == "energy":
            if self.energy is None or not (0.0 < self.energy <= 1.0):
                raise ValueError("mode 'energy' needs a fraction in (0, 1]")
            if self.k is not None:
                raise ValueError("mode 'energy' takes no k parameter")
        else:
            raise ValueError(f"unknown rank policy mode {self.mode!r}")

    @classmethod
    def full(cls, tol: float | None = None) -> "RankPolicy":
        return cls(mode="full", tol=tol)

    @classmethod
    def fixed(cls, k: int) -> "RankPolicy":
        return cls(mode="fixed", k=k)

    @classmethod
    def energy_fraction(cls, energy: float) -> "RankPolicy":
        return cls(mode="energy", energy=energy)

    def retained_rank(self, factors: SvdFactors) -> int:
        """Number of leading singular triples kept under this policy."""
        s = factors.S
        if self.mode == "full":
            tol = self.tol
            if tol is None:
                tol = max(factors.shape) * np.finfo(np.float64).eps
            return numerical_rank(factors, tol)
        if self.mode == "fixed":
            return min(self.k, s.shape[0])
        # energy mode: all-zero spectrum keeps nothing (zero matrix result)
        total = float(np.sum(s**2))
        if total == 0.0:
            return 0
        frac = np.cumsum(s**2) / total
        return int(np.searchsorted(frac, self.energy) + 1)


def svd_decompose(plane: np.ndarray) -> SvdFactors:
    """Thin SVD of a 2-D plane; rejects non-finite input."""
    arr = np.asarray(plane, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D plane, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("plane must contain at least one element")
    if not np.isfinite(arr).all():
        raise ValueError("plane contains non-finite values; cannot decompose")
    U, s, Vh = np.linalg.svd(arr, full_matrices=False)
    return SvdFactors(U=U, S=s, V=Vh.T)


def numerical_rank(factors: SvdFactors, tol: float) -> int:
    """Count of singular values above tol * S[0]; 0 for an all-zero spectrum."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = factors.S
    if s.shape[0] == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def reconstruct(factors: SvdFactors, policy: RankPolicy) -> np.ndarray:
    """Sum of the top-k rank-1 terms, k chosen by the policy."""
    k = policy.retained_rank(factors)
    h, w = factors.shape
    if k == 0:
        return np.zeros((h, w))
    return (factors.U[:, :k] * factors.S[:k]) @ factors.V[:, :k].T
