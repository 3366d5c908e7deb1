"""Tolerance-aware subspace arithmetic for small dense problems.

Subspaces are carried as orthonormal bases with an explicit tolerance
policy: singular values below ``rank_rel_tol`` times the largest one are
treated as zero, and a vector counts as contained when its out-of-span
residual is below ``zero_abs_tol``.  The trivial subspace is a basis
with zero columns, never a zero vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class ToleranceConfig:
    """Rank and zero thresholds used by every subspace operation."""

    rank_rel_tol: float = 1e-10
    zero_abs_tol: float = 1e-8

    def __post_init__(self):
        if self.rank_rel_tol <= 0 or self.zero_abs_tol <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


class Subspace:
    """A linear subspace of R^n held as an orthonormal basis."""

    __slots__ = ("_basis", "tol")

    def __init__(self, basis, tol: ToleranceConfig = DEFAULT_TOL):
        arr = np.asarray(basis, dtype=float)
        if arr.ndim != 2:
            raise ValueError("basis must be a 2-D array (columns span the space)")
        n, d = arr.shape
        if d > n:
            raise ValueError(f"basis of shape {arr.shape} has more columns than "
                             "the ambient dimension")
        if d:
            gram = arr.T @ arr
            if np.max(np.abs(gram - np.eye(d))) > max(tol.zero_abs_tol, 1e-10):
                raise ValueError("basis columns are not orthonormal at tolerance")
        arr = arr.copy()
        arr.flags.writeable = False
        self._basis = arr
        self.tol = tol

    @classmethod
    def trivial(cls, ambient_dim, tol: ToleranceConfig = DEFAULT_TOL):
        return cls(np.zeros((ambient_dim, 0)), tol)

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def ambient_dim(self) -> int:
        return self._basis.shape[0]

    @property
    def dim(self) -> int:
        return self._basis.shape[1]

    def is_trivial(self) -> bool:
        return self.dim == 0

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace."""
        return self._basis @ self._basis.T

    def contains(self, vectors) -> bool:
        """Whether all given column vectors lie in the subspace.

        The residual of each column after projection must stay below
        ``zero_abs_tol``, relative to the column norm when that norm
        exceeds one.
        """
        v = np.atleast_2d(np.asarray(vectors, dtype=float))
        if v.shape[0] != self.ambient_dim:
            v = v.T
        if v.shape[0] != self.ambient_dim:
            raise ValueError("vector length does not match the ambient dimension")
        residual = v - self._basis @ (self._basis.T @ v)
        scale = np.maximum(1.0, np.linalg.norm(v, axis=0))
        return bool(np.all(np.linalg.norm(residual, axis=0)
                           <= self.tol.zero_abs_tol * scale))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _numeric_rank(sing_values, tol: ToleranceConfig) -> int:
    if sing_values.size == 0 or sing_values[0] == 0.0:
        return 0
    return int(np.sum(sing_values > tol.rank_rel_tol * sing_values[0]))


def image(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the column space at the rank tolerance."""
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.shape[1] == 0:
        return Subspace.trivial(arr.shape[0], tol)
    u, s, _ = np.linalg.svd(arr, full_matrices=False)
    return Subspace(u[:, :_numeric_rank(s, tol)], tol)


def kernel(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the null space at the rank tolerance."""
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.shape[1] == 0:
        return Subspace.trivial(0, tol)
    if arr.shape[0] == 0:
        return Subspace(np.eye(arr.shape[1]), tol)
    _, s, vt = np.linalg.svd(arr, full_matrices=True)
    return Subspace(vt[_numeric_rank(s, tol):].T, tol)


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    """Sum of two subspaces of the same ambient space."""
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("subspace sum needs a common ambient dimension")
    return image(np.hstack([s.basis, t.basis]), s.tol)


def subspace_intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space.

    Null vectors [u; v] of [basis_s, -basis_t] satisfy
    basis_s @ u == basis_t @ v, so mapping the u-part back through
    basis_s spans the intersection; the result is re-orthonormalized.
    """
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("subspace intersection needs a common ambient dimension")
    if s.is_trivial() or t.is_trivial():
        return Subspace.trivial(s.ambient_dim, s.tol)
    stacked = np.hstack([s.basis, -t.basis])
    null = kernel(stacked, s.tol)
    return image(s.basis @ null.basis[:s.dim], s.tol)


def map_subspace(matrix, s: Subspace, tol: ToleranceConfig = None) -> Subspace:
    """Image of a subspace under a linear map.

    A subspace that truly collapses under the map leaves only rounding
    dust in the mapped basis; a purely relative rank rule would promote
    that dust to a dimension.  The mapped basis therefore counts as zero
    outright when its largest singular value is below ``zero_abs_tol``.
    """
    if tol is None:
        tol = s.tol
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != s.ambient_dim:
        raise ValueError(f"map of shape {arr.shape} does not act on an "
                         f"ambient dimension of {s.ambient_dim}")
    if s.is_trivial():
        return Subspace.trivial(arr.shape[0], tol)
    mapped = arr @ s.basis
    if np.linalg.norm(mapped, 2) <= tol.zero_abs_tol:
        return Subspace.trivial(arr.shape[0], tol)
    return image(mapped, tol)


def invariant_subspace_iterates(a_matrix, c_matrix, contained: Subspace,
                                tol: ToleranceConfig = DEFAULT_TOL):
    """Yield the iterates S^k of the conditioned-invariant recursion.

    S^0 is the given subspace D and each step maps
    S^k = D + A (S^{k-1} ∩ ker C).  The sequence is nondecreasing in
    dimension and reaches its fixpoint within n - dim(D) steps; the
    generator stops one step after the fixpoint repeats.
    """
    a = np.asarray(a_matrix, dtype=float)
    c = np.asarray(c_matrix, dtype=float)
    n = contained.ambient_dim
    if a.shape != (n, n):
        raise ValueError(f"state matrix must be {n}x{n}, got {a.shape}")
    if c.ndim != 2 or c.shape[1] != n:
        raise ValueError(f"output matrix must have {n} columns, got {c.shape}")
    ker_c = kernel(c, tol)
    current = contained
    yield current
    for _ in range(n):
        hidden = subspace_intersect(current, ker_c)
        nxt = subspace_sum(contained, image(a @ hidden.basis, tol))
        yield nxt
        if nxt.dim == current.dim and current.contains(nxt.basis):
            return
        current = nxt


def conditioned_invariant(a_matrix, c_matrix, contained: Subspace,
                          tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Smallest subspace S with A(S ∩ ker C) ⊆ S containing the given one.

    Computed by running :func:`invariant_subspace_iterates` to its
    fixpoint, with a hard cap of n iterations guarding against
    tolerance-induced oscillation.
    """
    result = contained
    for result in invariant_subspace_iterates(a_matrix, c_matrix,
                                              contained, tol):
        pass
    return result


def principal_angles(s: Subspace, t: Subspace) -> np.ndarray:
    """Principal angles (radians) between two subspaces."""
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("principal angles need a common ambient dimension")
    if s.is_trivial() or t.is_trivial():
        return np.array([])
    return scipy.linalg.subspace_angles(s.basis, t.basis)


def same_subspace(s: Subspace, t: Subspace, angle_tol: float = 1e-6) -> bool:
    """Equality test: equal dimensions and all principal angles small."""
    if s.ambient_dim != t.ambient_dim or s.dim != t.dim:
        return False
    if s.dim == 0:
        return True
    return bool(np.max(principal_angles(s, t)) < angle_tol)
