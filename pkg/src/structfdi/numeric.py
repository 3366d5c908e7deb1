"""Fault detection and isolation analysis for a concrete LTI system.

The system dx/dt = A x + L f, y = C x carries q scalar fault channels,
one per column of L.  Channel i has a fault index d_i, the smallest
power for which C A^(d_i - 1) L_i is nonzero; stacking those first
nonzero responses column by column gives the fault signature matrix.
The isolation problem is solvable exactly when every index exists and
the signature matrix has full column rank, which is also equivalent to
the family of per-fault output subspaces being independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .subspaces import (DEFAULT_TOL, Subspace, ToleranceConfig,
                        conditioned_invariant, image, map_subspace)


class FriendSynthesisError(RuntimeError):
    """No common observer gain was found at tolerance for the family."""


@dataclass(frozen=True)
class NumericTriple:
    """A concrete (A, L, C) system with faults entering through L."""

    A: np.ndarray
    L: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.A, dtype=float))
        l = np.atleast_2d(np.asarray(self.L, dtype=float))
        c = np.atleast_2d(np.asarray(self.C, dtype=float))
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError(f"A must be square, got {a.shape}")
        if l.shape[0] != n:
            raise ValueError(f"L must have {n} rows to match A, got {l.shape}")
        if c.shape[1] != n:
            raise ValueError(f"C must have {n} columns to match A, got {c.shape}")
        for name, arr in (("A", a), ("L", l), ("C", c)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def p(self) -> int:
        return self.C.shape[0]

    @property
    def q(self) -> int:
        return self.L.shape[1]

    def fault_direction(self, i) -> np.ndarray:
        """Column L_i (1-based channel index) as an n-by-1 matrix."""
        self._check_channel(i)
        return self.L[:, i - 1:i]

    def _check_channel(self, i):
        if not 1 <= i <= self.q:
            raise ValueError(f"fault channel {i} out of range 1..{self.q}")


@dataclass(frozen=True)
class NumericReport:
    """Everything the solvability test computes along the way.

    ``indices`` holds d_i per fault channel (None when the channel never
    reaches the output); ``signature`` is the stacked first-response
    matrix when all indices exist.  ``fault_subspaces`` are the minimal
    conditioned-invariant subspaces containing each im L_i, computed by
    the subspace recursion independently of the index scan, and
    ``output_subspaces`` their images under C.
    """

    indices: tuple
    signature: Optional[np.ndarray]
    solvable: bool
    signature_rank: int
    fault_subspaces: tuple
    output_subspaces: tuple

    def to_jsonable(self):
        return {
            "d": [d for d in self.indices],
            "R": None if self.signature is None else self.signature.tolist(),
            "solvable": self.solvable,
            "rank_of_R": self.signature_rank,
            "fault_subspaces": [s.basis.tolist() for s in self.fault_subspaces],
            "output_subspaces": [s.basis.tolist() for s in self.output_subspaces],
        }


@dataclass(frozen=True)
class FriendGain:
    """An observer gain making a family of subspaces jointly invariant.

    ``residual_norm`` is the largest invariance defect over the family:
    the spectral norm of the out-of-subspace component of (A + G C)
    applied to each basis.
    """

    G: np.ndarray
    residual_norm: float


def fault_index(sys: NumericTriple, i, tol: ToleranceConfig = DEFAULT_TOL):
    """Fault index d_i of channel i, or None when it does not exist.

    Scans C A^j L_i for j = 0..n-1; by Cayley-Hamilton a later first
    nonzero is impossible.  The zero test compares the largest entry
    magnitude against ``zero_abs_tol`` scaled by ||A||^j ||L_i||, so
    growth or decay along powers does not skew the decision.
    """
    sys._check_channel(i)
    direction = sys.fault_direction(i)
    norm_a = np.linalg.norm(sys.A, 2)
    norm_l = np.linalg.norm(direction, 2)
    current = direction
    scale = norm_l
    for j in range(sys.n):
        response = sys.C @ current
        if np.max(np.abs(response)) > tol.zero_abs_tol * scale:
            return j + 1
        current = sys.A @ current
        scale *= norm_a
    return None


def signature_matrix(sys: NumericTriple,
                     tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Stack the first nonzero responses C A^(d_i - 1) L_i column-wise.

    Raises ValueError naming the channels whose index is missing.
    """
    indices = [fault_index(sys, i, tol) for i in range(1, sys.q + 1)]
    missing = [i + 1 for i, d in enumerate(indices) if d is None]
    if missing:
        raise ValueError(f"fault index missing for channels {missing}; "
                         "the signature matrix is undefined")
    return _stack_signature(sys, indices)


def _stack_signature(sys, indices):
    columns = []
    for i, d in enumerate(indices, start=1):
        columns.append(sys.C @ np.linalg.matrix_power(sys.A, d - 1)
                       @ sys.fault_direction(i))
    return np.hstack(columns)


def is_solvable(sys: NumericTriple,
                tol: ToleranceConfig = DEFAULT_TOL) -> NumericReport:
    """Decide isolation solvability and report all intermediates.

    Solvable iff every fault index exists and the signature matrix has
    full numeric column rank.  Missing indices yield solvable = False
    rather than an error, since index existence is part of the criterion.
    """
    indices = tuple(fault_index(sys, i, tol) for i in range(1, sys.q + 1))
    if all(d is not None for d in indices) and sys.q > 0:
        signature = _stack_signature(sys, indices)
        rank = image(signature, tol).dim
    else:
        signature = None
        rank = 0
    solvable = signature is not None and rank == sys.q
    fault_subspaces = tuple(
        conditioned_invariant(sys.A, sys.C,
                              image(sys.fault_direction(i), tol), tol)
        for i in range(1, sys.q + 1))
    output_subspaces = tuple(map_subspace(sys.C, s, tol)
                             for s in fault_subspaces)
    return NumericReport(indices=indices, signature=signature,
                         solvable=solvable, signature_rank=rank,
                         fault_subspaces=fault_subspaces,
                         output_subspaces=output_subspaces)


def fault_output_subspace(sys: NumericTriple, i,
                          tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Output-space footprint of fault channel i.

    Equals the span of C A^(d_i - 1) L_i when the index exists and the
    trivial subspace otherwise; agrees with pushing the minimal
    conditioned-invariant subspace of im L_i through C.
    """
    d = fault_index(sys, i, tol)
    if d is None:
        return Subspace.trivial(sys.p, tol)
    return image(sys.C @ np.linalg.matrix_power(sys.A, d - 1)
                 @ sys.fault_direction(i), tol)


def output_separability(subspaces) -> bool:
    """Whether the family of subspaces forms a direct sum.

    True iff the dimensions add up: sum(dim S_i) == dim(sum S_i), which
    is equivalent to every S_i intersecting the sum of the others
    trivially.
    """
    subspaces = list(subspaces)
    if not subspaces:
        return True
    ambient = subspaces[0].ambient_dim
    if any(s.ambient_dim != ambient for s in subspaces):
        raise ValueError("subspaces must share an ambient dimension")
    total = sum(s.dim for s in subspaces)
    joint = image(np.hstack([s.basis for s in subspaces]), subspaces[0].tol)
    return total == joint.dim


def compute_friend(sys: NumericTriple, subspaces,
                   tol: ToleranceConfig = DEFAULT_TOL) -> FriendGain:
    """Find one observer gain G keeping every subspace (A + G C)-invariant.

    Poses the joint conditions (A + G C) V_i = V_i X_i as a single
    least-squares problem in G and the free coordinate blocks X_i; any
    minimizer is accepted since friends are not unique.  Raises
    :class:`FriendSynthesisError` when the residual exceeds
    ``zero_abs_tol``, which signals the family was not compatible.
    """
    subspaces = list(subspaces)
    n, p = sys.n, sys.p
    active = [s for s in subspaces if s.dim > 0]
    for s in subspaces:
        if s.ambient_dim != n:
            raise ValueError("subspaces must live in the state space")

    if active and p > 0:
        n_gain = n * p
        widths = [s.dim for s in active]
        total_rows = n * sum(widths)
        total_cols = n_gain + sum(k * k for k in widths)
        lhs = np.zeros((total_rows, total_cols))
        rhs = np.zeros(total_rows)
        row = 0
        col = n_gain
        for s, k in zip(active, widths):
            v = s.basis
            block = n * k
            lhs[row:row + block, :n_gain] = np.kron((sys.C @ v).T, np.eye(n))
            lhs[row:row + block, col:col + k * k] = -np.kron(np.eye(k), v)
            rhs[row:row + block] = -(sys.A @ v).ravel(order="F")
            row += block
            col += k * k
        solution = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
        gain = solution[:n_gain].reshape((n, p), order="F")
    else:
        gain = np.zeros((n, p))

    closed = sys.A + gain @ sys.C
    defect = 0.0
    for s in subspaces:
        if s.dim == 0:
            continue
        mapped = closed @ s.basis
        residual = mapped - s.projector() @ mapped
        defect = max(defect, float(np.linalg.norm(residual, 2)))
    if defect > tol.zero_abs_tol:
        raise FriendSynthesisError(
            f"no common gain at tolerance: invariance defect {defect:.3e} "
            f"exceeds {tol.zero_abs_tol:.3e} (family not compatible)")
    return FriendGain(G=gain, residual_norm=defect)
