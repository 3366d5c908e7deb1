"""Seeded sampling from pattern classes and Monte-Carlo cross-checks.

Sampling can refute a universal structural claim by exhibiting a member
that violates it, but can never certify one; every summary produced here
is marked as empirical evidence only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .numeric import NumericTriple, is_solvable
from .patterns import PatternMatrix, Symbol
from .structured import StructuredTriple
from .subspaces import DEFAULT_TOL, ToleranceConfig, image


@dataclass(frozen=True)
class SamplerConfig:
    """Deterministic sampling policy for pattern-class members.

    Nonzero draws are uniform in sign and magnitude; ``min_magnitude``
    keeps sure-nonzero entries safely away from zero so rank decisions
    on sampled members are unambiguous at default tolerances.
    ``question_zero_prob`` is the chance an arbitrary entry is exactly
    zero.
    """

    seed: int = 0
    magnitude_range: tuple = (0.5, 2.0)
    question_zero_prob: float = 0.5
    min_magnitude: float = 0.5

    def __post_init__(self):
        lo, hi = self.magnitude_range
        if not 0 < lo <= hi:
            raise ValueError("magnitude_range must be a positive interval")
        if not 0 <= self.question_zero_prob <= 1:
            raise ValueError("question_zero_prob must be a probability")
        if not 0 < self.min_magnitude <= hi:
            raise ValueError("min_magnitude must lie in (0, magnitude upper bound]")


@dataclass(frozen=True)
class MonteCarloSummary:
    """Tally of per-member solvability over sampled systems."""

    n_samples: int
    seed: int
    solvable_count: int
    unsolvable_count: int
    witness: Optional[NumericTriple]
    empirical_only: bool = True

    def to_jsonable(self):
        witness = None
        if self.witness is not None:
            witness = {"A": self.witness.A.tolist(),
                       "L": self.witness.L.tolist(),
                       "C": self.witness.C.tolist()}
        return {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "solvable": self.solvable_count,
            "unsolvable": self.unsolvable_count,
            "witness": witness,
            "empirical_only": self.empirical_only,
        }


def _rng(cfg: SamplerConfig, index=None):
    material = [cfg.seed & 0xFFFFFFFFFFFFFFFF]
    if index is not None:
        material.append(index)
    return np.random.default_rng(material)


def _nonzero_draw(rng, lo, hi):
    magnitude = rng.uniform(lo, hi)
    sign = 1.0 if rng.random() < 0.5 else -1.0
    return sign * magnitude


def sample_member(pattern: PatternMatrix, cfg: SamplerConfig,
                  index=None, rng=None) -> np.ndarray:
    """Draw one member of the pattern class.

    Deterministic for a given config; pass ``index`` to address the
    k-th member of a stream, so parallel and serial evaluation of a
    stream agree draw for draw.
    """
    if rng is None:
        rng = _rng(cfg, index)
    lo, hi = cfg.magnitude_range
    out = np.zeros(pattern.shape)
    sym = pattern.to_array()
    for i in range(pattern.rows):
        for j in range(pattern.cols):
            if sym[i, j] == Symbol.STAR:
                out[i, j] = _nonzero_draw(rng, max(cfg.min_magnitude, lo), hi)
            elif sym[i, j] == Symbol.QUESTION:
                if rng.random() >= cfg.question_zero_prob:
                    out[i, j] = _nonzero_draw(rng, lo, hi)
    return out


def sample_triple(sys: StructuredTriple, cfg: SamplerConfig,
                  index=None) -> NumericTriple:
    """Draw one concrete (A, L, C) member of a structured triple."""
    rng = _rng(cfg, index)
    return NumericTriple(A=sample_member(sys.A_pat, cfg, rng=rng),
                         L=sample_member(sys.L_pat, cfg, rng=rng),
                         C=sample_member(sys.C_pat, cfg, rng=rng))


def monte_carlo_solvability(sys: StructuredTriple, n_samples: int,
                            cfg: SamplerConfig,
                            tol: ToleranceConfig = DEFAULT_TOL
                            ) -> MonteCarloSummary:
    """Sample members and test each one for isolation solvability.

    Keeps the first unsolvable member found as a witness.  The tally is
    empirical evidence: it can falsify class-level solvability but never
    establish it.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    solvable = 0
    witness = None
    for k in range(n_samples):
        member = sample_triple(sys, cfg, index=k)
        if is_solvable(member, tol).solvable:
            solvable += 1
        elif witness is None:
            witness = member
    return MonteCarloSummary(n_samples=n_samples, seed=cfg.seed,
                             solvable_count=solvable,
                             unsolvable_count=n_samples - solvable,
                             witness=witness)


def falsify_pattern_rank(pattern: PatternMatrix, n_samples: int,
                         cfg: SamplerConfig,
                         tol: ToleranceConfig = DEFAULT_TOL
                         ) -> Optional[np.ndarray]:
    """Search for a class member without full row rank.

    Two deterministic heuristic draws come first and count against the
    budget: arbitrary entries zeroed with unit magnitudes elsewhere, and
    all nonzero-capable entries set to one (equal magnitudes expose
    cancellation-based rank drops).  Remaining budget goes to random
    draws.  Returns the first rank-deficient member found, None
    otherwise.  Transpose the pattern to probe column rank.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    sym = pattern.to_array()
    heuristics = [
        np.where(sym == Symbol.STAR, 1.0, 0.0),
        np.where(sym != Symbol.ZERO, 1.0, 0.0),
    ]
    budget = n_samples
    for candidate in heuristics:
        if budget == 0:
            return None
        budget -= 1
        if _lacks_full_row_rank(candidate, pattern, tol):
            return candidate
    for k in range(budget):
        candidate = sample_member(pattern, cfg, index=k)
        if _lacks_full_row_rank(candidate, pattern, tol):
            return candidate
    return None


def _lacks_full_row_rank(candidate, pattern, tol):
    if pattern.rows > pattern.cols:
        return True
    return image(candidate, tol).dim < pattern.rows
