import numpy as np
import pytest

from structfdi import NumericTriple, StructuredTriple, parse_pattern


@pytest.fixture
def missing_index_triple():
    """Three-state chain with a fault channel that never reaches the output.

    Channels 1 and 2 show up immediately; channel 3 only drives the
    unmeasured third state, so its structural index does not exist.
    """
    return StructuredTriple(
        A_pat=parse_pattern("0 0 0\n* 0 0\n0 0 0\n"),
        L_pat=parse_pattern("* 0 0\n0 * 0\n0 * *\n"),
        C_pat=parse_pattern("? * 0\n0 * 0\n"),
    )


@pytest.fixture
def gap_triple():
    """Two-state static pattern whose rank certificate fails.

    Every member is solvable, yet the signature pattern is not full
    column rank as a class, so the analysis must stay inconclusive.
    """
    return StructuredTriple(
        A_pat=parse_pattern("0 0\n0 0\n"),
        L_pat=parse_pattern("* *\n0 *\n"),
        C_pat=parse_pattern("* *\n* 0\n"),
    )


@pytest.fixture
def colorable_triple():
    """Five-state system certified solvable through colorability."""
    return StructuredTriple(
        A_pat=parse_pattern(
            "* 0 0 0 0\n* ? 0 ? 0\n0 * * ? 0\n* 0 0 ? *\n0 0 * 0 *\n"),
        L_pat=parse_pattern("* 0\n? *\n0 0\n0 0\n0 0\n"),
        C_pat=parse_pattern("0 0 0 * 0\n0 0 0 ? ?\n0 0 0 * *\n"),
    )


def delayed_chain_member(lam):
    """Member of the three-state chain with all sure entries set to 1.

    ``lam`` fills the single arbitrary output entry; zero there delays
    the first channel's response by one power of A.
    """
    return NumericTriple(
        A=np.array([[0, 0, 0], [1, 0, 0], [0, 0, 0]], dtype=float),
        L=np.array([[1, 0, 0], [0, 1, 0], [0, 1, 1]], dtype=float),
        C=np.array([[lam, 1, 0], [0, 1, 0]], dtype=float),
    )


def gap_member():
    """The two-state member with every nonzero entry equal to one."""
    return NumericTriple(
        A=np.zeros((2, 2)),
        L=np.array([[1.0, 1.0], [0.0, 1.0]]),
        C=np.array([[1.0, 1.0], [1.0, 0.0]]),
    )


def sparse_values(rng, shape, density):
    values = rng.uniform(0.5, 2.0, size=shape) * rng.choice([-1.0, 1.0], size=shape)
    mask = rng.random(shape) < density
    return np.where(mask, values, 0.0)


def random_system(rng, n_max=8, pq_max=4):
    """One seeded random system with sparse enough structure to make
    fault indices vary (missing, one, or several powers deep)."""
    n = int(rng.integers(2, n_max + 1))
    p = int(rng.integers(1, pq_max + 1))
    q = int(rng.integers(1, pq_max + 1))
    return NumericTriple(
        A=sparse_values(rng, (n, n), 0.35),
        L=sparse_values(rng, (n, q), 0.5),
        C=sparse_values(rng, (p, n), 0.5),
    )


def system_corpus(seed, count):
    rng = np.random.default_rng(seed)
    return [random_system(rng) for _ in range(count)]
