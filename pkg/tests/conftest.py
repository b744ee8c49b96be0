import cmath
import random

import numpy as np
import pytest

from knotconc.seifert import SeifertMatrix


def random_seifert(rng: random.Random, genus: int) -> SeifertMatrix:
    """Random integer Seifert matrix with entries in [-3, 3].

    V - V^T is pinned to the standard symplectic form, so det(V - V^T) = 1
    by construction and every draw is valid.
    """
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.randint(-3, 3)
    for i in range(n):
        for j in range(i + 1, n):
            a = rng.randint(-3, 3)
            if j == i + 1 and i % 2 == 0:
                b = a - 1
                if b < -3:
                    a, b = -2, -3
            else:
                b = a
            rows[i][j] = a
            rows[j][i] = b
    return SeifertMatrix.from_rows(rows)


def float_lt_signature(V: SeifertMatrix, q: int, j: int, margin: float = 1e-6):
    """Floating-point eigenvalue count n+ - n-, or None when any eigenvalue
    is too close to zero to certify (caller discards those samples)."""
    w = cmath.exp(2 * cmath.pi * 1j * j / q)
    A = np.array(V.rows, dtype=complex)
    H = (1 - w) * A + (1 - w.conjugate()) * A.T
    eigs = np.linalg.eigvalsh(H)
    scale = max(1.0, float(np.abs(H).max()))
    if float(np.abs(eigs).min()) < margin * scale:
        return None
    return int(np.sum(eigs > 0) - np.sum(eigs < 0))


@pytest.fixture(scope="session")
def seifert_corpus():
    rng = random.Random(20240517)
    return [random_seifert(rng, rng.randint(1, 5)) for _ in range(200)]
