"""Small GF(2) linear algebra helpers (dense, uint8)."""
from __future__ import annotations

import numpy as np


class SingularF2Matrix(ValueError):
    pass


def rank(a: np.ndarray) -> int:
    a = (np.asarray(a, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b over GF(2); a must be square and invertible."""
    a = (np.asarray(a, dtype=np.uint8) & 1).copy()
    b = (np.asarray(b, dtype=np.uint8) & 1).copy()
    m = a.shape[0]
    if a.shape[1] != m or b.shape[0] != m:
        raise ValueError("shape mismatch")
    aug = np.concatenate([a, b.reshape(m, 1)], axis=1)
    for c in range(m):
        pivot = None
        for i in range(c, m):
            if aug[i, c]:
                pivot = i
                break
        if pivot is None:
            raise SingularF2Matrix(f"no pivot in column {c}")
        aug[[c, pivot]] = aug[[pivot, c]]
        for i in range(m):
            if i != c and aug[i, c]:
                aug[i] ^= aug[c]
    return aug[:, m]


def invert(a: np.ndarray) -> np.ndarray:
    a = (np.asarray(a, dtype=np.uint8) & 1).copy()
    m = a.shape[0]
    aug = np.concatenate([a, np.eye(m, dtype=np.uint8)], axis=1)
    for c in range(m):
        pivot = None
        for i in range(c, m):
            if aug[i, c]:
                pivot = i
                break
        if pivot is None:
            raise SingularF2Matrix(f"no pivot in column {c}")
        aug[[c, pivot]] = aug[[pivot, c]]
        for i in range(m):
            if i != c and aug[i, c]:
                aug[i] ^= aug[c]
    return aug[:, m:]
