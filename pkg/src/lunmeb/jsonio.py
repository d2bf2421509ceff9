"""Encoding of complex vectors and matrices for the JSON interfaces.

Complex numbers travel as [re, im] pairs.  Vectors are lists of pairs,
matrices are flat row-major lists of pairs (the shape is carried separately
by the owning document).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "complex_to_pair",
    "pair_to_complex",
    "vector_to_json",
    "vector_from_json",
    "matrix_to_json",
    "matrix_from_json",
]


def complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def pair_to_complex(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def vector_to_json(vec) -> list[list[float]]:
    arr = np.asarray(vec, dtype=complex).reshape(-1)
    return [complex_to_pair(z) for z in arr]


def vector_from_json(data) -> np.ndarray:
    return np.array([pair_to_complex(pair) for pair in data], dtype=complex)


def matrix_to_json(matrix) -> list[list[float]]:
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {arr.shape}")
    return [complex_to_pair(z) for z in arr.reshape(-1)]


def matrix_from_json(data, rows: int, cols: int) -> np.ndarray:
    flat = vector_from_json(data)
    if flat.size != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {flat.size}")
    return flat.reshape(rows, cols)
