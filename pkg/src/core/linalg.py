"""
Exact linear algebra on rank-2 Tensors
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Sequence

import sympy

from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.tensor import Tensor
from src.utils.rationals import to_sympy


def _require_matrix(a: Tensor, name: str = "matrix") -> None:
    if a.rank != 2:
        raise ShapeMismatchError(f"{name} must have rank 2, got shape {a.shape}")


def _require_square(a: Tensor, name: str = "matrix") -> int:
    _require_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"{name} must be square, got shape {a.shape}")
    return a.shape[0]


def identity(n: int) -> Tensor:
    return Tensor((n, n), (((i, i), 1) for i in range(n)))


def matrix(rows: Sequence[Sequence]) -> Tensor:
    """Dense row lists to a matrix"""
    return Tensor.from_dense([list(r) for r in rows])


def matmul(a: Tensor, b: Tensor) -> Tensor:
    _require_matrix(a, "left factor")
    _require_matrix(b, "right factor")
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatchError(f"Cannot multiply {a.shape} by {b.shape}")
    rows_of_b: Dict[int, List] = defaultdict(list)
    for (k, j), v in b.items():
        rows_of_b[k].append((j, v))
    out: Dict = defaultdict(Fraction)
    for (i, k), va in a.items():
        for j, vb in rows_of_b.get(k, ()):
            out[(i, j)] += va * vb
    return Tensor((a.shape[0], b.shape[1]), out)


def matmul_chain(*factors: Tensor) -> Tensor:
    result = factors[0]
    for f in factors[1:]:
        result = matmul(result, f)
    return result


def matvec(a: Tensor, v: Sequence[Fraction]) -> List[Fraction]:
    _require_matrix(a)
    if a.shape[1] != len(v):
        raise ShapeMismatchError(f"Cannot apply {a.shape} matrix to vector of length {len(v)}")
    out = [Fraction(0)] * a.shape[0]
    for (i, j), value in a.items():
        out[i] += value * v[j]
    return out


def transpose(a: Tensor) -> Tensor:
    _require_matrix(a)
    return a.permute_axes((1, 0))


def commutator(a: Tensor, b: Tensor) -> Tensor:
    """AB - BA"""
    _require_square(a)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Commutator needs equal shapes, got {a.shape} and {b.shape}")
    return matmul(a, b) - matmul(b, a)


def kron(a: Tensor, b: Tensor) -> Tensor:
    """Kronecker product of operators: (a ⊗ b)[(i,k),(j,l)] = a[i,j] b[k,l]"""
    _require_matrix(a)
    _require_matrix(b)
    r, c = b.shape
    return Tensor(
        (a.shape[0] * r, a.shape[1] * c),
        (((i * r + k, j * c + l), va * vb) for (i, j), va in a.items() for (k, l), vb in b.items()),
    )


def is_skew(a: Tensor) -> bool:
    _require_square(a)
    return (a + transpose(a)).is_zero()


def to_sympy_matrix(a: Tensor) -> sympy.Matrix:
    _require_matrix(a)
    out = sympy.zeros(*a.shape)
    for (i, j), v in a.items():
        out[i, j] = to_sympy(v)
    return out


def from_sympy_matrix(m: sympy.Matrix) -> Tensor:
    """Rational sympy matrix back to a Tensor"""
    return Tensor(
        m.shape,
        (((i, j), Fraction(int(m[i, j].p), int(m[i, j].q))) for i in range(m.rows) for j in range(m.cols)),
    )


def rank(a: Tensor) -> int:
    return to_sympy_matrix(a).rank()


def inverse(a: Tensor) -> Tensor:
    """
    Exact inverse

    Raises:
        PreconditionError: If the matrix is singular
    """
    _require_square(a)
    m = to_sympy_matrix(a)
    if m.det() == 0:
        raise PreconditionError("Matrix is singular")
    return from_sympy_matrix(m.inv())


def is_invertible(a: Tensor) -> bool:
    return rank(a) == _require_square(a)
