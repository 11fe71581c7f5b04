"""
Matrix-valued power series in a formal parameter h, truncated after h²
"""
from typing import List, Sequence

from src.core.embedding import embed_pair
from src.core.errors import ShapeMismatchError
from src.core.linalg import identity, matmul
from src.core.tensor import Tensor

ORDER = 2


class HSeries:
    """c0 + h c1 + h² c2 with square Fraction matrices of one shape"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[Tensor]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ShapeMismatchError("HSeries needs at least one coefficient")
        shape = coeffs[0].shape
        if len(shape) != 2 or shape[0] != shape[1]:
            raise ShapeMismatchError(f"HSeries coefficients must be square, got {shape}")
        if any(c.shape != shape for c in coeffs):
            raise ShapeMismatchError("HSeries coefficients must share one shape")
        coeffs = coeffs[: ORDER + 1]
        while len(coeffs) < ORDER + 1:
            coeffs.append(Tensor.zeros(shape))
        self._coeffs = tuple(coeffs)

    @classmethod
    def perturbation(cls, r: Tensor, rho: Tensor) -> "HSeries":
        """1 + h r + h² rho"""
        return cls([identity(r.shape[0]), r, rho])

    @property
    def coeffs(self) -> List[Tensor]:
        return list(self._coeffs)

    @property
    def size(self) -> int:
        return self._coeffs[0].shape[0]

    def coefficient(self, power: int) -> Tensor:
        return self._coeffs[power]

    def __add__(self, other: "HSeries") -> "HSeries":
        return HSeries([a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other: "HSeries") -> "HSeries":
        return HSeries([a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __mul__(self, other: "HSeries") -> "HSeries":
        if self.size != other.size:
            raise ShapeMismatchError(f"HSeries sizes differ: {self.size} vs {other.size}")
        out = []
        for n in range(ORDER + 1):
            term = Tensor.zeros(self._coeffs[0].shape)
            for k in range(n + 1):
                term = term + matmul(self._coeffs[k], other._coeffs[n - k])
            out.append(term)
        return HSeries(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HSeries):
            return NotImplemented
        return all(a == b for a, b in zip(self._coeffs, other._coeffs))

    __hash__ = None

    def embed(self, slot: str, d: int) -> "HSeries":
        return HSeries([embed_pair(c, slot, d) for c in self._coeffs])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coeffs)
