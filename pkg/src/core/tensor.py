"""
Sparse multi-index tensors with exact entries

Entries are kept in a dict keyed by index tuples; zero entries are never
stored and iteration is always lexicographic, so reports built from a tensor
are reproducible.
"""
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple

import sympy

from src.core.errors import ShapeMismatchError
from src.utils.rationals import parse_rational, render_value

Index = Tuple[int, ...]


class SparseArray:
    """Base for sparse arrays; subclasses fix the entry type"""

    __slots__ = ("_shape", "_entries")

    def __init__(self, shape: Sequence[int], entries: Any = None):
        shape = tuple(int(n) for n in shape)
        if any(n <= 0 for n in shape):
            raise ShapeMismatchError(f"Shape dimensions must be positive, got {shape}")
        self._shape = shape
        self._entries: Dict[Index, Any] = {}
        if entries is None:
            return
        pairs = entries.items() if isinstance(entries, dict) else entries
        for index, value in pairs:
            index = tuple(int(i) for i in index)
            self._check_index(index)
            value = self._coerce(value)
            if self._is_zero(value):
                continue
            if index in self._entries:
                value = self._coerce(self._entries[index] + value)
                if self._is_zero(value):
                    del self._entries[index]
                    continue
            self._entries[index] = value

    # Entry type hooks
    @staticmethod
    def _coerce(value: Any) -> Any:
        raise NotImplementedError

    @staticmethod
    def _is_zero(value: Any) -> bool:
        raise NotImplementedError

    @classmethod
    def _zero(cls) -> Any:
        raise NotImplementedError

    def _check_index(self, index: Index) -> None:
        if len(index) != len(self._shape):
            raise ShapeMismatchError(
                f"Index {index} has {len(index)} slots, tensor has rank {len(self._shape)}"
            )
        for i, n in zip(index, self._shape):
            if not 0 <= i < n:
                raise ShapeMismatchError(f"Index {index} out of bounds for shape {self._shape}")

    @property
    def shape(self) -> Tuple[int, ...]:
        return self._shape

    @property
    def rank(self) -> int:
        return len(self._shape)

    def __getitem__(self, index) -> Any:
        if not isinstance(index, tuple):
            index = (index,)
        self._check_index(index)
        return self._entries.get(index, self._zero())

    def items(self) -> List[Tuple[Index, Any]]:
        """Nonzero entries in lexicographic index order"""
        return sorted(self._entries.items())

    def __iter__(self) -> Iterator[Tuple[Index, Any]]:
        return iter(self.items())

    @property
    def nonzero_count(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def witness(self, limit: int = 10) -> List[Dict[str, Any]]:
        """First `limit` nonzero entries as {"indices", "value"} records"""
        return [
            {"indices": list(index), "value": render_value(value)}
            for index, value in self.items()[:limit]
        ]

    def _same_shape(self, other: "SparseArray") -> None:
        if self._shape != other._shape:
            raise ShapeMismatchError(f"Shape mismatch: {self._shape} vs {other._shape}")

    def _new(self, entries: Iterable[Tuple[Index, Any]]):
        return type(self)(self._shape, entries)

    def __add__(self, other: "SparseArray"):
        self._same_shape(other)
        return self._new(list(self._entries.items()) + list(other._entries.items()))

    def __neg__(self):
        return self._new((i, -v) for i, v in self._entries.items())

    def __sub__(self, other: "SparseArray"):
        return self + (-other)

    def scale(self, factor: Any):
        return self._new((i, v * factor) for i, v in self._entries.items())

    def __rmul__(self, factor: Any):
        return self.scale(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseArray):
            return NotImplemented
        return self._shape == other._shape and (self - other).is_zero()

    __hash__ = None

    def permute_axes(self, axes: Sequence[int]):
        """Return the tensor with index slots reordered: new[k] = old[axes[k]]"""
        axes = tuple(axes)
        if sorted(axes) != list(range(self.rank)):
            raise ShapeMismatchError(f"Invalid axis permutation {axes} for rank {self.rank}")
        shape = tuple(self._shape[a] for a in axes)
        return type(self)(
            shape, ((tuple(index[a] for a in axes), v) for index, v in self._entries.items())
        )

    def to_dense(self) -> List:
        """Nested lists, zeros included"""
        def build(prefix: Index, depth: int):
            if depth == self.rank:
                return self._entries.get(prefix, self._zero())
            return [build(prefix + (i,), depth + 1) for i in range(self._shape[depth])]
        return build((), 0)

    def __repr__(self) -> str:
        shown = ", ".join(f"{list(i)}: {render_value(v)}" for i, v in self.items()[:6])
        more = "" if self.nonzero_count <= 6 else ", ..."
        return f"{type(self).__name__}(shape={self._shape}, {{{shown}{more}}})"


class Tensor(SparseArray):
    """Sparse tensor over Fraction"""

    __slots__ = ()

    @staticmethod
    def _coerce(value: Any) -> Fraction:
        return parse_rational(value)

    @staticmethod
    def _is_zero(value: Fraction) -> bool:
        return value == 0

    @classmethod
    def _zero(cls) -> Fraction:
        return Fraction(0)

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> "Tensor":
        return cls(shape)

    @classmethod
    def from_dense(cls, rows: Any) -> "Tensor":
        """Build from nested lists of rationals (any rank)"""
        shape: List[int] = []
        level = rows
        while isinstance(level, (list, tuple)):
            shape.append(len(level))
            level = level[0] if level else None
        entries = []
        for index in product(*(range(n) for n in shape)):
            value = rows
            for i in index:
                value = value[i]
            entries.append((index, value))
        return cls(shape, entries)

    def to_poly(self) -> "PolyTensor":
        return PolyTensor(self._shape, self._entries.items())


class PolyTensor(SparseArray):
    """Sparse tensor whose entries are expanded sympy expressions"""

    __slots__ = ()

    @staticmethod
    def _coerce(value: Any) -> sympy.Expr:
        if isinstance(value, Fraction):
            return sympy.Rational(value.numerator, value.denominator)
        return sympy.expand(sympy.sympify(value))

    @staticmethod
    def _is_zero(value: sympy.Expr) -> bool:
        return value == 0

    @classmethod
    def _zero(cls) -> sympy.Expr:
        return sympy.Integer(0)


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    """Outer product: shapes concatenate, entries multiply"""
    return Tensor(
        a.shape + b.shape,
        ((ia + ib, va * vb) for ia, va in a.items() for ib, vb in b.items()),
    )
