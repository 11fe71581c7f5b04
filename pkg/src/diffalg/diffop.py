"""
Matrix differential operators Σ_n a_n ∂^n with coefficients in the jet ring
"""
from collections import defaultdict
from math import comb
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from src.core.errors import PreconditionError, ShapeMismatchError
from src.diffalg.jets import JetSpace

Scalar = Dict[int, sympy.Expr]


def _clean(scalar: Mapping[int, Any]) -> Scalar:
    out = {}
    for n, a in scalar.items():
        if n < 0:
            raise ValueError(f"Negative operator order: {n}")
        a = sympy.expand(sympy.sympify(a))
        if a != 0:
            out[n] = a
    return out


def _add(left: Scalar, right: Scalar, sign: int = 1) -> Scalar:
    total: Dict[int, sympy.Expr] = defaultdict(lambda: sympy.Integer(0))
    for n, a in left.items():
        total[n] += a
    for n, b in right.items():
        total[n] += sign * b
    return _clean(total)


class DiffOp:
    """
    A rows × cols matrix whose (i, j) entry is {n: a_n} meaning Σ a_n ∂^n

    Entries are kept expanded with zero coefficients dropped, so equality of
    two operators is equality of their normal forms.
    """

    def __init__(self, space: JetSpace, shape: Tuple[int, int], entries: Optional[Mapping] = None):
        self.space = space
        self.shape = (int(shape[0]), int(shape[1]))
        self._entries: Dict[Tuple[int, int], Scalar] = {}
        for (i, j), scalar in (entries or {}).items():
            if not (0 <= i < self.shape[0] and 0 <= j < self.shape[1]):
                raise ShapeMismatchError(f"Entry {(i, j)} outside shape {self.shape}")
            cleaned = _clean(scalar)
            if cleaned:
                self._entries[(i, j)] = cleaned

    @classmethod
    def zero(cls, space: JetSpace, shape: Tuple[int, int]) -> "DiffOp":
        return cls(space, shape)

    @classmethod
    def identity(cls, space: JetSpace, n: int) -> "DiffOp":
        return cls(space, (n, n), {(i, i): {0: 1} for i in range(n)})

    @classmethod
    def scalar(cls, space: JetSpace, coeffs: Mapping[int, Any]) -> "DiffOp":
        return cls(space, (1, 1), {(0, 0): coeffs})

    @classmethod
    def from_blocks(cls, space: JetSpace, blocks: Sequence[Sequence[Any]]) -> "DiffOp":
        """Block layout of 1×1 operators, {n: a_n} dicts or plain coefficients"""
        rows = len(blocks)
        cols = len(blocks[0]) if rows else 0
        entries = {}
        for i, row in enumerate(blocks):
            if len(row) != cols:
                raise ShapeMismatchError("Ragged operator blocks")
            for j, block in enumerate(row):
                if isinstance(block, DiffOp):
                    if block.shape != (1, 1):
                        raise ShapeMismatchError(f"Block {(i, j)} is not scalar")
                    entries[(i, j)] = block.entry(0, 0)
                elif isinstance(block, Mapping):
                    entries[(i, j)] = block
                else:
                    entries[(i, j)] = {0: block}
        return cls(space, (rows, cols), entries)

    @classmethod
    def from_linear_images(
        cls, space: JetSpace, results: Sequence[sympy.Expr], test_names: Sequence[str]
    ) -> "DiffOp":
        """
        Read an operator off its values on formal test elements: results[i]
        must be linear in the jets of test_names, and the coefficient of
        test_j^(n) becomes entry (i, j) at order n

        Raises:
            PreconditionError: If some result is not linear in the test jets
        """
        entries = {}
        for i, expr in enumerate(results):
            expr = sympy.expand(sympy.sympify(expr))
            test_jets = [(s, v, n) for s, v, n in space.jet_symbols(expr) if v in test_names]
            rest = expr.xreplace({s: 0 for s, _, _ in test_jets})
            if sympy.expand(rest) != 0:
                raise PreconditionError(f"Row {i} has a part free of the test elements")
            for s, v, n in test_jets:
                coeff = sympy.diff(expr, s)
                if any(coeff.has(t) for t, _, _ in test_jets):
                    raise PreconditionError(f"Row {i} is not linear in {', '.join(test_names)}")
                entries.setdefault((i, test_names.index(v)), {})[n] = coeff
        return cls(space, (len(results), len(test_names)), entries)

    def entry(self, i: int, j: int) -> Scalar:
        return dict(self._entries.get((i, j), {}))

    def items(self) -> List[Tuple[Tuple[int, int], Scalar]]:
        return sorted(self._entries.items())

    def is_zero(self) -> bool:
        return not self._entries

    @property
    def nonzero_count(self) -> int:
        return len(self._entries)

    def order(self) -> int:
        return max((n for scalar in self._entries.values() for n in scalar), default=-1)

    def apply(self, vector: Sequence[Any]) -> List[sympy.Expr]:
        """O(v)_i = Σ_j Σ_n a_n ∂^n v_j"""
        if len(vector) != self.shape[1]:
            raise ShapeMismatchError(f"Operator takes {self.shape[1]} components, got {len(vector)}")
        out = [sympy.Integer(0)] * self.shape[0]
        for (i, j), scalar in self._entries.items():
            for n, a in scalar.items():
                out[i] += a * self.space.total_derivative(vector[j], n)
        return [sympy.expand(v) for v in out]

    def compose(self, other: "DiffOp") -> "DiffOp":
        """
        self ∘ other, with a∂^n ∘ b∂^m = Σ_k C(n,k) a ∂^{n-k}(b) ∂^{k+m}
        """
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatchError(f"Cannot compose {self.shape} with {other.shape}")
        entries: Dict[Tuple[int, int], Scalar] = {}
        for (i, k), left in self._entries.items():
            for (kk, j), right in other._entries.items():
                if kk != k:
                    continue
                acc = entries.setdefault((i, j), {})
                for n, a in left.items():
                    for m, b in right.items():
                        for t in range(n + 1):
                            term = comb(n, t) * a * self.space.total_derivative(b, n - t)
                            acc[t + m] = acc.get(t + m, 0) + term
        return DiffOp(self.space, (self.shape[0], other.shape[1]), entries)

    __matmul__ = compose

    def adjoint(self) -> "DiffOp":
        """
        Formal adjoint: (a∂^n)† = (-∂)^n ∘ a = Σ_k (-1)^n C(n,k) ∂^{n-k}(a) ∂^k,
        transposed
        """
        entries: Dict[Tuple[int, int], Scalar] = {}
        for (i, j), scalar in self._entries.items():
            acc = entries.setdefault((j, i), {})
            for n, a in scalar.items():
                for k in range(n + 1):
                    term = (-1) ** n * comb(n, k) * self.space.total_derivative(a, n - k)
                    acc[k] = acc.get(k, 0) + term
        return DiffOp(self.space, (self.shape[1], self.shape[0]), entries)

    def substitute(self, images: Mapping[str, sympy.Expr]) -> "DiffOp":
        """Apply the differential ring map to every coefficient"""
        return DiffOp(
            self.space,
            self.shape,
            {
                key: {n: self.space.substitute(a, images) for n, a in scalar.items()}
                for key, scalar in self._entries.items()
            },
        )

    def scale(self, factor: Any) -> "DiffOp":
        factor = sympy.sympify(factor)
        return DiffOp(
            self.space, self.shape, {k: {n: factor * a for n, a in s.items()} for k, s in self._entries.items()}
        )

    def _combine(self, other: "DiffOp", sign: int) -> "DiffOp":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"Shape mismatch: {self.shape} vs {other.shape}")
        keys = set(self._entries) | set(other._entries)
        return DiffOp(
            self.space,
            self.shape,
            {k: _add(self._entries.get(k, {}), other._entries.get(k, {}), sign) for k in keys},
        )

    def __add__(self, other: "DiffOp") -> "DiffOp":
        return self._combine(other, 1)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self._combine(other, -1)

    def __neg__(self) -> "DiffOp":
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    __hash__ = None

    def is_skew(self) -> bool:
        return (self + self.adjoint()).is_zero()

    def witness(self, limit: int = 10) -> List[Dict[str, Any]]:
        return [
            {"indices": list(key), "value": render_scalar(scalar)}
            for key, scalar in self.items()[:limit]
        ]

    def __repr__(self) -> str:
        rows = [
            "[" + ", ".join(render_scalar(self._entries.get((i, j), {})) for j in range(self.shape[1])) + "]"
            for i in range(self.shape[0])
        ]
        return f"DiffOp({', '.join(rows)})"


def render_scalar(scalar: Mapping[int, sympy.Expr]) -> str:
    if not scalar:
        return "0"
    parts = []
    for n in sorted(scalar):
        a = sympy.sstr(scalar[n])
        if n == 0:
            parts.append(a)
        else:
            d = "∂" if n == 1 else f"∂^{n}"
            parts.append(f"({a})*{d}")
    return " + ".join(parts)
