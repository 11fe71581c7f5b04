"""
Polynomial rings and Poisson structures given by coordinate brackets
"""
from random import Random
from typing import Dict, Iterable, List, Optional, Sequence

import sympy

from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.tensor import PolyTensor


class PolyRing:
    """Polynomials over Q in named coordinates"""

    def __init__(self, names: Sequence[str]):
        if len(set(names)) != len(names):
            raise ShapeMismatchError(f"Duplicate variable names in {list(names)}")
        self.names = list(names)
        self.symbols: List[sympy.Symbol] = [sympy.Symbol(n) for n in self.names]

    @classmethod
    def dual_coordinates(cls, dim: int, prefix: str = "u") -> "PolyRing":
        return cls([f"{prefix}{i}" for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.names)

    def coordinate(self, i: int) -> sympy.Symbol:
        return self.symbols[i]

    def gradient(self, h: sympy.Expr) -> List[sympy.Expr]:
        return [sympy.expand(sympy.diff(h, s)) for s in self.symbols]

    def linear_form(self, coeffs: Iterable) -> sympy.Expr:
        return sympy.expand(sum(sympy.sympify(c) * s for c, s in zip(coeffs, self.symbols)))

    def substitute(self, expr: sympy.Expr, images: Sequence[sympy.Expr]) -> sympy.Expr:
        """Ring map sending coordinate i to images[i]"""
        if len(images) != self.dim:
            raise ShapeMismatchError(f"Need {self.dim} images, got {len(images)}")
        return sympy.expand(sympy.sympify(expr).xreplace(dict(zip(self.symbols, images))))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names

    __hash__ = None

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"


class PoissonStructure:
    """
    π[i][j] = {x_i, x_j}; the bracket extends by the Leibniz rule

    Raises:
        ShapeMismatchError: If π is not dim × dim
        PreconditionError: If π is not skew
    """

    def __init__(self, ring: PolyRing, pi: Sequence[Sequence], name: str = ""):
        if len(pi) != ring.dim or any(len(row) != ring.dim for row in pi):
            raise ShapeMismatchError(f"Bracket matrix must be {ring.dim}x{ring.dim}")
        self.ring = ring
        self.pi = [[sympy.expand(sympy.sympify(v)) for v in row] for row in pi]
        self.name = name or "poisson"
        if not self.antisymmetry_defect().is_zero():
            raise PreconditionError(f"Bracket matrix of {self.name} is not skew")

    @classmethod
    def zero(cls, ring: PolyRing) -> "PoissonStructure":
        return cls(ring, [[0] * ring.dim for _ in range(ring.dim)], name="zero")

    def bracket(self, h: sympy.Expr, f: sympy.Expr) -> sympy.Expr:
        """{H, F} = Σ π_ij ∂_i H ∂_j F"""
        gh, gf = self.ring.gradient(h), self.ring.gradient(f)
        total = sympy.Integer(0)
        for i, row in enumerate(self.pi):
            if gh[i] == 0:
                continue
            for j, p in enumerate(row):
                if p != 0 and gf[j] != 0:
                    total += p * gh[i] * gf[j]
        return sympy.expand(total)

    def antisymmetry_defect(self) -> PolyTensor:
        n = self.ring.dim
        return PolyTensor((n, n), (((i, j), self.pi[i][j] + self.pi[j][i]) for i in range(n) for j in range(n)))

    def __add__(self, other: "PoissonStructure") -> "PoissonStructure":
        if self.ring != other.ring:
            raise ShapeMismatchError("Poisson structures live on different rings")
        n = self.ring.dim
        return PoissonStructure(
            self.ring,
            [[self.pi[i][j] + other.pi[i][j] for j in range(n)] for i in range(n)],
            name=f"{self.name}+{other.name}",
        )

    def scale(self, factor) -> "PoissonStructure":
        return PoissonStructure(
            self.ring, [[factor * v for v in row] for row in self.pi], name=f"{factor}*{self.name}"
        )

    def entries(self) -> Dict:
        return {(i, j): v for i, row in enumerate(self.pi) for j, v in enumerate(row) if v != 0}

    def __repr__(self) -> str:
        return f"PoissonStructure({self.name} on {self.ring!r})"


def require_same_ring(first: PoissonStructure, second: PoissonStructure) -> None:
    if first.ring != second.ring:
        raise ShapeMismatchError(f"Ring mismatch: {first.ring!r} vs {second.ring!r}")


def jacobi_defect(p: PoissonStructure, other: Optional[PoissonStructure] = None) -> PolyTensor:
    """
    {{x_i, x_j}, x_k} + c.p. for i < j < k

    With `other`, the mixed sum {{·,·}_1,·}_2 + {{·,·}_2,·}_1 + c.p. is returned
    instead, which vanishes exactly when the two brackets are compatible.
    """
    q = other or p
    if other is not None:
        require_same_ring(p, other)
    ring = p.ring
    n = ring.dim
    grads_p = [[ring.gradient(v) for v in row] for row in p.pi]
    grads_q = grads_p if other is None else [[ring.gradient(v) for v in row] for row in q.pi]

    def nested(grads, outer, i, j, k):
        # {{x_i, x_j}_inner, x_k}_outer = Σ_m ∂_m π_ij π_mk
        return sum((g * outer.pi[m][k] for m, g in enumerate(grads[i][j]) if g != 0), sympy.Integer(0))

    entries = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = sympy.Integer(0)
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    total += nested(grads_p, q, a, b, c)
                    if other is not None:
                        total += nested(grads_q, p, a, b, c)
                entries.append(((i, j, k), total))
    return PolyTensor((n, n, n), entries)


def compatibility_defect(first: PoissonStructure, second: PoissonStructure) -> PolyTensor:
    return jacobi_defect(first, second)


def casimir_defect(p: PoissonStructure, h: sympy.Expr) -> PolyTensor:
    """{H, x_i} for every coordinate"""
    n = p.ring.dim
    return PolyTensor((n,), (((i,), p.bracket(h, p.ring.coordinate(i))) for i in range(n)))


def full_jacobi(p: PoissonStructure, h: sympy.Expr, f: sympy.Expr, g: sympy.Expr) -> sympy.Expr:
    """{{H,F},G} + {{F,G},H} + {{G,H},F} on arbitrary polynomials"""
    return sympy.expand(
        p.bracket(p.bracket(h, f), g) + p.bracket(p.bracket(f, g), h) + p.bracket(p.bracket(g, h), f)
    )


def random_polynomial(ring: PolyRing, rng: Random, degree: int = 3, terms: int = 4) -> sympy.Expr:
    """Sum of `terms` monomials of degree ≤ `degree` with coefficients in {-2..2}"""
    total = sympy.Integer(0)
    for _ in range(terms):
        monomial = sympy.Integer(rng.randint(-2, 2))
        for _ in range(rng.randint(0, degree)):
            monomial *= rng.choice(ring.symbols)
        total += monomial
    return sympy.expand(total)
