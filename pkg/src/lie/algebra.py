"""
Finite-dimensional Lie algebras given by structure constants

c is stored as a rank-3 Tensor with c[i, j, k] = c_{ij}^k, so that
[e_i, e_j] = Σ_k c_{ij}^k e_k.
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.linalg import identity, matmul
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, YBReport


def antisymmetry_defect(c: Tensor) -> Tensor:
    """c_{ij}^k + c_{ji}^k"""
    return c + c.permute_axes((1, 0, 2))


def jacobi_defect_tensor(c: Tensor) -> Tensor:
    """J[i,j,k,t] = Σ_s c_{ij}^s c_{sk}^t + cyclic permutations of (i, j, k)"""
    n = c.shape[0]
    by_first: Dict[int, List] = defaultdict(list)
    for (s, k, t), v in c.items():
        by_first[s].append((k, t, v))
    nested: Dict = defaultdict(Fraction)
    for (i, j, s), v in c.items():
        for k, t, w in by_first.get(s, ()):
            nested[(i, j, k, t)] += v * w
    total: Dict = defaultdict(Fraction)
    for (i, j, k, t), v in nested.items():
        total[(i, j, k, t)] += v
        total[(k, i, j, t)] += v
        total[(j, k, i, t)] += v
    return Tensor((n, n, n, n), total)


class LieAlgebra:
    """Structure constants plus basis labels; antisymmetry and Jacobi are checked"""

    def __init__(
        self,
        c: Tensor,
        basis_names: Optional[Sequence[str]] = None,
        name: str = "",
        verify: bool = True,
    ):
        if c.rank != 3 or len(set(c.shape)) != 1:
            raise ShapeMismatchError(f"Structure constants must have shape (N,N,N), got {c.shape}")
        self.c = c
        self.dim = c.shape[0]
        self.name = name or f"lie{self.dim}"
        self.basis_names = list(basis_names) if basis_names else [f"e{i}" for i in range(self.dim)]
        if len(self.basis_names) != self.dim:
            raise ShapeMismatchError(
                f"{len(self.basis_names)} basis names given for a {self.dim}-dimensional algebra"
            )
        if not antisymmetry_defect(c).is_zero():
            raise PreconditionError(f"Structure constants of {self.name} are not antisymmetric")
        if verify and not jacobi_defect_tensor(c).is_zero():
            raise PreconditionError(f"Jacobi identity fails for {self.name}")

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for (i, j, k), v in self.c.items():
            if x[i] and y[j]:
                out[k] += v * x[i] * y[j]
        return out

    def basis_vector(self, i: int) -> List[Fraction]:
        return [Fraction(1 if k == i else 0) for k in range(self.dim)]

    def ad(self, i: int) -> Tensor:
        """Matrix of ad(e_i): column j holds [e_i, e_j]"""
        return Tensor(
            (self.dim, self.dim), (((k, j), v) for (a, j, k), v in self.c.items() if a == i)
        )

    def ad_of(self, x: Sequence[Fraction]) -> Tensor:
        out = Tensor.zeros((self.dim, self.dim))
        for i, xi in enumerate(x):
            if xi:
                out = out + self.ad(i).scale(xi)
        return out

    def is_abelian(self) -> bool:
        return self.c.is_zero()

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name}, dim={self.dim})"


def jacobi_check(algebra: LieAlgebra, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    return YBReport.from_defect("jacobi", jacobi_defect_tensor(algebra.c), limit)


def structure_from_brackets(dim: int, brackets: Dict) -> Tensor:
    """Structure constants from {(i, j): {k: value}} with i < j; antisymmetric completion"""
    entries = []
    for (i, j), image in brackets.items():
        for k, value in image.items():
            entries.append(((i, j, k), value))
            entries.append(((j, i, k), -Fraction(value)))
    return Tensor((dim, dim, dim), entries)


def sl2() -> LieAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h"""
    c = structure_from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    return LieAlgebra(c, ["h", "e", "f"], name="sl2")


def borel_sl2() -> LieAlgebra:
    """Upper Borel subalgebra span(h, e) of sl2"""
    c = structure_from_brackets(2, {(0, 1): {1: 2}})
    return LieAlgebra(c, ["h", "e"], name="borel-sl2")


def two_dim_nonabelian() -> LieAlgebra:
    """[e0, e1] = e0"""
    c = structure_from_brackets(2, {(0, 1): {0: 1}})
    return LieAlgebra(c, ["e0", "e1"], name="two-dim-nonabelian")


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(Tensor.zeros((n, n, n)), name=f"abelian{n}")


def gl_n(n: int) -> LieAlgebra:
    """Matrix units E_ab at index a*n + b with [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb"""
    dim = n * n
    entries = []
    for a in range(n):
        for b in range(n):
            for c_ in range(n):
                for d in range(n):
                    left, right = a * n + b, c_ * n + d
                    if b == c_:
                        entries.append(((left, right, a * n + d), 1))
                    if d == a:
                        entries.append(((left, right, c_ * n + b), -1))
    names = [f"E{a}{b}" for a in range(n) for b in range(n)]
    return LieAlgebra(Tensor((dim, dim, dim), entries), names, name=f"gl{n}")


def from_associative(m: Tensor, basis_names: Optional[Sequence[str]] = None, verify: bool = True) -> LieAlgebra:
    """Commutator algebra of a bilinear product m[i, j, k] = m_{ij}^k"""
    c = m - m.permute_axes((1, 0, 2))
    return LieAlgebra(c, basis_names, name="commutator", verify=verify)


def exp_nilpotent(a: Tensor) -> Tensor:
    """exp(A) for nilpotent A; raises when A is not nilpotent"""
    n = a.shape[0]
    result = identity(n)
    term = identity(n)
    for k in range(1, n + 1):
        term = matmul(term, a).scale(Fraction(1, k))
        if term.is_zero():
            return result
        result = result + term
    raise PreconditionError("exp_nilpotent called on a matrix that is not nilpotent")
