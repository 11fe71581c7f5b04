"""
Representations of a LieAlgebra on a finite-dimensional module

chi is a rank-3 Tensor with chi[i, a, g] = χ_{ia}^g, so that
e_i·ℓ_a = Σ_g χ_{ia}^g ℓ_g. The matrix of e_i has entry [g, a] = χ_{ia}^g.
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.linalg import commutator, transpose
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, YBReport
from src.lie.algebra import LieAlgebra, sl2


def representation_defect(host: LieAlgebra, chi: Tensor) -> Tensor:
    """χ([e_i, e_j]) - [χ(e_i), χ(e_j)] as a tensor (i, j, g, a)"""
    n = host.dim
    if chi.rank != 3 or chi.shape[0] != n or chi.shape[1] != chi.shape[2]:
        raise ShapeMismatchError(f"Action tensor must have shape ({n}, d, d), got {chi.shape}")
    d = chi.shape[1]
    mats = _matrices(chi, n)
    entries: Dict = defaultdict(Fraction)
    for (i, j, k), v in host.c.items():
        for (g, a), w in mats[k].items():
            entries[(i, j, g, a)] += v * w
    for i in range(n):
        for j in range(n):
            for (g, a), w in commutator(mats[i], mats[j]).items():
                entries[(i, j, g, a)] -= w
    return Tensor((n, n, d, d), entries)


def _matrices(chi: Tensor, n: int) -> List[Tensor]:
    d = chi.shape[1]
    rows: List[list] = [[] for _ in range(n)]
    for (i, a, g), v in chi.items():
        rows[i].append(((g, a), v))
    return [Tensor((d, d), r) for r in rows]


class Representation:
    """A module over `host`; the homomorphism property is checked unless deferred"""

    def __init__(self, host: LieAlgebra, chi: Tensor, name: str = "", verify: bool = True):
        self.host = host
        self.chi = chi
        self.name = name or "module"
        if chi.rank != 3 or chi.shape[0] != host.dim or chi.shape[1] != chi.shape[2]:
            raise ShapeMismatchError(
                f"Action tensor must have shape ({host.dim}, d, d), got {chi.shape}"
            )
        self.dim = chi.shape[1]
        self._mats = _matrices(chi, host.dim)
        if verify and not representation_defect(host, chi).is_zero():
            raise PreconditionError(f"{self.name} is not a representation of {host.name}")

    def matrix(self, i: int) -> Tensor:
        return self._mats[i]

    def matrix_of(self, x: Sequence[Fraction]) -> Tensor:
        out = Tensor.zeros((self.dim, self.dim))
        for i, xi in enumerate(x):
            if xi:
                out = out + self._mats[i].scale(xi)
        return out

    def act(self, i: int, v: Sequence[Fraction]) -> List[Fraction]:
        """e_i·v"""
        out = [Fraction(0)] * self.dim
        for (g, a), w in self._mats[i].items():
            out[g] += w * v[a]
        return out

    def act_vector(self, x: Sequence[Fraction], v: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi:
                for g, value in enumerate(self.act(i, v)):
                    out[g] += xi * value
        return out

    def is_zero(self) -> bool:
        return self.chi.is_zero()

    def __repr__(self) -> str:
        return f"Representation({self.name} of {self.host.name}, dim={self.dim})"


def check_representation(host: LieAlgebra, chi: Tensor, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    return YBReport.from_defect("representation", representation_defect(host, chi), limit)


def from_matrices(host: LieAlgebra, matrices: Sequence[Tensor], name: str = "", verify: bool = True) -> Representation:
    """Matrices M_i acting on column vectors: M_i[g, a] = χ_{ia}^g"""
    if len(matrices) != host.dim:
        raise ShapeMismatchError(f"Need {host.dim} matrices, got {len(matrices)}")
    d = matrices[0].shape[0]
    entries = [((i, a, g), v) for i, m in enumerate(matrices) for (g, a), v in m.items()]
    return Representation(host, Tensor((host.dim, d, d), entries), name=name, verify=verify)


def coadjoint_rep(algebra: LieAlgebra) -> Representation:
    """e_i·e^j = -Σ_s c_{is}^j e^s"""
    n = algebra.dim
    chi = Tensor((n, n, n), (((i, j, s), -v) for (i, s, j), v in algebra.c.items()))
    return Representation(algebra, chi, name=f"coadjoint({algebra.name})")


def adjoint_rep(algebra: LieAlgebra) -> Representation:
    return Representation(algebra, algebra.c, name=f"adjoint({algebra.name})")


def trivial_rep(algebra: LieAlgebra, dim: int) -> Representation:
    return Representation(algebra, Tensor.zeros((algebra.dim, dim, dim)), name="trivial")


def fundamental_sl2(algebra: Optional[LieAlgebra] = None) -> Representation:
    """sl2 on span(v0, v1): h v0 = v0, h v1 = -v1, e v1 = v0, f v0 = v1"""
    algebra = algebra or sl2()
    chi = Tensor((3, 2, 2), [((0, 0, 0), 1), ((0, 1, 1), -1), ((1, 1, 0), 1), ((2, 0, 1), 1)])
    return Representation(algebra, chi, name="fundamental(sl2)")


def dual_of(rep: Representation) -> Representation:
    """χ^d(X) = -χ(X)ᵀ"""
    return from_matrices(
        rep.host,
        [transpose(rep.matrix(i)).scale(-1) for i in range(rep.host.dim)],
        name=f"dual({rep.name})",
    )


def direct_sum(first: Representation, second: Representation) -> Representation:
    if first.host is not second.host and first.host.c != second.host.c:
        raise ShapeMismatchError("Direct sum needs representations of the same algebra")
    shift = first.dim
    d = first.dim + second.dim
    entries = list(first.chi.items()) + [
        ((i, a + shift, g + shift), v) for (i, a, g), v in second.chi.items()
    ]
    return Representation(first.host, Tensor((first.host.dim, d, d), entries), name=f"{first.name}+{second.name}")
