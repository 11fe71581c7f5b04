"""
Operators on V⊗V and their embeddings into V⊗V⊗V

Basis vector e_i⊗e_j of V⊗V has position i*d + j, and e_i⊗e_j⊗e_k of
V⊗V⊗V has position i*d² + j*d + k. An operator A on V⊗V is stored as a
d²×d² matrix with A[(c,d),(i,j)] = S^{cd}_{ij}.
"""
from math import isqrt
from typing import Dict

from src.core.errors import InternalConsistencyError, ShapeMismatchError
from src.core.linalg import identity, kron, matmul_chain
from src.core.tensor import Tensor

SLOTS = ("12", "13", "23")


def pair_dim(a: Tensor) -> int:
    """dim V for an operator on V⊗V; raises if the size is not a perfect square"""
    if a.rank != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"Operator on V⊗V must be square, got shape {a.shape}")
    n = a.shape[0]
    d = isqrt(n)
    if d * d != n:
        raise ShapeMismatchError(f"Operator dimension {n} is not a perfect square")
    return d


def permutation(d: int) -> Tensor:
    """P(e_i⊗e_j) = e_j⊗e_i"""
    return Tensor((d * d, d * d), (((j * d + i, i * d + j), 1) for i in range(d) for j in range(d)))


def mirror_operator(d: int) -> Tensor:
    """M(e_i⊗e_j⊗e_k) = e_k⊗e_j⊗e_i"""
    n = d ** 3
    return Tensor(
        (n, n),
        (
            ((k * d * d + j * d + i, i * d * d + j * d + k), 1)
            for i in range(d) for j in range(d) for k in range(d)
        ),
    )


def _embed_13_coordinates(a: Tensor, d: int) -> Tensor:
    dd = d * d
    entries = []
    for (row, col), value in a.items():
        x, y = divmod(row, d)
        i, k = divmod(col, d)
        for j in range(d):
            entries.append(((x * dd + j * d + y, i * dd + j * d + k), value))
    return Tensor((d ** 3, d ** 3), entries)


def embed_pair(a: Tensor, slot: str, d: int) -> Tensor:
    """
    Embed an operator on V⊗V into V⊗V⊗V acting on the given pair of slots

    A^{13} is built from coordinates and checked against P^{23} A^{12} P^{23}.

    Raises:
        ShapeMismatchError: If A is not d²×d² or the slot is unknown
        InternalConsistencyError: If the two constructions of A^{13} differ
    """
    if a.shape != (d * d, d * d):
        raise ShapeMismatchError(f"Expected a {d * d}x{d * d} operator, got shape {a.shape}")
    if slot == "12":
        return kron(a, identity(d))
    if slot == "23":
        return kron(identity(d), a)
    if slot == "13":
        by_coordinates = _embed_13_coordinates(a, d)
        p23 = kron(identity(d), permutation(d))
        by_conjugation = matmul_chain(p23, kron(a, identity(d)), p23)
        if by_coordinates != by_conjugation:
            raise InternalConsistencyError("A^13 from coordinates differs from P^23 A^12 P^23")
        return by_coordinates
    raise ShapeMismatchError(f"Unknown slot {slot!r}, expected one of {SLOTS}")


def embed_all(a: Tensor, d: int) -> Dict[str, Tensor]:
    return {slot: embed_pair(a, slot, d) for slot in SLOTS}


def mirror_factorizations(d: int) -> Dict[str, Tensor]:
    """Both braid-word products of permutations; each equals the mirror operator"""
    p12 = embed_pair(permutation(d), "12", d)
    p23 = embed_pair(permutation(d), "23", d)
    return {
        "P23 P12 P23": matmul_chain(p23, p12, p23),
        "P12 P23 P12": matmul_chain(p12, p23, p12),
    }


def check_embedding_identities(a: Tensor, d: int) -> Dict[str, Tensor]:
    """Defects of the four slot-exchange identities relating A^{12}, A^{13}, A^{23}"""
    p = permutation(d)
    p12 = embed_pair(p, "12", d)
    p23 = embed_pair(p, "23", d)
    a12, a13, a23 = (embed_pair(a, slot, d) for slot in SLOTS)
    return {
        "A12 P23 = P23 A13": matmul_chain(a12, p23) - matmul_chain(p23, a13),
        "A13 P23 = P23 A12": matmul_chain(a13, p23) - matmul_chain(p23, a12),
        "A23 P12 = P12 A13": matmul_chain(a23, p12) - matmul_chain(p12, a13),
        "A13 P12 = P12 A23": matmul_chain(a13, p12) - matmul_chain(p12, a23),
    }


def braid_transport_defect(u: Tensor, v: Tensor, w: Tensor, d: int) -> Tensor:
    """U^{23} V^{12} W^{23} - W^{12} V^{23} U^{12}; vanishes when two of U, V, W equal P"""
    left = matmul_chain(embed_pair(u, "23", d), embed_pair(v, "12", d), embed_pair(w, "23", d))
    right = matmul_chain(embed_pair(w, "12", d), embed_pair(v, "23", d), embed_pair(u, "12", d))
    return left - right
