"""
Linear, quadratic, affine and constant Poisson brackets on G*
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional

import sympy

from src.core.errors import InternalConsistencyError, PreconditionError, ShapeMismatchError, VerificationFailure
from src.core.linalg import inverse, is_invertible, is_skew
from src.core.tensor import PolyTensor, Tensor
from src.lie.algebra import LieAlgebra
from src.lie.o_operator import r_to_operator, require_o_operator
from src.poisson.ring import PoissonStructure, PolyRing
from src.utils.rationals import to_sympy


def _ring_for(algebra: LieAlgebra, ring: Optional[PolyRing]) -> PolyRing:
    ring = ring or PolyRing.dual_coordinates(algebra.dim)
    if ring.dim != algebra.dim:
        raise ShapeMismatchError(f"Ring has {ring.dim} coordinates, algebra has dimension {algebra.dim}")
    return ring


def coadjoint_on_coordinates(algebra: LieAlgebra, ring: PolyRing, i: int) -> List[sympy.Expr]:
    """(e_i·u)_s = -Σ_j c_{is}^j u_j"""
    out = [sympy.Integer(0)] * algebra.dim
    for (a, s, j), v in algebra.c.items():
        if a == i:
            out[s] -= to_sympy(v) * ring.coordinate(j)
    return out


def linear_poisson(algebra: LieAlgebra, ring: Optional[PolyRing] = None) -> PoissonStructure:
    """π_ij = Σ_k c_{ij}^k u_k"""
    ring = _ring_for(algebra, ring)
    n = algebra.dim
    pi = [[sympy.Integer(0)] * n for _ in range(n)]
    for (i, j, k), v in algebra.c.items():
        pi[i][j] += to_sympy(v) * ring.coordinate(k)
    return PoissonStructure(ring, pi, name="linear")


def quadratic_entries(algebra: LieAlgebra, r: Tensor, ring: PolyRing) -> List[List[sympy.Expr]]:
    """π_ij = Σ r^{st} c_{is}^κ c_{jt}^ℓ u_κ u_ℓ"""
    n = algebra.dim
    by_first: Dict[int, List] = defaultdict(list)
    for (i, s, k), v in algebra.c.items():
        by_first[i].append((s, k, v))
    pi = [[sympy.Integer(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            terms: Dict = defaultdict(Fraction)
            for s, k, v in by_first[i]:
                for t, l, w in by_first[j]:
                    coeff = r[s, t]
                    if coeff:
                        terms[(k, l)] += coeff * v * w
            pi[i][j] = sympy.expand(
                sum((to_sympy(v) * ring.coordinate(k) * ring.coordinate(l) for (k, l), v in terms.items()), sympy.Integer(0))
            )
    return pi


def quadratic_by_pairing(algebra: LieAlgebra, r: Tensor, ring: PolyRing) -> List[List[sympy.Expr]]:
    """π_ij = ⟨e_i·u, O(e_j·u)⟩ with O(w)_a = Σ_b r^{ab} w_b"""
    n = algebra.dim
    moved = [coadjoint_on_coordinates(algebra, ring, i) for i in range(n)]
    pi = []
    for i in range(n):
        row = []
        for j in range(n):
            total = sympy.Integer(0)
            for (a, b), v in r.items():
                total += moved[i][a] * to_sympy(v) * moved[j][b]
            row.append(sympy.expand(total))
        pi.append(row)
    return pi


def quadratic_poisson(algebra: LieAlgebra, r: Tensor, ring: Optional[PolyRing] = None) -> PoissonStructure:
    """
    Quadratic bracket of a verified skew r, cross-checked against the pairing form

    Raises:
        PreconditionError: If r is not skew
        VerificationFailure: If r fails the O-equation
    """
    ring = _ring_for(algebra, ring)
    if not is_skew(r):
        raise PreconditionError("Quadratic bracket needs a skew r")
    require_o_operator(r_to_operator(algebra, r))
    pi = quadratic_entries(algebra, r, ring)
    if pi != quadratic_by_pairing(algebra, r, ring):
        raise InternalConsistencyError("Quadratic bracket coordinates disagree with the pairing formula")
    return PoissonStructure(ring, pi, name="quadratic")


def affine_cocycle_defect(algebra: LieAlgebra, b: Tensor) -> Tensor:
    """Σ_k c_{ij}^k b_{kl} + c.p. in (i, j, l)"""
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (i, j, k), v in algebra.c.items():
        for l in range(n):
            w = b[k, l]
            if w:
                entries[(i, j, l)] += v * w
                entries[(l, i, j)] += v * w
                entries[(j, l, i)] += v * w
    return Tensor((n, n, n), entries)


def affine_poisson(algebra: LieAlgebra, b: Tensor, ring: Optional[PolyRing] = None) -> PoissonStructure:
    """
    π_ij = Σ_k c_{ij}^k u_k + b_ij

    Raises:
        PreconditionError: If b is not skew or not a 2-cocycle
    """
    n = algebra.dim
    if b.shape != (n, n):
        raise ShapeMismatchError(f"b must be {n}x{n}, got {b.shape}")
    if not is_skew(b):
        raise PreconditionError("b must be skew")
    if not affine_cocycle_defect(algebra, b).is_zero():
        raise PreconditionError("b is not a 2-cocycle on the algebra")
    linear = linear_poisson(algebra, ring)
    pi = [[linear.pi[i][j] + to_sympy(b[i, j]) for j in range(n)] for i in range(n)]
    return PoissonStructure(linear.ring, pi, name="affine")


def constant_poisson(algebra: LieAlgebra, r: Tensor, eps=1, ring: Optional[PolyRing] = None) -> PoissonStructure:
    """
    b_ij = ε (O⁻¹)[j, i], the constant bracket available when O is invertible

    Raises:
        PreconditionError: If r is degenerate
    """
    ring = _ring_for(algebra, ring)
    if not is_invertible(r):
        raise PreconditionError("Constant bracket needs an invertible O")
    inv = inverse(r)
    eps = Fraction(eps)
    n = algebra.dim
    pi = [[to_sympy(eps * inv[j, i]) for j in range(n)] for i in range(n)]
    return PoissonStructure(ring, pi, name="constant")


def coadjoint_invariant_defect(algebra: LieAlgebra, h: sympy.Expr, ring: Optional[PolyRing] = None) -> PolyTensor:
    """(∇H)·u under the coadjoint action; zero for coadjoint invariants"""
    ring = _ring_for(algebra, ring)
    grad = ring.gradient(h)
    n = algebra.dim
    out = [sympy.Integer(0)] * n
    for (i, s, j), v in algebra.c.items():
        if grad[i] != 0:
            out[s] -= grad[i] * to_sympy(v) * ring.coordinate(j)
    return PolyTensor((n,), (((s,), out[s]) for s in range(n)))


def linear_action(algebra: LieAlgebra, ring: PolyRing, i: int, b: Optional[Tensor] = None) -> List[sympy.Expr]:
    """Images X^∧(u_s) for X = e_i: -Σ_j c_{is}^j u_j - b_{is}"""
    images = coadjoint_on_coordinates(algebra, ring, i)
    if b is not None:
        images = [sympy.expand(v - to_sympy(b[i, s])) for s, v in enumerate(images)]
    return images


def derivation(ring: PolyRing, images: List[sympy.Expr], f: sympy.Expr) -> sympy.Expr:
    """Apply the derivation sending x_s to images[s]"""
    return sympy.expand(sum((g * im for g, im in zip(ring.gradient(f), images) if g != 0), sympy.Integer(0)))


def variational_commutator_defect(algebra: LieAlgebra, h: sympy.Expr, x: List, ring: Optional[PolyRing] = None) -> PolyTensor:
    """∇(X^∧ H) - [∇H, X] - X^∧(∇H) for X = Σ x_i e_i"""
    ring = _ring_for(algebra, ring)
    n = algebra.dim
    images = [sympy.Integer(0)] * n
    for i, xi in enumerate(x):
        if xi:
            for s, v in enumerate(linear_action(algebra, ring, i)):
                images[s] += to_sympy(Fraction(xi)) * v
    grad = ring.gradient(h)
    left = ring.gradient(derivation(ring, images, h))
    bracket = [sympy.Integer(0)] * n
    for (i, j, k), v in algebra.c.items():
        if grad[i] != 0 and x[j]:
            bracket[k] += grad[i] * to_sympy(Fraction(x[j])) * to_sympy(v)
    moved = [derivation(ring, images, g) for g in grad]
    return PolyTensor((n,), (((k,), left[k] - bracket[k] - moved[k]) for k in range(n)))


def killing_form(algebra: LieAlgebra) -> Tensor:
    """K_ij = tr(ad e_i ad e_j) = Σ c_{ia}^b c_{jb}^a"""
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (i, a, b), v in algebra.c.items():
        for (j, bb, aa), w in algebra.c.items():
            if bb == b and aa == a:
                entries[(i, j)] += v * w
    return Tensor((n, n), entries)


def quadratic_casimir(algebra: LieAlgebra, ring: Optional[PolyRing] = None) -> sympy.Expr:
    """
    Σ (K⁻¹)^{ij} u_i u_j, a coadjoint invariant of a semisimple algebra

    Raises:
        VerificationFailure: If the Killing form is degenerate
    """
    ring = _ring_for(algebra, ring)
    k = killing_form(algebra)
    if not is_invertible(k):
        raise VerificationFailure(f"Killing form of {algebra.name} is degenerate")
    inv = inverse(k)
    return sympy.expand(
        sum((to_sympy(v) * ring.coordinate(i) * ring.coordinate(j) for (i, j), v in inv.items()), sympy.Integer(0))
    )


def coboundary(algebra: LieAlgebra, xi) -> Tensor:
    """b_ij = ⟨ξ, [e_i, e_j]⟩, a skew 2-cocycle for every ξ in G*"""
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (i, j, k), v in algebra.c.items():
        if xi[k]:
            entries[(i, j)] += v * Fraction(xi[k])
    return Tensor((n, n), entries)
