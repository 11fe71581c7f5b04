"""
Lie algebra homomorphisms and the push-forward of O-operators along them

A homomorphism φ: G -> H is an H.dim × G.dim matrix with
φ(e_j) = Σ_i φ[i, j] f_i; its dual map H* -> G* is the transpose.
"""
from collections import defaultdict
from fractions import Fraction
from random import Random
from typing import Dict, List, NamedTuple

from src.core.errors import InternalConsistencyError, PreconditionError, ShapeMismatchError
from src.core.linalg import identity, matmul, matmul_chain, transpose
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport
from src.lie.algebra import LieAlgebra, abelian, borel_sl2, exp_nilpotent, sl2, two_dim_nonabelian
from src.lie.o_operator import (
    OOperator,
    check_o_operator,
    module_bracket,
    r_to_operator,
    require_o_operator,
)
from src.lie.representation import coadjoint_rep


def homomorphism_defect(phi: Tensor, source: LieAlgebra, target: LieAlgebra) -> Tensor:
    """φ([e_a, e_b]) - [φ e_a, φ e_b] as a tensor (a, b, k)"""
    if phi.shape != (target.dim, source.dim):
        raise ShapeMismatchError(f"φ must have shape {(target.dim, source.dim)}, got {phi.shape}")
    n = source.dim
    entries: Dict = defaultdict(Fraction)
    for (a, b, j), v in source.c.items():
        for k in range(target.dim):
            p = phi[k, j]
            if p:
                entries[(a, b, k)] += v * p
    columns = [[phi[k, a] for k in range(target.dim)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            for k, v in enumerate(target.bracket(columns[a], columns[b])):
                if v:
                    entries[(a, b, k)] -= v
    return Tensor((n, n, target.dim), entries)


def check_homomorphism(phi: Tensor, source: LieAlgebra, target: LieAlgebra, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    return YBReport.from_defect("homomorphism", homomorphism_defect(phi, source, target), limit)


def push_forward(
    phi: Tensor,
    operator: OOperator,
    target: LieAlgebra,
    limit: int = DEFAULT_WITNESS_LIMIT,
) -> VerificationReport:
    """
    O_H = φ O_G φᵀ on H*, checked against the O-equation, the intertwining
    φᵀ(φ(X)·v) = X·φᵀ(v) and the homomorphism property of φᵀ between the
    induced brackets on H* and G*

    The pushed-forward operator is stored under details["operator"].

    Raises:
        PreconditionError: If φ is not a Lie homomorphism
        VerificationFailure: If O_G is not an O-operator
    """
    source = operator.target
    if not homomorphism_defect(phi, source, target).is_zero():
        raise PreconditionError("φ is not a Lie algebra homomorphism")
    require_o_operator(operator)
    phi_t = transpose(phi)
    pushed = r_to_operator(target, matmul_chain(phi, operator.matrix, phi_t))
    report = VerificationReport(name="push-forward")
    report.add_part("o-equation", check_o_operator(pushed, limit))

    co_g, co_h = coadjoint_rep(source), coadjoint_rep(target)
    entries: Dict = defaultdict(Fraction)
    for i in range(source.dim):
        image = [phi[k, i] for k in range(target.dim)]
        left = matmul(phi_t, co_h.matrix_of(image))
        right = matmul(co_g.matrix(i), phi_t)
        for (j, k), v in (left - right).items():
            entries[(i, k, j)] += v
    report.add_part(
        "intertwining",
        YBReport.from_defect("intertwining", Tensor((source.dim, target.dim, source.dim), entries), limit),
    )

    bracket_g, bracket_h = module_bracket(operator), module_bracket(pushed)
    hom = Tensor(
        (target.dim, target.dim, source.dim),
        [((k, l, j), v * phi[g, j]) for (k, l, g), v in bracket_h.items() for j in range(source.dim)]
        + [
            ((k, l, j), -phi[k, x] * phi[l, y] * v)
            for (x, y, j), v in bracket_g.items()
            for k in range(target.dim)
            for l in range(target.dim)
        ],
    )
    report.add_part("dual-homomorphism", YBReport.from_defect("dual-homomorphism", hom, limit))
    report.details["operator"] = pushed
    if not report.parts["intertwining"].holds or not report.parts["dual-homomorphism"].holds:
        raise InternalConsistencyError("Dual map of a homomorphism failed to intertwine the O-induced structures")
    return report


class HomomorphismSample(NamedTuple):
    source: LieAlgebra
    target: LieAlgebra
    phi: Tensor
    operator: OOperator
    label: str


def _sl2_automorphism(rng: Random, algebra: LieAlgebra) -> Tensor:
    t, s = rng.randint(-2, 2), rng.randint(-2, 2)
    lam = Fraction(rng.choice([1, 2, -1, -2]), rng.choice([1, 2]))
    scaling = Tensor((3, 3), [((0, 0), 1), ((1, 1), lam), ((2, 2), 1 / lam)])
    return matmul_chain(
        exp_nilpotent(algebra.ad(1).scale(t)), exp_nilpotent(algebra.ad(2).scale(s)), scaling
    )


def random_skew(n: int, rng: Random) -> Tensor:
    """Skew n×n matrix with entries in {-2..2}"""
    entries = []
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-2, 2)
            entries += [((i, j), v), ((j, i), -v)]
    return Tensor((n, n), entries)


def fixture_operators(rng: Random) -> List[OOperator]:
    """Verified O-operators on G* of small fixture algebras"""
    g = sl2()
    lam = rng.choice([1, 2, -1])
    return [
        r_to_operator(g, Tensor((3, 3), [((0, 1), lam), ((1, 0), -lam)])),
        r_to_operator(g, Tensor((3, 3), [((0, 2), lam), ((2, 0), -lam)])),
        r_to_operator(borel_sl2(), random_skew(2, rng)),
        r_to_operator(two_dim_nonabelian(), random_skew(2, rng)),
        r_to_operator(abelian(2), random_skew(2, rng)),
    ]


def random_homomorphism(rng: Random) -> HomomorphismSample:
    """
    One random homomorphism between fixture algebras together with a verified
    O-operator on the source dual. Every sample is re-checked before use.
    """
    target_sl2 = sl2()
    kind = rng.choice(["sl2-auto", "borel-incl", "nonabelian-incl", "abelianize", "zero", "abelian-linear"])
    if kind == "sl2-auto":
        source = target_sl2
        phi = _sl2_automorphism(rng, target_sl2)
        operator = fixture_operators(rng)[rng.randint(0, 1)]
        target = target_sl2
    elif kind == "borel-incl":
        source = borel_sl2()
        lam = rng.choice([1, 2, -1, Fraction(1, 2)])
        incl = Tensor((3, 2), [((0, 0), 1), ((1, 1), lam)])
        phi = matmul(_sl2_automorphism(rng, target_sl2), incl)
        operator = r_to_operator(source, random_skew(2, rng))
        target = target_sl2
    elif kind == "nonabelian-incl":
        source = two_dim_nonabelian()
        incl = Tensor((3, 2), [((1, 0), 1), ((0, 1), Fraction(-1, 2))])
        phi = matmul(_sl2_automorphism(rng, target_sl2), incl)
        operator = r_to_operator(source, random_skew(2, rng))
        target = target_sl2
    elif kind == "abelianize":
        source = borel_sl2()
        target = abelian(2)
        phi = Tensor((2, 2), [((0, 0), rng.randint(-2, 2)), ((1, 0), rng.randint(-2, 2))])
        operator = r_to_operator(source, random_skew(2, rng))
    elif kind == "zero":
        source = target_sl2
        target = rng.choice([borel_sl2(), abelian(2), target_sl2])
        phi = Tensor.zeros((target.dim, 3))
        operator = fixture_operators(rng)[0]
    else:
        source, target = abelian(2), abelian(3)
        phi = Tensor((3, 2), (((i, j), rng.randint(-2, 2)) for i in range(3) for j in range(2)))
        operator = fixture_operators(rng)[4]
    if not homomorphism_defect(phi, source, target).is_zero():
        raise InternalConsistencyError(f"Generated map of kind {kind} is not a homomorphism")
    return HomomorphismSample(source, target, phi, operator, kind)


def identity_homomorphism(algebra: LieAlgebra) -> Tensor:
    return identity(algebra.dim)
