"""
Artin relation, quantum Yang-Baxter equation and their h-expansions
"""
from random import Random

from src.core.embedding import embed_pair, mirror_operator, pair_dim, permutation
from src.core.errors import InternalConsistencyError, PreconditionError, ShapeMismatchError
from src.core.hseries import HSeries
from src.core.linalg import commutator, identity, matmul, matmul_chain
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport


def artin_defect(s: Tensor) -> Tensor:
    """S23 S12 S23 - S12 S23 S12"""
    d = pair_dim(s)
    s12, s23 = embed_pair(s, "12", d), embed_pair(s, "23", d)
    return matmul_chain(s23, s12, s23) - matmul_chain(s12, s23, s12)


def qybe_defect(r: Tensor) -> Tensor:
    """R12 R13 R23 - R23 R13 R12"""
    d = pair_dim(r)
    r12, r13, r23 = (embed_pair(r, slot, d) for slot in ("12", "13", "23"))
    return matmul_chain(r12, r13, r23) - matmul_chain(r23, r13, r12)


def check_artin(s: Tensor, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    return YBReport.from_defect("artin", artin_defect(s), limit)


def check_qybe(r: Tensor, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    return YBReport.from_defect("qybe", qybe_defect(r), limit)


def classical_defect(r: Tensor) -> Tensor:
    """c(r) = [r12, r13] + [r12, r23] + [r13, r23] for r acting on V⊗V"""
    d = pair_dim(r)
    r12, r13, r23 = (embed_pair(r, slot, d) for slot in ("12", "13", "23"))
    return commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23)


def quasiclassical_defect(series: HSeries) -> Tensor:
    """
    h² coefficient of R12 R13 R23 - R23 R13 R12 for R = 1 + h r + h² rho

    The coefficient must equal c(r) whatever rho is; a mismatch raises.
    """
    d = pair_dim(series.coefficient(0))
    if series.coefficient(0) != identity(d * d):
        raise PreconditionError("Zeroth coefficient of R must be the identity")
    r12, r13, r23 = (series.embed(slot, d) for slot in ("12", "13", "23"))
    defect = ((r12 * r13 * r23) - (r23 * r13 * r12)).coefficient(2)
    if defect != classical_defect(series.coefficient(1)):
        raise InternalConsistencyError("h² coefficient of the QYBE defect differs from c(r)")
    return defect


def artin_quasiclassical_defect(rbar: Tensor, p: Tensor) -> Tensor:
    """
    h² part of the Artin relation for S = P + h rbar:

        rbar23 rbar12 P23 + rbar23 P12 rbar23 + P23 rbar12 rbar23
      - rbar12 rbar23 P12 - rbar12 P23 rbar12 - P12 rbar23 rbar12
    """
    if rbar.shape != p.shape:
        raise ShapeMismatchError(f"rbar and P shapes differ: {rbar.shape} vs {p.shape}")
    d = pair_dim(p)
    if p != permutation(d):
        raise PreconditionError("P must be the permutation operator of V⊗V")
    r12, r23 = embed_pair(rbar, "12", d), embed_pair(rbar, "23", d)
    p12, p23 = embed_pair(p, "12", d), embed_pair(p, "23", d)
    left = matmul_chain(r23, r12, p23) + matmul_chain(r23, p12, r23) + matmul_chain(p23, r12, r23)
    right = matmul_chain(r12, r23, p12) + matmul_chain(r12, p23, r12) + matmul_chain(p12, r23, r12)
    return left - right


def check_artin_quasiclassical(
    rbar: Tensor, p: Tensor, limit: int = DEFAULT_WITNESS_LIMIT
) -> YBReport:
    """
    Check the h² Artin equation and tie it to the classical equation for r = P rbar

    Asserted internally: the defect is the h² coefficient of the Artin defect
    of P + h rbar + h² rhobar for two different rhobar, and it equals
    M c(P rbar) with M the mirror operator.
    """
    defect = artin_quasiclassical_defect(rbar, p)
    d = pair_dim(p)
    zero = Tensor.zeros(p.shape)
    for rhobar in (zero, rbar):
        s = HSeries([p, rbar, rhobar])
        s12, s23 = s.embed("12", d), s.embed("23", d)
        expanded = ((s23 * s12 * s23) - (s12 * s23 * s12)).coefficient(2)
        if expanded != defect:
            raise InternalConsistencyError("h² Artin coefficient depends on the h² term of S")
    r = matmul(p, rbar)
    c = classical_defect(r)
    if defect != matmul(mirror_operator(d), c):
        raise InternalConsistencyError("h² Artin defect differs from M c(P rbar)")
    return YBReport.from_defect(
        "artin-quasiclassical", defect, limit, classical_holds=c.is_zero()
    )


def artin_from_qybe(r: Tensor, limit: int = DEFAULT_WITNESS_LIMIT) -> VerificationReport:
    """S = P R solves Artin exactly when R solves QYBE: Artin(S) = M QYBE(R)"""
    d = pair_dim(r)
    s = matmul(permutation(d), r)
    report = VerificationReport(name="artin-from-qybe")
    qybe = report.add_part("qybe", check_qybe(r, limit), required=False)
    artin = report.add_part("artin", check_artin(s, limit), required=False)
    if artin.defect != matmul(mirror_operator(d), qybe.defect):
        raise InternalConsistencyError("Artin defect of P R differs from M times QYBE defect of R")
    if not qybe.holds:
        report.add_violation(qybe.get_summary())
    return report


def unitarity_report(s: HSeries) -> VerificationReport:
    """
    For S = P + h S1 + ..., check S² = 1 through order h and, when it holds,
    that r = P S1 satisfies P r = -r P
    """
    d = pair_dim(s.coefficient(0))
    p = permutation(d)
    if s.coefficient(0) != p:
        raise PreconditionError("Zeroth coefficient of S must be the permutation operator")
    s1 = s.coefficient(1)
    report = VerificationReport(name="unitarity")
    square = s * s
    order_one = HSeries([square.coefficient(0) - identity(d * d), square.coefficient(1)])
    hypothesis = Tensor(
        (2,) + p.shape,
        [((0,) + i, v) for i, v in order_one.coefficient(0).items()]
        + [((1,) + i, v) for i, v in order_one.coefficient(1).items()],
    )
    report.add_part("S^2 = 1 through h", YBReport.from_defect("unitarity", hypothesis))
    r = matmul(p, s1)
    conclusion = report.add_part(
        "P r = -r P",
        YBReport.from_defect("skewness", matmul(p, r) + matmul(r, p)),
        required=False,
    )
    report.details["r"] = r.witness(DEFAULT_WITNESS_LIMIT)
    if report.is_valid and not conclusion.holds:
        raise InternalConsistencyError("Unitarity through order h did not force P r = -r P")
    return report


def unitarity_implies_skewness(s: HSeries) -> bool:
    """True when S² = 1 holds through order h and r = P S1 is skew"""
    report = unitarity_report(s)
    return report.is_valid and report.parts["P r = -r P"].holds


def random_operator(d: int, rng: Random) -> Tensor:
    """Operator on V⊗V with entries drawn from {-2..2}"""
    n = d * d
    return Tensor((n, n), (((i, j), rng.randint(-2, 2)) for i in range(n) for j in range(n)))


def random_skew_operator(d: int, rng: Random) -> Tensor:
    """r with P r = -r P, built as A - P A P"""
    a = random_operator(d, rng)
    p = permutation(d)
    return a - matmul_chain(p, a, p)
