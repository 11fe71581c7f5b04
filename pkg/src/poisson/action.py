"""
Infinitesimal Hamiltonian action of G on (G*, P)

Each basis element X = e_k acts on C_{G*} by the derivation X^∧ with
X^∧(u_s) = -Σ_j c_{ks}^j u_j (minus b_{ks} in the affine case). The action is
Hamiltonian-compatible when

    X^∧{H, F} - {X^∧H, F} - {H, X^∧F} = ⟨[H~, F~], X⟩

for coordinate Hamiltonians, where H~_s = e_s^∧(H) and the bracket on the
right is the one carried by G*: zero for the linear and affine brackets,
induced by r for the quadratic bracket.
"""
from collections import defaultdict
from typing import Dict, List, Optional, Union

import sympy

from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.tensor import PolyTensor, Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, YBReport
from src.lie.algebra import LieAlgebra
from src.lie.o_operator import AlgebraOnModule, induced_bracket, r_to_operator
from src.poisson.ring import PoissonStructure
from src.poisson.structures import affine_poisson, derivation, linear_action, linear_poisson, quadratic_poisson
from src.utils.rationals import to_sympy

MODES = ("linear", "affine", "quadratic")


def _bracket_tensor(dual_bracket: Union[None, Tensor, AlgebraOnModule], dim: int) -> Optional[Tensor]:
    if dual_bracket is None:
        return None
    tensor = dual_bracket.bracket if isinstance(dual_bracket, AlgebraOnModule) else dual_bracket
    if tensor.shape != (dim, dim, dim):
        raise ShapeMismatchError(f"Bracket on G* must have shape {(dim, dim, dim)}, got {tensor.shape}")
    return tensor


def infinitesimal_action_defect(
    algebra: LieAlgebra,
    poisson: PoissonStructure,
    dual_bracket: Union[None, Tensor, AlgebraOnModule],
    mode: str,
    b: Optional[Tensor] = None,
) -> PolyTensor:
    """
    Defect of the action criterion at (k, i, j) for X = e_k, H = u_i, F = u_j

    Raises:
        PreconditionError: On an unknown mode, a nonzero G* bracket in linear or
            affine mode, a missing G* bracket in quadratic mode, or a b outside
            affine mode
    """
    if mode not in MODES:
        raise PreconditionError(f"Unknown action mode: {mode}")
    n = algebra.dim
    if poisson.ring.dim != n:
        raise ShapeMismatchError(f"Bracket has {poisson.ring.dim} coordinates, algebra has dimension {n}")
    bracket = _bracket_tensor(dual_bracket, n)
    if mode in ("linear", "affine") and bracket is not None and not bracket.is_zero():
        raise PreconditionError(f"{mode} mode pairs with the abelian bracket on G*")
    if mode == "quadratic" and bracket is None:
        raise PreconditionError("quadratic mode needs the bracket induced on G*")
    if b is not None and mode != "affine":
        raise PreconditionError("A cocycle b only enters in affine mode")

    actions = [linear_action(algebra, poisson.ring, k, b) for k in range(n)]
    return action_criterion_defect(poisson, actions, bracket)


def action_criterion_defect(
    poisson: PoissonStructure, actions: List[List[sympy.Expr]], bracket: Optional[Tensor]
) -> PolyTensor:
    """
    Defect at (k, a, b) for the derivations actions[k] and coordinates w_a, w_b

    The hooks are H~_s = e_s^∧(w_a), read off the same derivations.
    """
    ring = poisson.ring
    coords = ring.symbols
    n, m = len(actions), ring.dim
    # tilde[a][s] = e_s^∧(w_a)
    tilde = [[actions[s][a] for s in range(n)] for a in range(m)]
    by_target: Dict[int, list] = defaultdict(list)
    if bracket is not None:
        for (s, t, g), v in bracket.items():
            by_target[g].append((s, t, to_sympy(v)))

    entries = []
    for k in range(n):
        images = actions[k]
        for a in range(m):
            for c in range(m):
                value = derivation(ring, images, poisson.pi[a][c])
                value -= poisson.bracket(images[a], coords[c])
                value -= poisson.bracket(coords[a], images[c])
                for s, t, v in by_target[k]:
                    value -= tilde[a][s] * tilde[c][t] * v
                entries.append(((k, a, c), value))
    return PolyTensor((n, m, m), entries)


def check_infinitesimal_action(
    algebra: LieAlgebra,
    mode: str,
    r: Optional[Tensor] = None,
    b: Optional[Tensor] = None,
    limit: int = DEFAULT_WITNESS_LIMIT,
) -> YBReport:
    """Build the bracket for `mode` and evaluate the action criterion on it"""
    if mode == "quadratic":
        if r is None:
            raise PreconditionError("quadratic mode needs r")
        poisson = quadratic_poisson(algebra, r)
        operator = r_to_operator(algebra, r)
        dual = induced_bracket(algebra, operator.source, operator)
        defect = infinitesimal_action_defect(algebra, poisson, dual, mode)
    elif mode == "affine":
        b = b if b is not None else Tensor.zeros((algebra.dim, algebra.dim))
        defect = infinitesimal_action_defect(algebra, affine_poisson(algebra, b), None, mode, b=b)
    else:
        defect = infinitesimal_action_defect(algebra, linear_poisson(algebra), None, mode)
    return YBReport.from_defect("infinitesimal-action", defect, limit, mode=mode)
