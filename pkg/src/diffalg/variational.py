"""
Variational calculus on jet polynomials and differential defects
"""
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from src.diffalg.diffop import DiffOp
from src.diffalg.jets import JetSpace, im_partial_test

MODES = ("exact", "modulo-image")


def variational_derivative(space: JetSpace, expr: sympy.Expr, name: str) -> sympy.Expr:
    return space.variational_derivative(expr, name)


def frechet_derivative(space: JetSpace, exprs: Sequence[sympy.Expr], names: Sequence[str]) -> DiffOp:
    """D(F)_{ij} = Σ_n ∂F_i/∂v_j^(n) ∂^n"""
    entries: Dict[Tuple[int, int], Dict[int, sympy.Expr]] = {}
    for i, expr in enumerate(exprs):
        for symbol, name, n in space.jet_symbols(expr):
            if name in names:
                entries.setdefault((i, list(names).index(name)), {})[n] = sympy.diff(expr, symbol)
    return DiffOp(space, (len(exprs), len(names)), entries)


def pairing(left: Sequence[Any], right: Sequence[Any]) -> sympy.Expr:
    """⟨a, b⟩ = Σ a_i b_i as a density"""
    return sympy.expand(sum((sympy.sympify(a) * sympy.sympify(b) for a, b in zip(left, right)), sympy.Integer(0)))


def formal_vector(space: JetSpace, prefix: str, size: int) -> List[sympy.Symbol]:
    return [space.jet(f"{prefix}{k}") for k in range(size)]


class DiffDefect:
    """
    Labelled jet-polynomial defects

    In "exact" mode an entry vanishes when it expands to zero; in
    "modulo-image" mode when it lies in Im ∂.
    """

    def __init__(
        self,
        space: JetSpace,
        entries: Sequence[Tuple[str, sympy.Expr]],
        mode: str = "exact",
        test_names: Optional[Sequence[str]] = None,
    ):
        if mode not in MODES:
            raise ValueError(f"Unknown defect mode: {mode}")
        self.space = space
        self.mode = mode
        self.test_names = test_names
        self.entries = [(label, sympy.expand(sympy.sympify(e))) for label, e in entries]
        self._failing = [(label, e) for label, e in self.entries if not self._vanishes(e)]

    def _vanishes(self, expr: sympy.Expr) -> bool:
        if self.mode == "exact":
            return expr == 0
        return im_partial_test(self.space, expr, self.test_names)

    def is_zero(self) -> bool:
        return not self._failing

    @property
    def nonzero_count(self) -> int:
        return len(self._failing)

    def witness(self, limit: int = 10) -> List[Dict[str, Any]]:
        return [{"indices": [label], "value": sympy.sstr(e)} for label, e in self._failing[:limit]]

    def __repr__(self) -> str:
        return f"DiffDefect({self.mode}, failing={[label for label, _ in self._failing]})"


def self_adjoint_frechet_defect(space: JetSpace, density: sympy.Expr, names: Sequence[str]) -> DiffOp:
    """D(δH)† - D(δH); zero for every density H"""
    grad = space.gradient(density, names)
    frechet = frechet_derivative(space, grad, names)
    return frechet.adjoint() - frechet


def skew_pairing_defect(operator: DiffOp, left: Sequence[Any], right: Sequence[Any]) -> sympy.Expr:
    """⟨a, O b⟩ + ⟨b, O a⟩, which lies in Im ∂ for all a, b exactly when O† = -O"""
    return sympy.expand(pairing(left, operator.apply(right)) + pairing(right, operator.apply(left)))


def adjoint_pairing_defect(operator: DiffOp, left: Sequence[Any], right: Sequence[Any]) -> sympy.Expr:
    """⟨a, O b⟩ - ⟨O† a, b⟩ ∈ Im ∂"""
    return sympy.expand(pairing(left, operator.apply(right)) - pairing(operator.adjoint().apply(left), right))
