"""
Jet variables and the total derivative for one derivation ∂

A differential variable v is represented by the sympy symbols v_0, v_1, ...
with v_n = ∂^n v. Any other symbol is treated as a constant. Exponents may be
rational, so u_0**(1/2) is a legal element.
"""
import re
from random import Random
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy

from src.core.errors import JetOrderExceeded

DEFAULT_MAX_ORDER = 12
JET_PATTERN = re.compile(r"^(.+)_(\d+)$")


class JetSpace:
    """Jet symbols with a ceiling on the order any computation may reach"""

    def __init__(self, max_order: int = DEFAULT_MAX_ORDER):
        if max_order < 1:
            raise ValueError(f"max_order must be positive, got {max_order}")
        self.max_order = max_order

    def jet(self, name: str, n: int = 0) -> sympy.Symbol:
        if n > self.max_order:
            raise JetOrderExceeded(n, self.max_order)
        return sympy.Symbol(f"{name}_{n}")

    def jets(self, name: str, upto: int) -> List[sympy.Symbol]:
        return [self.jet(name, n) for n in range(upto + 1)]

    def fields(self, names: Iterable[str]) -> List[sympy.Symbol]:
        return [self.jet(name) for name in names]

    @staticmethod
    def parse(symbol: sympy.Symbol) -> Optional[Tuple[str, int]]:
        match = JET_PATTERN.match(symbol.name)
        if not match:
            return None
        return match.group(1), int(match.group(2))

    def jet_symbols(self, expr: sympy.Expr) -> List[Tuple[sympy.Symbol, str, int]]:
        """Jet symbols of expr as (symbol, name, order), sorted by name then order"""
        found = []
        for s in sympy.sympify(expr).free_symbols:
            parsed = self.parse(s)
            if parsed:
                found.append((s, parsed[0], parsed[1]))
        return sorted(found, key=lambda item: (item[1], item[2]))

    def names_in(self, expr: sympy.Expr) -> List[str]:
        return sorted({name for _, name, _ in self.jet_symbols(expr)})

    def order(self, expr: sympy.Expr, name: Optional[str] = None) -> int:
        """Highest jet order present (of `name` if given); -1 when none"""
        orders = [n for _, v, n in self.jet_symbols(expr) if name is None or v == name]
        return max(orders, default=-1)

    def total_derivative(self, expr: sympy.Expr, times: int = 1) -> sympy.Expr:
        """∂ applied `times` times; ∂(v_n) = v_{n+1}"""
        result = sympy.expand(sympy.sympify(expr))
        for _ in range(times):
            total = sympy.Integer(0)
            for symbol, name, n in self.jet_symbols(result):
                total += sympy.diff(result, symbol) * self.jet(name, n + 1)
            result = sympy.expand(total)
        return result

    def partial(self, expr: sympy.Expr, name: str, n: int) -> sympy.Expr:
        return sympy.expand(sympy.diff(expr, self.jet(name, n)))

    def variational_derivative(self, expr: sympy.Expr, name: str) -> sympy.Expr:
        """Euler operator δ/δv = Σ_n (-∂)^n ∂/∂v_n"""
        expr = sympy.expand(sympy.sympify(expr))
        total = sympy.Integer(0)
        for n in range(self.order(expr, name) + 1):
            term = self.partial(expr, name, n)
            if term != 0:
                total += (-1) ** n * self.total_derivative(term, n)
        return sympy.expand(total)

    def gradient(self, expr: sympy.Expr, names: Sequence[str]) -> List[sympy.Expr]:
        return [self.variational_derivative(expr, name) for name in names]

    def constant_term(self, expr: sympy.Expr) -> sympy.Expr:
        """The part of expr free of jet symbols"""
        expr = sympy.expand(sympy.sympify(expr))
        symbols = [s for s, _, _ in self.jet_symbols(expr)]
        if not symbols:
            return expr
        return expr.as_independent(*symbols, as_Add=True)[0]

    def substitute(self, expr: sympy.Expr, images: Mapping[str, sympy.Expr]) -> sympy.Expr:
        """Differential ring map: v_n ↦ ∂^n(images[v]) for every mapped v"""
        expr = sympy.sympify(expr)
        mapping: Dict[sympy.Symbol, sympy.Expr] = {}
        for symbol, name, n in self.jet_symbols(expr):
            if name in images:
                mapping[symbol] = self.total_derivative(images[name], n)
        return sympy.expand(expr.xreplace(mapping))

    def __repr__(self) -> str:
        return f"JetSpace(max_order={self.max_order})"


def im_partial_test(space: JetSpace, expr: sympy.Expr, names: Optional[Sequence[str]] = None) -> bool:
    """
    True exactly when expr ∈ Im ∂: every variational derivative vanishes and
    the constant term is zero

    With `names`, only those variables are tested; this is complete when expr
    is linear in them and has no part free of them.
    """
    expr = sympy.expand(sympy.sympify(expr))
    if expr == 0:
        return True
    if space.constant_term(expr) != 0:
        return False
    if names is not None:
        rest = expr.xreplace({s: 0 for s, v, _ in space.jet_symbols(expr) if v in names})
        if sympy.expand(rest) != 0:
            return im_partial_test(space, expr)
    for name in names if names is not None else space.names_in(expr):
        if space.variational_derivative(expr, name) != 0:
            return False
    return True


def random_jet_polynomial(
    space: JetSpace, names: Sequence[str], rng: Random, max_order: int = 3, terms: int = 4
) -> sympy.Expr:
    """Sum of `terms` products of up to three jets with coefficients in {-2..2}"""
    total = sympy.Integer(0)
    for _ in range(terms):
        monomial = sympy.Integer(rng.randint(-2, 2))
        for _ in range(rng.randint(0, 3)):
            monomial *= space.jet(rng.choice(list(names)), rng.randint(0, max_order))
        total += monomial
    return sympy.expand(total)
