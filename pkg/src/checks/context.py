"""
Objects a run works on, built once from the manifest and the settings
"""
from fractions import Fraction
from random import Random
from typing import Callable, Dict, Optional

import sympy

from src.core.errors import ManifestError, OMatrixError
from src.core.linalg import matrix
from src.core.tensor import Tensor
from src.diffalg.jets import JetSpace
from src.doubles.semidirect import BilinearProduct, matrix_product, scalar_product
from src.lie.algebra import LieAlgebra, abelian, borel_sl2, gl_n, sl2, two_dim_nonabelian
from src.lie.o_operator import OOperator, r_to_operator
from src.lie.representation import Representation, adjoint_rep, coadjoint_rep, from_matrices, fundamental_sl2
from src.state.manifest import Manifest
from src.utils.rationals import parse_rational
from src.utils.settings import Settings

LIE_FACTORIES: Dict[str, Callable[[], LieAlgebra]] = {
    "sl2": sl2,
    "gl2": lambda: gl_n(2),
    "borel-sl2": borel_sl2,
    "two-dim-nonabelian": two_dim_nonabelian,
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
}
PRODUCT_FACTORIES: Dict[str, Callable[[], BilinearProduct]] = {
    "gl2-matrix": lambda: matrix_product(2),
    "scalar": scalar_product,
}


def _build(path: str, build: Callable):
    """Run `build`, reporting any refusal against the manifest path"""
    try:
        return build()
    except ManifestError:
        raise
    except (OMatrixError, ValueError, IndexError) as exc:
        raise ManifestError(str(exc), [path]) from exc


class RunContext:
    """Manifest objects resolved into algebra values; sections are None when absent"""

    def __init__(self, manifest: Manifest, settings: Settings):
        self.manifest = manifest
        self.settings = settings
        self.limit = settings.witness_limit
        self.space = JetSpace(settings.max_jet_order)
        self.algebra: Optional[LieAlgebra] = None
        self.rep: Optional[Representation] = None
        self.r: Optional[Tensor] = None
        self.operator: Optional[OOperator] = None
        self.operator_module: Optional[str] = None
        self.r_operator: Optional[OOperator] = None
        self.product: Optional[BilinearProduct] = None
        self.yb_r: Optional[Tensor] = None
        self.yb_rho: Optional[Tensor] = None
        self.dim_v = 2
        self.mu: Optional[Fraction] = None
        self.eps: Optional[Fraction] = None
        self.casimir: Optional[sympy.Expr] = None
        self.lemma_density: Optional[sympy.Expr] = None
        self._resolve()

    def rng(self, check_name: str) -> Random:
        """Deterministic stream per check: seeded by "<seed>:<name>\""""
        return Random(f"{self.settings.seed}:{check_name}")

    def provides(self, requirement: str) -> bool:
        """Whether the manifest defines what a check needs"""
        value = {
            "lie_algebra": self.algebra,
            "representation": self.rep,
            "operator": self.operator,
            "r": self.dual_r,
            "product": self.product,
            "diff_params": self.mu,
        }[requirement]
        return value is not None

    @property
    def dual_r(self) -> Optional[Tensor]:
        """r as an operator on G*: the r_matrix section, else a coadjoint o_operator"""
        return self.r_operator.matrix if self.r_operator is not None else None

    def _resolve(self) -> None:
        m = self.manifest
        if m.lie_algebra is not None:
            self.algebra = _build("lie_algebra", self._algebra)
        if m.representation is not None:
            if self.algebra is None:
                raise ManifestError("A representation needs a lie_algebra section", ["representation"])
            self.rep = _build("representation", self._representation)
        if m.r_matrix is not None:
            if self.algebra is None:
                raise ManifestError("An r-matrix needs a lie_algebra section", ["r_matrix"])
            self.r = _build("r_matrix", m.r_matrix.to_tensor)
            if self.r.shape != (self.algebra.dim,) * 2:
                raise ManifestError(f"r_matrix must be {self.algebra.dim}x{self.algebra.dim}", ["r_matrix"])
        if self.r is not None:
            self.r_operator = r_to_operator(self.algebra, self.r)
        if m.o_operator is not None:
            self.operator = _build("o_operator", self._operator)
            self.operator_module = m.o_operator.module
            if self.operator_module == "coadjoint" and self.r_operator is None:
                self.r_operator = self.operator
        elif self.r_operator is not None:
            self.operator = self.r_operator
            self.operator_module = "coadjoint"
        if m.product is not None:
            section = m.product
            if section.preset:
                self.product = PRODUCT_FACTORIES[section.preset]()
            else:
                self.product = _build(
                    "product", lambda: BilinearProduct(Tensor((section.dim,) * 3, _entries(section.entries)))
                )
        if m.rho is not None:
            self.dim_v = m.rho.dim_v
            size = (self.dim_v ** 2,) * 2
            for attr, sub in (("yb_r", m.rho.r), ("yb_rho", m.rho.rho)):
                if sub is not None:
                    value = _build(f"rho.{attr[3:]}", sub.to_tensor)
                    if value.shape != size:
                        raise ManifestError(f"Operators on V⊗V must be {size[0]}x{size[1]}", [f"rho.{attr[3:]}"])
                    setattr(self, attr, value)
        if m.diff_params is not None:
            params = m.diff_params
            self.mu, self.eps = params.mu_value, params.eps_value
            self.casimir = _build("diff_params.casimir", lambda: self._density(params.casimir))
            self.lemma_density = _build("diff_params.lemma_density", lambda: self._density(params.lemma_density))

    def _algebra(self) -> LieAlgebra:
        section = self.manifest.lie_algebra
        if section.preset:
            return LIE_FACTORIES[section.preset]()
        return LieAlgebra(section.to_tensor(), section.basis, name=section.name or "manifest")

    def _representation(self) -> Representation:
        section = self.manifest.representation
        if section.preset == "fundamental-sl2":
            if self.algebra.c != sl2().c:
                raise ManifestError("fundamental-sl2 needs the sl2 algebra", ["representation.preset"])
            return fundamental_sl2(self.algebra)
        if section.preset == "adjoint":
            return adjoint_rep(self.algebra)
        if section.preset == "coadjoint":
            return coadjoint_rep(self.algebra)
        matrices = [matrix([[parse_rational(v) for v in row] for row in m]) for m in section.matrices]
        return from_matrices(self.algebra, matrices, name="manifest")

    def _operator(self) -> OOperator:
        section = self.manifest.o_operator
        if self.algebra is None:
            raise ManifestError("An O-operator needs a lie_algebra section", ["o_operator"])
        if section.module == "coadjoint":
            return r_to_operator(self.algebra, section.matrix.to_tensor())
        if self.rep is None:
            raise ManifestError("module 'representation' needs a representation section", ["o_operator.module"])
        return OOperator(self.rep, self.algebra, section.matrix.to_tensor())

    def _density(self, text: str) -> sympy.Expr:
        expr = sympy.sympify(text, rational=True)
        for symbol in expr.free_symbols:
            if self.space.parse(symbol) is None:
                raise ValueError(f"{symbol} is not a jet symbol like u_0 or p_2")
        return expr


def _entries(entries):
    return [(tuple(e.indices), parse_rational(e.value)) for e in entries]
