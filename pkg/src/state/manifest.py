"""
Input manifest: the objects a run works on and the checks it requests
"""
import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Sequence, Union

from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    StrictInt,
    StrictStr,
    ValidationError,
    field_validator,
    model_validator,
)

from src.core.errors import ManifestError
from src.core.tensor import Tensor
from src.utils.rationals import parse_rational

SCHEMA = "omatrix/1"
# union member tags pydantic appends to error locations
UNION_TAGS = {"int", "str"}


def _exact(value: Union[int, str]) -> Union[int, str]:
    parse_rational(value)
    return value


RationalText = Annotated[Union[StrictInt, StrictStr], AfterValidator(_exact)]


class SparseEntry(BaseModel):
    """One nonzero tensor entry"""

    model_config = ConfigDict(extra="forbid")

    indices: List[NonNegativeInt] = Field(description="Multi-index of the entry")
    value: RationalText = Field(description='Exact value, "p/q" or an integer')


class MatrixSection(BaseModel):
    """A matrix or tensor given densely (rows) or sparsely (entries + shape)"""

    model_config = ConfigDict(extra="forbid")

    shape: Optional[List[PositiveInt]] = Field(default=None, description="Shape of a sparse tensor")
    dense: Optional[List[List[RationalText]]] = Field(default=None, description="Rows of a dense matrix")
    entries: Optional[List[SparseEntry]] = Field(default=None, description="Sparse nonzero entries")

    @model_validator(mode="after")
    def _one_form(self) -> "MatrixSection":
        if (self.dense is None) == (self.entries is None):
            raise ValueError("give exactly one of 'dense' or 'entries'")
        if self.entries is not None and self.shape is None:
            raise ValueError("sparse entries need a 'shape'")
        if self.dense is not None and len({len(row) for row in self.dense}) > 1:
            raise ValueError("dense rows have different lengths")
        return self

    def to_tensor(self) -> Tensor:
        if self.dense is not None:
            return Tensor.from_dense([[parse_rational(v) for v in row] for row in self.dense])
        return _sparse(self.shape, self.entries)


def _sparse(shape: Sequence[int], entries: Sequence[SparseEntry]) -> Tensor:
    return Tensor(shape, [(tuple(e.indices), parse_rational(e.value)) for e in entries])


LIE_PRESETS = ("sl2", "gl2", "borel-sl2", "two-dim-nonabelian", "abelian2", "abelian3")
REP_PRESETS = ("fundamental-sl2", "adjoint", "coadjoint")
PRODUCT_PRESETS = ("gl2-matrix", "scalar")


class LieAlgebraSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: Optional[Literal[LIE_PRESETS]] = Field(default=None, description="Named fixture algebra")
    name: str = Field(default="", description="Display name")
    dim: Optional[PositiveInt] = Field(default=None, description="Dimension N")
    basis: Optional[List[str]] = Field(default=None, description="Basis labels")
    structure_constants: Optional[List[SparseEntry]] = Field(
        default=None, description="Entries c_{ij}^k at indices [i, j, k]"
    )

    @model_validator(mode="after")
    def _preset_or_constants(self) -> "LieAlgebraSection":
        if (self.preset is None) == (self.structure_constants is None):
            raise ValueError("give exactly one of 'preset' or 'structure_constants'")
        if self.structure_constants is not None and self.dim is None:
            raise ValueError("structure constants need 'dim'")
        return self

    def to_tensor(self) -> Tensor:
        return _sparse((self.dim,) * 3, self.structure_constants)


class RepresentationSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: Optional[Literal[REP_PRESETS]] = Field(default=None, description="Named module")
    matrices: Optional[List[List[List[RationalText]]]] = Field(
        default=None, description="One dense matrix per basis element, acting on column vectors"
    )

    @model_validator(mode="after")
    def _preset_or_matrices(self) -> "RepresentationSection":
        if (self.preset is None) == (self.matrices is None):
            raise ValueError("give exactly one of 'preset' or 'matrices'")
        return self


class OOperatorSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    module: Literal["representation", "coadjoint"] = Field(
        default="representation", description="Source module of O"
    )
    matrix: MatrixSection = Field(description="matrix[s, a] = coefficient of e_s in O(ℓ_a)")


class RhoSection(BaseModel):
    """Operators on V⊗V for the Yang-Baxter checks"""

    model_config = ConfigDict(extra="forbid")

    dim_v: PositiveInt = Field(default=2, description="dim V")
    r: Optional[MatrixSection] = Field(default=None, description="h coefficient of R")
    rho: Optional[MatrixSection] = Field(default=None, description="h² coefficient of R")


class ProductSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: Optional[Literal[PRODUCT_PRESETS]] = Field(default=None, description="Named product")
    dim: Optional[PositiveInt] = Field(default=None, description="Dimension of the algebra")
    entries: Optional[List[SparseEntry]] = Field(default=None, description="m_{ij}^k at indices [i, j, k]")

    @model_validator(mode="after")
    def _preset_or_entries(self) -> "ProductSection":
        if (self.preset is None) == (self.entries is None):
            raise ValueError("give exactly one of 'preset' or 'entries'")
        if self.entries is not None and self.dim is None:
            raise ValueError("product entries need 'dim'")
        return self


class DiffParamsSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mu: RationalText = Field(default=0, description="μ of G(μ)")
    eps: RationalText = Field(default=0, description="ε of the O-operator on G(μ)*")
    casimir: str = Field(default="u_0**(1/2)", description="Density tested as a D₁ Casimir")
    lemma_density: str = Field(
        default="u_0**2 + u_0*p_1 + p_0*p_2", description="Density for the variational commutator"
    )

    @property
    def mu_value(self) -> Fraction:
        return parse_rational(self.mu)

    @property
    def eps_value(self) -> Fraction:
        return parse_rational(self.eps)


class Manifest(BaseModel):
    """A whole run definition"""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_tag: str = Field(alias="schema", description=f'Must be "{SCHEMA}"')
    scalar: Literal["rational"] = Field(default="rational", description="Scalar field")
    lie_algebra: Optional[LieAlgebraSection] = None
    representation: Optional[RepresentationSection] = None
    r_matrix: Optional[MatrixSection] = None
    o_operator: Optional[OOperatorSection] = None
    rho: Optional[RhoSection] = None
    product: Optional[ProductSection] = None
    diff_params: Optional[DiffParamsSection] = None
    checks: List[str] = Field(min_length=1, description="Requested check names")

    @field_validator("schema_tag")
    @classmethod
    def _known_schema(cls, value: str) -> str:
        if value != SCHEMA:
            raise ValueError(f'unsupported schema {value!r}, expected "{SCHEMA}"')
        return value

    @classmethod
    def from_dict(cls, data: dict) -> "Manifest":
        """
        Raises:
            ManifestError: With the paths of every offending field
        """
        if not isinstance(data, dict):
            raise ManifestError("Manifest must be a JSON object")
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            paths = sorted({_path(err["loc"]) for err in exc.errors()})
            first = exc.errors()[0]["msg"]
            raise ManifestError(f"Invalid manifest: {first}", paths) from exc

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Manifest":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ManifestError(f"Cannot read manifest {path}: {exc.strerror}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ManifestError(f"Manifest is not valid JSON: {exc.msg} at line {exc.lineno}") from exc
        return cls.from_dict(data)


def _path(loc) -> str:
    out = ""
    for part in loc:
        if isinstance(part, str) and (part in UNION_TAGS or "[" in part):
            continue
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out or "<root>"
