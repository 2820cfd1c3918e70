"""Pydantic models for structured data in the toolkit."""

from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    ValidationInfo,
    field_validator,
    model_validator,
)


def to_fraction(value: Any) -> Fraction:
    """Read an exact rational from a Fraction, an int or a "p/q" / decimal string."""
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"cannot read {value!r} as an exact rational") from e
    raise ValueError(f"cannot read {value!r} as an exact rational")


def format_fraction(value: Fraction) -> str:
    """Lossless string form: "p" or "p/q"."""
    return str(value)


def _to_numeric(value: Any) -> Union[Fraction, float]:
    if isinstance(value, float):
        return value
    return to_fraction(value)


def _numeric_out(value: Union[Fraction, float]) -> Union[str, float]:
    return value if isinstance(value, float) else format_fraction(value)


Rational = Annotated[Fraction, PlainValidator(to_fraction), PlainSerializer(format_fraction, return_type=str)]
# Exact rational, or a float produced by one of the scaled (floating) modes.
Numeric = Annotated[Union[Fraction, float], PlainValidator(_to_numeric), PlainSerializer(_numeric_out)]

Vector = Tuple[int, ...]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


# ---------------------------------------------------------------------------
# Supports and polytopes
# ---------------------------------------------------------------------------

class Term(_Frozen):
    """One monomial c·x^exp of a Laurent polynomial."""

    exp: Vector = Field(..., description="Exponent vector")
    coeff: Rational = Field(..., description="Nonzero exact coefficient")


class MonomialSupport(_Frozen):
    """Laurent polynomial given by its terms."""

    n: int = Field(..., ge=1, description="Number of variables")
    terms: Tuple[Term, ...] = Field(..., min_length=1, description="Distinct-exponent terms")
    normalized: bool = Field(default=False, description="Exponents translated so each coordinate minimum is 0")

    @model_validator(mode="after")
    def _check_terms(self) -> "MonomialSupport":
        seen = set()
        for term in self.terms:
            if len(term.exp) != self.n:
                raise ValueError(f"exponent {term.exp} does not have {self.n} entries")
            if term.exp in seen:
                raise ValueError(f"exponent {term.exp} appears twice")
            if term.coeff == 0:
                raise ValueError(f"coefficient of {term.exp} is zero")
            seen.add(term.exp)
        return self

    @property
    def exponents(self) -> List[Vector]:
        return [term.exp for term in self.terms]

    @classmethod
    def from_terms(cls, terms: Mapping[Vector, Any], normalized: bool = False) -> "MonomialSupport":
        """Build from a mapping exponent -> coefficient."""
        items = [Term(exp=tuple(exp), coeff=coeff) for exp, coeff in terms.items()]
        if not items:
            raise ValueError("a support needs at least one term")
        return cls(n=len(items[0].exp), terms=tuple(items), normalized=normalized)

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "MonomialSupport":
        """Read the Laurent polynomial JSON {"terms": [{"exp": [...], "coeff": "3"}, ...]}."""
        raw_terms = obj.get("terms")
        if not raw_terms:
            raise ValueError("polynomial JSON needs a non-empty 'terms' list")
        terms = tuple(Term(exp=tuple(t["exp"]), coeff=t.get("coeff", 1)) for t in raw_terms)
        n = obj.get("n", len(terms[0].exp))
        return cls(n=n, terms=terms, normalized=False)


class PolytopeFamily(_Frozen):
    """Closed-form polytope family: prism, pyramid or truncated prism."""

    family: Literal["prism", "pyramid", "truncated_prism"]
    sides: Vector = Field(..., description="prism/truncated prism side lengths, or (a, b, c) for the pyramid")
    corner: Optional[Vector] = Field(default=None, description="Truncated-prism corner legs a_i with 0 < a_i < b_i")
    apex: Optional[Tuple[int, int]] = Field(default=None, description="Pyramid apex offsets (d, e); defaults to (1, 1)")

    @model_validator(mode="after")
    def _check_family(self) -> "PolytopeFamily":
        if any(s < 1 for s in self.sides):
            raise ValueError(f"sides must be positive, got {self.sides}")
        if self.family == "pyramid" and len(self.sides) != 3:
            raise ValueError("pyramid takes exactly three parameters a, b, c")
        if self.family != "pyramid" and len(self.sides) < 1:
            raise ValueError("at least one side is required")
        if self.family == "truncated_prism":
            if self.corner is None or len(self.corner) != len(self.sides):
                raise ValueError("truncated_prism needs one corner leg per side")
            if not all(0 < a < b for a, b in zip(self.corner, self.sides)):
                raise ValueError(f"corner legs must satisfy 0 < a_i < b_i, got {self.corner} vs {self.sides}")
        return self

    @property
    def dim(self) -> int:
        return 3 if self.family == "pyramid" else len(self.sides)


class Facet(_Frozen):
    """Facet inequality normal·x <= offset (primitive integer normal)."""

    normal: Vector
    offset: int
    vertex_ids: Vector


class Face(_Frozen):
    """A face: vertex-index set plus its affine hull (anchor + independent directions)."""

    dim: int = Field(..., ge=0)
    vertex_ids: Vector
    anchor: Vector
    directions: Tuple[Vector, ...] = Field(default=())


class LatticePolytope(_Frozen):
    """Integer-vertex convex polytope with its face lattice."""

    dim: int = Field(..., ge=1, description="Ambient dimension n")
    affine_dim: int = Field(..., ge=0, description="Dimension of the affine hull")
    vertices: Tuple[Vector, ...]
    facets: Tuple[Facet, ...] = Field(default=(), description="Facets, in the coordinates listed in 'projection'")
    faces: Dict[int, Tuple[Face, ...]]
    projection: Vector = Field(..., description="Coordinates on which facets are expressed (injective on the hull)")
    family: Optional[PolytopeFamily] = None

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim


class FaceVolumes(_Frozen):
    """Lattice-relative face volumes U_0..U_n and incidence counts."""

    n: int
    U: Tuple[Rational, ...]
    V: int
    E: int
    F: int
    W1: int = Field(..., ge=0)


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------

class WeightVector(_Frozen):
    """Multiplicity of each Frobenius weight w in 0..2(n-1)."""

    n: int = Field(..., ge=1)
    mult: Dict[int, int]

    @model_validator(mode="after")
    def _check_mult(self) -> "WeightVector":
        top = 2 * (self.n - 1)
        for w, count in self.mult.items():
            if not 0 <= w <= top:
                raise ValueError(f"weight {w} outside 0..{top}")
            if count < 0:
                raise ValueError(f"weight {w} has negative multiplicity {count}")
        for w in range(top + 1):
            self.mult.setdefault(w, 0)
        return self

    @property
    def total(self) -> int:
        return sum(self.mult.values())

    def ascending(self) -> Tuple[int, ...]:
        return tuple(self.mult[w] for w in range(2 * (self.n - 1) + 1))

    def descending(self) -> Tuple[int, ...]:
        return tuple(reversed(self.ascending()))


class SignedWeightVector(_Frozen):
    """Alternating signed weight multiplicities (entries may be negative)."""

    n: int = Field(..., ge=1)
    mult: Dict[int, int]
    leading_sign: Literal[-1, 1] = Field(default=1, description="Sign convention of the weight-0 term")

    @model_validator(mode="after")
    def _fill(self) -> "SignedWeightVector":
        top = 2 * (self.n - 1)
        for w in self.mult:
            if not 0 <= w <= top:
                raise ValueError(f"weight {w} outside 0..{top}")
        for w in range(top + 1):
            self.mult.setdefault(w, 0)
        return self

    @property
    def total(self) -> int:
        return sum(self.mult.values())

    def ascending(self) -> Tuple[int, ...]:
        return tuple(self.mult[w] for w in range(2 * (self.n - 1) + 1))

    def descending(self) -> Tuple[int, ...]:
        return tuple(reversed(self.ascending()))

    def plus(self, other: "SignedWeightVector") -> "SignedWeightVector":
        if other.n != self.n:
            raise ValueError("cannot add signed weights of different dimensions")
        mult = {w: self.mult[w] + other.mult[w] for w in self.mult}
        return SignedWeightVector(n=self.n, mult=mult, leading_sign=self.leading_sign)

    def scaled(self, factor: int) -> "SignedWeightVector":
        return SignedWeightVector(n=self.n, mult={w: factor * c for w, c in self.mult.items()},
                                  leading_sign=self.leading_sign)


class SlopeEdge(_Frozen):
    """Hull edge in plotted coordinates (y-exponent horizontal, x-exponent vertical)."""

    start: Tuple[int, int]
    end: Tuple[int, int]
    displacement: Tuple[int, int]
    volume: int = Field(..., ge=1)
    slope: Rational


class SlopeData(_Frozen):
    S0: Tuple[SlopeEdge, ...]
    Sinf: Tuple[SlopeEdge, ...]
    n0: int = Field(..., ge=0)
    ninf: int = Field(..., ge=0)

    @property
    def s0_volume(self) -> int:
        return sum(edge.volume for edge in self.S0)

    @property
    def sinf_volume(self) -> int:
        return sum(edge.volume for edge in self.Sinf)


class StratumCounts(_Frozen):
    n1: int = Field(..., ge=0)
    n2: int = Field(..., ge=0)
    r1: int = Field(..., ge=0)
    r2: int = Field(..., ge=0)

    @property
    def total(self) -> int:
        return self.n1 + self.n2 + self.r1 + self.r2


class PolygonInvariants(_Frozen):
    """Hull vertices (counter-clockwise, exponent coordinates), area U_2, boundary U_1, side gcds."""

    vertices: Tuple[Tuple[int, int], ...]
    area: Rational
    boundary: int
    side_gcds: Vector


class CurveWeightsReport(_Frozen):
    slopes: Optional[WeightVector] = None
    strata: Optional[WeightVector] = None
    agree: Optional[bool] = None
    normalized_volume: int
    discrepancy: Optional[str] = Field(default=None, description="Known inconsistency with a reference value")


class StratumKind(str, Enum):
    CODIM0 = "codim0"
    FACET_CURVE = "facet_curve"
    EDGE_POINTS = "edge_points"
    FULL_GM_LINE = "full_Gm_line"
    SINGLE_TERM = "single_term"
    ZERO_COORDINATE = "zero_coordinate"


class StratumContribution(_Frozen):
    infinite: Vector = Field(..., description="Coordinates sent to infinity")
    zero: Vector = Field(default=(), description="Coordinates sent to zero")
    kind: StratumKind
    signed_weights: SignedWeightVector
    detail: str = ""


# ---------------------------------------------------------------------------
# Hodge numbers, Eulerian distribution, adjoint vectors
# ---------------------------------------------------------------------------

class ResidueClass(_Frozen):
    """Character class lambda in (Z/m)^n."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    m: int = Field(..., ge=1)
    lam: Vector = Field(..., alias="lambda")

    @field_validator("lam")
    @classmethod
    def _reduce(cls, value: Vector, info: ValidationInfo) -> Vector:
        m = info.data.get("m", 1)
        return tuple(x % m for x in value)

    @property
    def trivial(self) -> bool:
        return all(x == 0 for x in self.lam)


class HodgeTable(_Frozen):
    n: int
    m: int
    lam: ResidueClass
    h: Dict[int, int]
    corrected: bool = Field(default=False, description="Torus correction was added")

    @property
    def total(self) -> int:
        return sum(self.h.values())


class DistributionMode(str, Enum):
    EXACT = "exact_rational"
    SCALED = "scaled_float"


class EulerianDistribution(_Frozen):
    """Law of the sum of two centred descent counts; beta[p + n - 1] = P(X = p)."""

    n: int = Field(..., ge=1)
    mode: DistributionMode
    beta: Tuple[Numeric, ...]

    def beta_at(self, p: int) -> Union[Fraction, float]:
        if abs(p) > self.n - 1:
            return Fraction(0) if self.mode == DistributionMode.EXACT else 0.0
        return self.beta[p + self.n - 1]


class AdjointHodgeVector(_Frozen):
    group: Literal["GL", "GO"]
    n: int = Field(..., ge=1, description="Length of the Hodge vector")
    ha: Dict[int, Numeric]
    t: Optional[int] = Field(default=None, ge=0, description="Maximal-torus dimension (None for mass-normalized vectors)")
    sign: Literal[-1, 1] = 1

    @property
    def total(self) -> Union[Fraction, float]:
        return sum(self.ha.values(), Fraction(0))

    @property
    def h0(self) -> Union[Fraction, float]:
        return self.ha.get(0, Fraction(0))


class InequalityCheck(_Frozen):
    name: str
    lhs: Numeric
    rhs: Numeric
    strict: bool = True
    holds: bool


class ConditionReport(_Frozen):
    mode: Literal["full", "simplified", "analytic"]
    holds: bool
    checks: List[InequalityCheck]
    notes: List[str] = Field(default_factory=list)


class BetaLemmaReport(_Frozen):
    """Bounds on beta_0, the first moment and the second moment at one n."""

    n: int
    beta0: Numeric
    first_moment: Numeric
    second_moment: Numeric
    upper_holds: bool
    lower_holds: bool
    variance_holds: bool


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------

class WeightPartition(_Frozen):
    c: Vector
    R: int

    @model_validator(mode="after")
    def _check_partition(self) -> "WeightPartition":
        if not self.c:
            raise ValueError("partition is empty")
        if any(x < 1 for x in self.c):
            raise ValueError(f"parts must be positive, got {self.c}")
        if list(self.c) != sorted(self.c, reverse=True):
            raise ValueError(f"parts must be sorted descending, got {self.c}")
        if sum(self.c) != self.R:
            raise ValueError(f"parts sum to {sum(self.c)}, not R = {self.R}")
        return self

    @classmethod
    def of(cls, parts: List[int]) -> "WeightPartition":
        ordered = tuple(sorted(parts, reverse=True))
        return cls(c=ordered, R=sum(ordered))


class ConditionOutcome(_Frozen):
    name: str
    holds: bool
    detail: str = ""


class CheckResult(_Frozen):
    large: bool
    failed_conditions: List[str]
    conditions: List[ConditionOutcome] = Field(default_factory=list)


class MonodromyReport(_Frozen):
    subject: str
    R: int
    r: int
    partition: Optional[WeightPartition] = None
    theorem_a: Optional[CheckResult] = None
    verbatim: Optional[CheckResult] = None
    triangle_configuration: Optional[bool] = None
    large: bool
    notes: List[str] = Field(default_factory=list)


class GabberVerdict(str, Enum):
    CONTAINS = "ContainsSLorSO"
    INCONCLUSIVE = "Inconclusive"


class PrimalityResult(_Frozen):
    n: int
    prime: bool
    probabilistic: bool = False


class GabberReport(_Frozen):
    R: int
    verdict: GabberVerdict
    primality: PrimalityResult
    reasons: List[str] = Field(default_factory=list)
    waive_g2: bool = False


class PrimeTruncation(_Frozen):
    sides: Vector
    found: bool
    b: Optional[int] = None
    N: Optional[int] = None
    probabilistic: bool = False


# ---------------------------------------------------------------------------
# Finite fields
# ---------------------------------------------------------------------------

class FiniteFieldPoly(_Frozen):
    """Laurent polynomial over F_q, coefficients reduced to [0, q)."""

    q: int = Field(..., ge=2, lt=1 << 20)
    support: MonomialSupport

    @field_validator("q")
    @classmethod
    def _check_prime(cls, value: int) -> int:
        from sympy import isprime

        if not isprime(value):
            raise ValueError(f"q = {value} is not prime")
        return value

    @field_validator("support")
    @classmethod
    def _reduce(cls, support: MonomialSupport, info: ValidationInfo) -> MonomialSupport:
        q = info.data.get("q")
        if q is None:
            return support
        reduced = []
        for term in support.terms:
            c = term.coeff
            if c.denominator % q == 0:
                raise ValueError(f"coefficient {c} has a denominator divisible by {q}")
            value = (c.numerator * pow(c.denominator, -1, q)) % q
            if value == 0:
                raise ValueError(f"coefficient of {term.exp} vanishes mod {q}")
            reduced.append(Term(exp=term.exp, coeff=value))
        return MonomialSupport(n=support.n, terms=tuple(reduced), normalized=support.normalized)

    @property
    def coefficients(self) -> Vector:
        return tuple(int(term.coeff) for term in self.support.terms)

    @classmethod
    def from_terms(cls, q: int, terms: Mapping[Vector, Any]) -> "FiniteFieldPoly":
        return cls(q=q, support=MonomialSupport.from_terms(terms))


class WeilEntry(_Frozen):
    degree: int
    field_size: int
    count: int
    main_term: int
    deviation: int
    bound: float
    margin: float
    holds: bool


class WeilReport(_Frozen):
    q: int
    n: int
    signed_weights: SignedWeightVector
    weight_dims: Dict[int, int] = Field(..., description="Dimensions of the weight-graded middle cohomology")
    entries: List[WeilEntry]
    holds: bool


# ---------------------------------------------------------------------------
# CLI and certification workflow
# ---------------------------------------------------------------------------

class RunManifest(_Frozen):
    command: str
    inputs: Dict[str, Any]
    toolkit_version: str
    seed: int
    outputs_digest: str


class CertifyRequest(_Frozen):
    """Input of the certification workflow: explicit vertices or a family."""

    vertices: Optional[List[List[int]]] = None
    family: Optional[PolytopeFamily] = None
    use_closed_form: bool = False

    @model_validator(mode="after")
    def _one_source(self) -> "CertifyRequest":
        if (self.vertices is None) == (self.family is None):
            raise ValueError("give exactly one of 'vertices' or 'family'")
        return self


class CertificateReport(_Frozen):
    subject: str
    dim: int
    R: int
    R_primality: PrimalityResult
    lattice_points: Optional[int] = None
    weights: Optional[WeightVector] = None
    weights_source: Optional[str] = None
    top_weight: Optional[int] = None
    conditions: List[ConditionReport] = Field(default_factory=list)
    monodromy: Optional[MonodromyReport] = None
    gabber: Optional[GabberReport] = None
    approved: bool
    findings: List[str] = Field(default_factory=list)
    unverified_hypotheses: List[str] = Field(default_factory=list)
    errors: List[str] = Field(default_factory=list)
