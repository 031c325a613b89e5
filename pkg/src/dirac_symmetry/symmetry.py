"""Verification of candidate symmetry generators for constrained systems.

A generator passes when its bracket with H_d vanishes identically (strict)
or decomposes over the constraints and the on-shell generator H_d - E
(on-shell), when its action maps every constraint level into that level's
own module, and when the generator set closes with constant structure
coefficients.  Every verdict carries re-expandable certificates, and every
negative answer is qualified by the degree bound of the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .chain import LEVELS, ConstrainedSystem, ConstraintChain
from .linsolve import rational_rank
from .membership import CoefficientMode, IdealDecomposition, NotFound, decompose
from .phase import PhasePolynomial, poisson


class CommutationClass(Enum):
    STRICT = "strict"
    ON_SHELL = "on-shell"
    FAILS = "fails"


class VerdictClass(Enum):
    STRICT_SYMMETRY = "StrictSymmetry"
    DYNAMICAL_SYMMETRY = "DynamicalSymmetry"
    MIXES_CONSTRAINTS = "MixesConstraints"
    NOT_SYMMETRY = "NotSymmetry"


_STRENGTH = {
    VerdictClass.NOT_SYMMETRY: 0,
    VerdictClass.MIXES_CONSTRAINTS: 1,
    VerdictClass.DYNAMICAL_SYMMETRY: 2,
    VerdictClass.STRICT_SYMMETRY: 3,
}


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered, named, rationally independent generator polynomials."""

    names: tuple[str, ...]
    generators: tuple[PhasePolynomial, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("generator set must be nonempty")
        if len(self.names) != len(self.generators):
            raise ValueError("one name per generator required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        space = self.generators[0].space
        for poly in self.generators:
            if poly.space != space:
                raise ValueError("generators must share one phase space")
            if poly.is_zero():
                raise ValueError("zero polynomial among generators")
        if rational_rank(p.terms for p in self.generators) != len(self.generators):
            raise ValueError("generators are linearly dependent over the rationals")

    def __len__(self) -> int:
        return len(self.generators)


# ----------------------------------------------------------------------
# commutation with H_d
# ----------------------------------------------------------------------
def check_dynamical_symmetry(
    generator: PhasePolynomial,
    system: ConstrainedSystem,
    chain: ConstraintChain,
    degree_bound: int | None = None,
    include_energy: bool = True,
) -> tuple[CommutationClass, PhasePolynomial, IdealDecomposition | NotFound]:
    """Classify {A, H_d}: identically zero, weakly zero, or neither.

    Returns (class, bracket, certificate).  A FAILS answer is conclusive only
    up to the degree bound recorded on the certificate.
    """
    bracket = poisson(generator, system.h_d)
    _, ideal = chain.on_shell_generators(include_energy)
    outcome = decompose(bracket, ideal, degree_bound)
    if bracket.is_zero():
        return CommutationClass.STRICT, bracket, outcome
    if isinstance(outcome, IdealDecomposition):
        return CommutationClass.ON_SHELL, bracket, outcome
    return CommutationClass.FAILS, bracket, outcome


# ----------------------------------------------------------------------
# level preservation
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ConstraintImage:
    """Action of a generator on one constraint."""

    level: str
    index: int
    name: str
    image: PhasePolynomial
    within_level: IdealDecomposition | NotFound
    across_levels: IdealDecomposition | NotFound | None


@dataclass(frozen=True)
class MixingFinding:
    """A constraint whose image needs other levels to decompose."""

    source_level: str
    source_name: str
    target_level: str
    target_name: str
    coefficient: PhasePolynomial


@dataclass(frozen=True)
class LevelPreservationReport:
    images: tuple[ConstraintImage, ...]
    level_preserving: bool
    mixing: tuple[MixingFinding, ...]
    escapes: tuple[tuple[str, str], ...]  # (level, name) mapped outside the module
    matrices: dict[str, tuple[tuple[PhasePolynomial, ...] | None, ...]]

    @property
    def mixing_found(self) -> bool:
        return bool(self.mixing)


def check_level_preservation(
    generator: PhasePolynomial,
    chain: ConstraintChain,
    degree_bound: int | None = None,
    mode: CoefficientMode = CoefficientMode.POLYNOMIAL,
) -> LevelPreservationReport:
    """Decompose {A, phi} over phi's own level for every constraint phi.

    A failure that succeeds over the full constraint set is constraint
    mixing; a failure even there means the generator maps the constraint
    outside the constraint module entirely.  Both are reported with the
    offending pairs named.
    """
    all_polys = chain.all_constraints()
    images: list[ConstraintImage] = []
    mixing: list[MixingFinding] = []
    escapes: list[tuple[str, str]] = []
    matrices: dict[str, list[tuple[PhasePolynomial, ...] | None]] = {}

    level_index = []
    for level in LEVELS:
        for name in chain.level_names(level):
            level_index.append((level, name))

    for level in LEVELS:
        polys = chain.level_polys(level)
        names = chain.level_names(level)
        rows: list[tuple[PhasePolynomial, ...] | None] = []
        for idx, (phi, name) in enumerate(zip(polys, names)):
            image = poisson(generator, phi)
            within = decompose(image, polys, degree_bound, mode)
            across = None
            if isinstance(within, NotFound):
                across = decompose(image, all_polys, degree_bound, mode)
                if isinstance(across, IdealDecomposition):
                    for (tgt_level, tgt_name), coeff in zip(
                        level_index, across.coefficients
                    ):
                        if tgt_level != level and not coeff.is_zero():
                            mixing.append(
                                MixingFinding(level, name, tgt_level, tgt_name, coeff)
                            )
                else:
                    escapes.append((level, name))
                rows.append(None)
            else:
                rows.append(within.coefficients)
            images.append(ConstraintImage(level, idx, name, image, within, across))
        matrices[level] = rows

    return LevelPreservationReport(
        images=tuple(images),
        level_preserving=not mixing and not escapes,
        mixing=tuple(mixing),
        escapes=tuple(escapes),
        matrices={lvl: tuple(rows) for lvl, rows in matrices.items()},
    )


# ----------------------------------------------------------------------
# count preservation
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class CountsReport:
    applicable: bool
    ranks: dict[str, int | None]
    counts_preserved: bool


def check_counts(
    chain: ConstraintChain, level_report: LevelPreservationReport
) -> CountsReport:
    """Rank of the transformed constraints inside each level's own module.

    Only meaningful when level preservation holds (the rank of the
    coefficient rows then never exceeds the level count); reported as
    not-applicable otherwise.
    """
    if not level_report.level_preserving:
        return CountsReport(False, {level: None for level in LEVELS}, False)
    ranks: dict[str, int | None] = {}
    preserved = True
    for level in LEVELS:
        rows = level_report.matrices[level]
        vectors = []
        for row in rows:
            flat: dict[tuple[int, tuple], Fraction] = {}
            if row is not None:
                for target_idx, coeff in enumerate(row):
                    for monomial, value in coeff.terms.items():
                        flat[(target_idx, monomial)] = value
            vectors.append(flat)
        rank = rational_rank(vectors)
        ranks[level] = rank
        if rank > len(rows):  # pragma: no cover - impossible, rank <= row count
            preserved = False
    return CountsReport(True, ranks, preserved)


# ----------------------------------------------------------------------
# closure and structure constants
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class StructureConstants:
    """Constant tensor C[k][i][j] with {A_i, A_j} = sum_k C[k][i][j] A_k."""

    names: tuple[str, ...]
    tensor: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def antisymmetry_ok(self) -> bool:
        n = len(self.names)
        return all(
            self.tensor[k][i][j] == -self.tensor[k][j][i]
            for k in range(n)
            for i in range(n)
            for j in range(n)
        )

    def jacobi_ok(self) -> bool:
        n = len(self.names)
        c = self.tensor
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        total = sum(
                            c[m][i][j] * c[l][m][k]
                            + c[m][j][k] * c[l][m][i]
                            + c[m][k][i] * c[l][m][j]
                            for m in range(n)
                        )
                        if total != 0:
                            return False
        return True

    def is_abelian(self) -> bool:
        return all(
            not entry for plane in self.tensor for row in plane for entry in row
        )


@dataclass(frozen=True)
class NotClosed:
    """First failing pair of a constant-coefficient closure search."""

    pair: tuple[str, str]
    bracket: PhasePolynomial
    field_dependent_close: bool
    field_certificate: IdealDecomposition | None


def closure_and_structure_constants(
    gen_set: GeneratorSet, degree_bound: int | None = None
) -> StructureConstants | NotClosed:
    """Extract C[k][i][j] from pairwise brackets, or report the failing pair.

    Closure demands truly constant coefficients.  When a pair only
    decomposes with field-dependent (polynomial) coefficients, that is
    flagged as a distinct diagnostic, not accepted as closure.
    """
    n = len(gen_set)
    zero = Fraction(0)
    tensor = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bracket = poisson(gen_set.generators[i], gen_set.generators[j])
            outcome = decompose(
                bracket, gen_set.generators, mode=CoefficientMode.CONSTANT
            )
            if isinstance(outcome, NotFound):
                retry = decompose(bracket, gen_set.generators, degree_bound)
                closes = isinstance(retry, IdealDecomposition)
                return NotClosed(
                    (gen_set.names[i], gen_set.names[j]),
                    bracket,
                    closes,
                    retry if closes else None,
                )
            for k, coeff in enumerate(outcome.coefficients):
                value = coeff.constant_value()
                tensor[k][i][j] = value
                tensor[k][j][i] = -value
    constants = StructureConstants(
        gen_set.names,
        tuple(tuple(tuple(row) for row in plane) for plane in tensor),
    )
    if not constants.antisymmetry_ok() or not constants.jacobi_ok():
        # Unique decompositions over an independent set inherit both laws.
        raise RuntimeError("internal error: structure constants violate Lie laws")
    return constants


# ----------------------------------------------------------------------
# aggregate classification
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class GeneratorVerdict:
    name: str
    generator: PhasePolynomial
    commutation_class: CommutationClass
    bracket_with_h_d: PhasePolynomial
    commutation_certificate: IdealDecomposition | NotFound
    level_report: LevelPreservationReport
    counts_report: CountsReport
    verdict: VerdictClass


@dataclass(frozen=True)
class SymmetryVerdict:
    generator_verdicts: tuple[GeneratorVerdict, ...]
    closure: StructureConstants | NotClosed
    overall: VerdictClass
    include_energy: bool
    degree_bound: int | None


def _generator_class(
    commutation: CommutationClass, level_report: LevelPreservationReport
) -> VerdictClass:
    if commutation is CommutationClass.FAILS or level_report.escapes:
        return VerdictClass.NOT_SYMMETRY
    if level_report.mixing:
        return VerdictClass.MIXES_CONSTRAINTS
    if commutation is CommutationClass.STRICT:
        return VerdictClass.STRICT_SYMMETRY
    return VerdictClass.DYNAMICAL_SYMMETRY


def classify(
    gen_set: GeneratorSet,
    system: ConstrainedSystem,
    chain: ConstraintChain,
    degree_bound: int | None = None,
    include_energy: bool = True,
    level_mode: CoefficientMode = CoefficientMode.POLYNOMIAL,
) -> SymmetryVerdict:
    """Run all four checks on every generator and aggregate the verdict.

    The overall class is the weakest per-generator class; a generator set
    that does not close with constant coefficients is no symmetry algebra at
    all, so closure failure caps the verdict at NotSymmetry.
    """
    verdicts = []
    for name, generator in zip(gen_set.names, gen_set.generators):
        commutation, bracket, certificate = check_dynamical_symmetry(
            generator, system, chain, degree_bound, include_energy
        )
        level_report = check_level_preservation(
            generator, chain, degree_bound, level_mode
        )
        counts_report = check_counts(chain, level_report)
        verdicts.append(
            GeneratorVerdict(
                name=name,
                generator=generator,
                commutation_class=commutation,
                bracket_with_h_d=bracket,
                commutation_certificate=certificate,
                level_report=level_report,
                counts_report=counts_report,
                verdict=_generator_class(commutation, level_report),
            )
        )
    closure = closure_and_structure_constants(gen_set, degree_bound)
    overall = min((v.verdict for v in verdicts), key=_STRENGTH.__getitem__)
    if isinstance(closure, NotClosed):
        overall = VerdictClass.NOT_SYMMETRY
    return SymmetryVerdict(
        generator_verdicts=tuple(verdicts),
        closure=closure,
        overall=overall,
        include_energy=include_energy,
        degree_bound=degree_bound,
    )
