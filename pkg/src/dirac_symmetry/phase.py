"""Exact multivariate polynomial arithmetic on a declared phase space.

Polynomials are sparse maps from exponent tuples to nonzero rational
coefficients.  The canonical term order is graded lexicographic over the
declared identifier order (q1..qn, p1..pn, then parameters), which makes
printing and leading-term extraction deterministic.  All values are
immutable after construction and every operation is a pure function.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import SpaceMismatchError

Exponents = tuple[int, ...]
RationalLike = Union[Fraction, int]

_PARAMETER_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_VARIABLE_SHAPE_RE = re.compile(r"[qp][0-9]+\Z")


class PhaseSpace:
    """Canonical pairs q1..qn, p1..pn plus inert scalar parameters.

    Parameters commute with everything and have zero bracket with every
    variable; they always include the energy symbol ``E``.
    """

    __slots__ = ("n_dof", "parameters", "identifiers", "_index")

    def __init__(self, n_dof: int, parameters: Iterable[str] = ("E",)):
        if not isinstance(n_dof, int) or n_dof < 1:
            raise ValueError(f"n_dof must be a positive integer, got {n_dof!r}")
        params = tuple(parameters)
        if "E" not in params:
            raise ValueError("parameter list must include the energy symbol E")
        seen = set()
        for name in params:
            if not _PARAMETER_NAME_RE.match(name):
                raise ValueError(f"invalid parameter name {name!r}")
            if _VARIABLE_SHAPE_RE.match(name):
                raise ValueError(
                    f"parameter name {name!r} collides with the q/p variable namespace"
                )
            if name in seen:
                raise ValueError(f"duplicate parameter name {name!r}")
            seen.add(name)
        object.__setattr__(self, "n_dof", n_dof)
        object.__setattr__(self, "parameters", params)
        idents = tuple(
            [f"q{i}" for i in range(1, n_dof + 1)]
            + [f"p{i}" for i in range(1, n_dof + 1)]
            + list(params)
        )
        object.__setattr__(self, "identifiers", idents)
        object.__setattr__(self, "_index", {name: k for k, name in enumerate(idents)})

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("PhaseSpace is immutable")

    @property
    def n_identifiers(self) -> int:
        return len(self.identifiers)

    def index(self, name: str) -> int:
        """Position of an identifier in the declared order; KeyError if absent."""
        return self._index[name]

    def has_identifier(self, name: str) -> bool:
        return name in self._index

    def q_index(self, i: int) -> int:
        return i - 1

    def p_index(self, i: int) -> int:
        return self.n_dof + i - 1

    def is_parameter_index(self, idx: int) -> bool:
        return idx >= 2 * self.n_dof

    def extend(self, extra_parameters: Iterable[str]) -> "PhaseSpace":
        """New space with extra parameters appended after the existing ones."""
        return PhaseSpace(self.n_dof, self.parameters + tuple(extra_parameters))

    def extends(self, other: "PhaseSpace") -> bool:
        """True if this space is `other` plus zero or more appended parameters."""
        return (
            self.n_dof == other.n_dof
            and self.parameters[: len(other.parameters)] == other.parameters
        )

    def __eq__(self, other):
        if not isinstance(other, PhaseSpace):
            return NotImplemented
        return self.n_dof == other.n_dof and self.parameters == other.parameters

    def __hash__(self):
        return hash((self.n_dof, self.parameters))

    def __repr__(self):
        return f"PhaseSpace(n_dof={self.n_dof}, parameters={self.parameters!r})"


def _grlex_key(monomial: Exponents) -> tuple:
    return (sum(monomial), monomial)


class PhasePolynomial:
    """Sparse exact polynomial over the rationals on one phase space.

    Treat instances as immutable: all arithmetic returns new objects and the
    term mapping is never mutated after construction.
    """

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space: PhaseSpace, terms: Mapping[Exponents, RationalLike]):
        cleaned: dict[Exponents, Fraction] = {}
        for monomial, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff:
                cleaned[monomial] = coeff
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("PhasePolynomial is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, space: PhaseSpace) -> "PhasePolynomial":
        return cls(space, {})

    @classmethod
    def constant(cls, space: PhaseSpace, value: RationalLike) -> "PhasePolynomial":
        return cls(space, {(0,) * space.n_identifiers: Fraction(value)})

    @classmethod
    def variable(cls, space: PhaseSpace, name: str) -> "PhasePolynomial":
        idx = space.index(name)
        exps = [0] * space.n_identifiers
        exps[idx] = 1
        return cls(space, {tuple(exps): Fraction(1)})

    # ------------------------------------------------------------------
    # basic queries
    # ------------------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def leading_monomial(self) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; ValueError if non-constant."""
        zero_mon = (0,) * self.space.n_identifiers
        for monomial in self.terms:
            if monomial != zero_mon:
                raise ValueError(f"polynomial {self} is not constant")
        return self.terms.get(zero_mon, Fraction(0))

    def used_indices(self) -> frozenset[int]:
        """Identifier positions with a nonzero exponent somewhere."""
        used = set()
        for monomial in self.terms:
            for idx, exp in enumerate(monomial):
                if exp:
                    used.add(idx)
        return frozenset(used)

    def coefficient(self, monomial: Exponents) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _check_space(self, other: "PhasePolynomial") -> None:
        if self.space != other.space:
            raise SpaceMismatchError(
                f"operands live on different phase spaces: "
                f"{self.space!r} vs {other.space!r}"
            )

    def __add__(self, other):
        if isinstance(other, PhasePolynomial):
            self._check_space(other)
            result = dict(self.terms)
            for monomial, coeff in other.terms.items():
                new = result.get(monomial, Fraction(0)) + coeff
                if new:
                    result[monomial] = new
                else:
                    result.pop(monomial, None)
            return PhasePolynomial(self.space, result)
        if isinstance(other, (int, Fraction)):
            return self + PhasePolynomial.constant(self.space, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return PhasePolynomial(
            self.space, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, PhasePolynomial):
            self._check_space(other)
            result = dict(self.terms)
            for monomial, coeff in other.terms.items():
                new = result.get(monomial, Fraction(0)) - coeff
                if new:
                    result[monomial] = new
                else:
                    result.pop(monomial, None)
            return PhasePolynomial(self.space, result)
        if isinstance(other, (int, Fraction)):
            return self - PhasePolynomial.constant(self.space, other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return PhasePolynomial.constant(self.space, other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, PhasePolynomial):
            self._check_space(other)
            result: dict[Exponents, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    prod = tuple(a + b for a, b in zip(m1, m2))
                    new = result.get(prod, Fraction(0)) + c1 * c2
                    if new:
                        result[prod] = new
                    else:
                        del result[prod]
            return PhasePolynomial(self.space, result)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, factor: RationalLike) -> "PhasePolynomial":
        factor = Fraction(factor)
        if not factor:
            return PhasePolynomial.zero(self.space)
        return PhasePolynomial(
            self.space, {m: c * factor for m, c in self.terms.items()}
        )

    def __pow__(self, exponent: int) -> "PhasePolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {exponent!r}")
        result = PhasePolynomial.constant(self.space, 1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # calculus
    # ------------------------------------------------------------------
    def partial_index(self, idx: int) -> "PhasePolynomial":
        """Formal partial derivative with respect to identifier position `idx`."""
        result: dict[Exponents, Fraction] = {}
        for monomial, coeff in self.terms.items():
            exp = monomial[idx]
            if exp:
                lowered = list(monomial)
                lowered[idx] = exp - 1
                key = tuple(lowered)
                new = result.get(key, Fraction(0)) + coeff * exp
                if new:
                    result[key] = new
                else:
                    del result[key]
        return PhasePolynomial(self.space, result)

    def partial(self, name: str) -> "PhasePolynomial":
        """Formal partial derivative with respect to a declared identifier."""
        if not self.space.has_identifier(name):
            raise KeyError(f"undeclared identifier {name!r}")
        return self.partial_index(self.space.index(name))

    # ------------------------------------------------------------------
    # space embedding
    # ------------------------------------------------------------------
    def in_space(self, target: PhaseSpace) -> "PhasePolynomial":
        """Embed into a space that extends this one by appended parameters."""
        if target == self.space:
            return self
        if not target.extends(self.space):
            raise SpaceMismatchError(
                f"{target!r} does not extend {self.space!r}"
            )
        pad = (0,) * (target.n_identifiers - self.space.n_identifiers)
        return PhasePolynomial(target, {m + pad: c for m, c in self.terms.items()})

    # ------------------------------------------------------------------
    # equality / hashing / printing
    # ------------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, PhasePolynomial):
            return self.space == other.space and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == PhasePolynomial.constant(self.space, other)
        return NotImplemented

    def __hash__(self):
        cached = self._hash
        if cached is None:
            cached = hash((self.space, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", cached)
        return cached

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def _monomial_str(self, monomial: Exponents) -> str:
        factors = []
        for idx, exp in enumerate(monomial):
            if exp == 1:
                factors.append(self.space.identifiers[idx])
            elif exp > 1:
                factors.append(f"{self.space.identifiers[idx]}^{exp}")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for position, (monomial, coeff) in enumerate(self.sorted_terms()):
            mon = self._monomial_str(monomial)
            if position == 0:
                # Leading term carries its sign inside the rational literal so
                # the printed form stays inside the expression grammar.
                if not mon:
                    pieces.append(str(coeff))
                elif coeff == 1:
                    pieces.append(mon)
                else:
                    pieces.append(f"{coeff}*{mon}")
            else:
                sign = " + " if coeff > 0 else " - "
                mag = abs(coeff)
                if not mon:
                    pieces.append(f"{sign}{mag}")
                elif mag == 1:
                    pieces.append(f"{sign}{mon}")
                else:
                    pieces.append(f"{sign}{mag}*{mon}")
        return "".join(pieces)

    def __repr__(self):
        return f"PhasePolynomial({self})"


def poisson(f: PhasePolynomial, g: PhasePolynomial) -> PhasePolynomial:
    """Poisson bracket {f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i).

    Parameters are bracket-inert: only the canonical pairs contribute.
    """
    if f.space != g.space:
        raise SpaceMismatchError(
            f"bracket operands live on different phase spaces: "
            f"{f.space!r} vs {g.space!r}"
        )
    space = f.space
    accum: dict[Exponents, Fraction] = {}

    def accumulate(a: PhasePolynomial, b: PhasePolynomial, sign: int) -> None:
        if not a.terms or not b.terms:
            return
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                prod = tuple(x + y for x, y in zip(m1, m2))
                new = accum.get(prod, Fraction(0)) + sign * c1 * c2
                if new:
                    accum[prod] = new
                else:
                    del accum[prod]

    for i in range(1, space.n_dof + 1):
        qi = space.q_index(i)
        pi = space.p_index(i)
        df_dq = f.partial_index(qi)
        if df_dq.terms:
            accumulate(df_dq, g.partial_index(pi), 1)
        df_dp = f.partial_index(pi)
        if df_dp.terms:
            accumulate(df_dp, g.partial_index(qi), -1)
    return PhasePolynomial(space, accum)
