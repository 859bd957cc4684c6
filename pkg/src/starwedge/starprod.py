"""Linearized star products, star commutators and coordinate commutator tables.

The deformed product is f*g = fg + O(f, g) with O the first-order twist
operator; the commutator [f, g] = f*g - g*f drops the undeformed part exactly
and is first order in the deformation parameter.  Associativity of the
truncated product holds only up to second order in the parameter and is
deliberately not asserted anywhere.  ``verify_flat_relations`` compares an
engine-built flat-chart table entry by entry against independent closed-form
expressions for all three deformation kinds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .diffop import Chart, ChartMismatchError, MINKOWSKI, lowered_coordinate
from .expr import Expr, I, ZERO, add, equality_probe, mul, sym
from .grammar import to_text
from .twists import (
    CanonicalTwist,
    LieTwist,
    LinearTwist,
    QuadraticTwist,
    TwistSpec,
    spec_to_config,
)

__all__ = [
    "star",
    "commutator",
    "CommutatorTable",
    "build_table",
    "expected_flat_table",
    "RelationEntry",
    "RelationReport",
    "verify_flat_relations",
    "table_to_text",
    "table_to_json_dict",
]

ETA = (-1, 1, 1, 1)


def _check_chart(twist: LinearTwist, *exprs: Expr) -> None:
    del exprs  # coefficients may carry extra parameters; chart symbols suffice
    if twist.operator.chart != twist.chart:
        raise ChartMismatchError("twist operator chart disagrees with its record")


def star(f: Expr, g: Expr, twist: LinearTwist) -> Expr:
    """Deformed product truncated at first order in the deformation parameter."""
    _check_chart(twist, f, g)
    return mul(f, g) + twist.operator.apply(f, g)


def commutator(f: Expr, g: Expr, twist: LinearTwist) -> Expr:
    """Star commutator f*g - g*f; the undeformed product cancels exactly."""
    return star(f, g, twist) - star(g, f, twist)


@dataclass(frozen=True)
class CommutatorTable:
    """All six independent coordinate commutators of a twist on its chart."""

    spec: TwistSpec
    chart: Chart
    entries: dict[tuple[int, int], Expr]

    def entry(self, mu: int, nu: int) -> Expr:
        """Entry for any index order; antisymmetry fills the lower triangle."""
        if mu == nu:
            return ZERO
        if mu < nu:
            return self.entries[(mu, nu)]
        return -self.entries[(nu, mu)]


def build_table(twist: LinearTwist) -> CommutatorTable:
    coords = [sym(n) for n in twist.chart.coords]
    entries = {
        (mu, nu): commutator(coords[mu], coords[nu], twist)
        for mu in range(4)
        for nu in range(mu + 1, 4)
    }
    return CommutatorTable(twist.spec, twist.chart, entries)


# --- independent closed forms for the flat chart ------------------------------

def _expected_canonical(spec: CanonicalTwist) -> dict[tuple[int, int], Expr]:
    return {
        (mu, nu): mul(I, spec.theta[mu][nu])
        for mu in range(4)
        for nu in range(mu + 1, 4)
    }


def _lie_structure_constant(spec: LieTwist, rho: int, mu: int, nu: int) -> Fraction:
    """Structure coefficient of the linear flat-chart relation, all indices low."""
    zeta_low = [Fraction(ETA[k]) * spec.zeta[k] for k in range(4)]
    a, b = spec.alpha, spec.beta
    val = Fraction(0)
    val += spec.inv_kappa * zeta_low[mu] * (
        (ETA[b] if b == nu else 0) * (1 if rho == a else 0)
        - (ETA[a] if a == nu else 0) * (1 if rho == b else 0)
    )
    val += spec.inv_kappa * zeta_low[nu] * (
        (ETA[a] if a == mu else 0) * (1 if rho == b else 0)
        - (ETA[b] if b == mu else 0) * (1 if rho == a else 0)
    )
    return val


def _expected_lie(spec: LieTwist) -> dict[tuple[int, int], Expr]:
    out: dict[tuple[int, int], Expr] = {}
    for mu in range(4):
        for nu in range(mu + 1, 4):
            lowered = add(
                *(
                    mul(_lie_structure_constant(spec, rho, mu, nu), lowered_coordinate(MINKOWSKI, rho))
                    for rho in range(4)
                )
            )
            # the closed form is stated for lowered coordinates; raise both
            # free indices with the diagonal metric to compare with the
            # engine table of plain coordinate functions
            out[(mu, nu)] = mul(I, ETA[mu] * ETA[nu], lowered)
    return out


def _quadratic_rhs_lowered(spec: QuadraticTwist, mu: int, nu: int) -> Expr:
    """Linearized quadratic constraint right-hand side at lowered indices.

    The anticommutators contribute 2 x_rho x_sigma at leading order, and
    tanh(xi/2) linearizes to xi/2.
    """
    a, b, g, d = spec.indices

    def eta_at(k: int, m: int) -> int:
        return ETA[k] if k == m else 0

    def pair(r: int, s: int) -> Expr:
        return mul(2, lowered_coordinate(MINKOWSKI, r), lowered_coordinate(MINKOWSKI, s))

    bracket = add(
        mul(eta_at(a, mu) * eta_at(g, nu), pair(b, d)),
        mul(-eta_at(a, mu) * eta_at(d, nu), pair(b, g)),
        mul(-eta_at(b, mu) * eta_at(g, nu), pair(a, d)),
        mul(eta_at(b, mu) * eta_at(d, nu), pair(a, g)),
    )
    return mul(I, Fraction(spec.xi, 2), bracket)


def _expected_quadratic(spec: QuadraticTwist) -> dict[tuple[int, int], Expr]:
    out: dict[tuple[int, int], Expr] = {}
    for mu in range(4):
        for nu in range(mu + 1, 4):
            # the printed constraint populates only ordered pairs with mu from
            # the first generator pair and nu from the second; the full table
            # is its antisymmetric completion
            lowered = _quadratic_rhs_lowered(spec, mu, nu) - _quadratic_rhs_lowered(spec, nu, mu)
            out[(mu, nu)] = mul(ETA[mu] * ETA[nu], lowered)
    return out


def expected_flat_table(spec: TwistSpec) -> dict[tuple[int, int], Expr]:
    """Closed-form flat-chart commutators, independent of the twist machinery."""
    if isinstance(spec, CanonicalTwist):
        return _expected_canonical(spec)
    if isinstance(spec, LieTwist):
        return _expected_lie(spec)
    if isinstance(spec, QuadraticTwist):
        return _expected_quadratic(spec)
    raise TypeError(f"not a twist parameter record: {type(spec).__name__}")


@dataclass(frozen=True)
class RelationEntry:
    mu: int
    nu: int
    expected: Expr
    got: Expr
    structural_equal: bool
    numeric_equal: bool

    @property
    def passed(self) -> bool:
        return self.structural_equal and self.numeric_equal

    @property
    def residual(self) -> Expr:
        return self.got - self.expected


@dataclass(frozen=True)
class RelationReport:
    spec: TwistSpec
    entries: tuple[RelationEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[RelationEntry]:
        return [e for e in self.entries if not e.passed]


def verify_flat_relations(
    twist: LinearTwist, *, trials: int = 50, tol: float = 1e-12, seed: int = 11
) -> RelationReport:
    """Compare the engine table against the closed forms, entry by entry."""
    if twist.chart != MINKOWSKI:
        raise ChartMismatchError("closed-form relations are stated on the flat chart")
    table = build_table(twist)
    expected = expected_flat_table(twist.spec)
    entries = []
    for (mu, nu), want in sorted(expected.items()):
        got = table.entries[(mu, nu)]
        structural = got == want
        numeric = structural or equality_probe(got, want, trials=trials, tol=tol, seed=seed)
        entries.append(RelationEntry(mu, nu, want, got, structural, numeric))
    return RelationReport(twist.spec, tuple(entries))


# --- export -------------------------------------------------------------------

def table_to_text(table: CommutatorTable) -> str:
    names = table.chart.coords
    lines = [f"# chart: {table.chart.name}"]
    for key, val in spec_to_config(table.spec).items():
        lines.append(f"# {key} = {val}")
    body = []
    for (mu, nu), e in sorted(table.entries.items()):
        body.append((f"[{names[mu]}, {names[nu]}]", to_text(e)))
    width = max(len(lhs) for lhs, _ in body)
    lines.extend(f"{lhs.ljust(width)} = {rhs}" for lhs, rhs in body)
    return "\n".join(lines) + "\n"


def table_to_json_dict(table: CommutatorTable) -> dict:
    return {
        "chart": table.chart.name,
        "twist": spec_to_config(table.spec),
        "entries": {
            f"{table.chart.coords[mu]},{table.chart.coords[nu]}": to_text(e)
            for (mu, nu), e in sorted(table.entries.items())
        },
    }


def table_to_json(table: CommutatorTable) -> str:
    return json.dumps(table_to_json_dict(table), indent=2, sort_keys=True) + "\n"
