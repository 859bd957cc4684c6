"""Immutable symbolic expressions over coordinates, parameters and hyperbolic factors.

Every ``Expr`` is kept in a canonical normal form by construction: a sum of
Laurent monomials in "atoms" (symbols and function applications), with one
exact complex-rational coefficient per monomial.  Products of sums are always
expanded, children are kept in a fixed deterministic order, and any positive
even power of cosh is rewritten through cosh(u)^2 = 1 + sinh(u)^2 so that a
canonical monomial carries a cosh exponent of at most one.  On the fragment
used by this package (Laurent polynomials in coordinates, sinh/cosh of a
common argument, opaque exp/tanh atoms) structural equality of canonical
forms coincides with semantic equality.

Constants are exact complex rationals; floating point enters only through
:func:`eval_numeric`.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

__all__ = [
    "ComplexRational",
    "Expr",
    "Const",
    "Sym",
    "Add",
    "Mul",
    "Pow",
    "Fn",
    "UnboundSymbolError",
    "NonMonomialDivisionError",
    "ProbeSamplingError",
    "ZERO",
    "ONE",
    "I",
    "const",
    "integer",
    "rational",
    "sym",
    "sinh",
    "cosh",
    "exp",
    "tanh",
    "add",
    "mul",
    "simplify",
    "differentiate",
    "substitute",
    "eval_numeric",
    "equality_probe",
    "free_symbols",
]

RationalLike = Union[int, Fraction]


class UnboundSymbolError(KeyError):
    """A free symbol had no value in the supplied bindings."""


class NonMonomialDivisionError(ValueError):
    """Division or negative power of a multi-term sum was requested."""


class ProbeSamplingError(RuntimeError):
    """equality_probe could not find finite sample points within its retry cap."""


@dataclass(frozen=True)
class ComplexRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def inverse(self) -> "ComplexRational":
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("inverse of exact zero")
        return ComplexRational(self.re / d, -self.im / d)

    def power(self, n: int) -> "ComplexRational":
        if n < 0:
            return self.inverse().power(-n)
        out = CR_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


def _crat(re: RationalLike = 0, im: RationalLike = 0) -> ComplexRational:
    return ComplexRational(Fraction(re), Fraction(im))


CR_ZERO = _crat(0)
CR_ONE = _crat(1)
CR_I = _crat(0, 1)


class Expr:
    """Base class of canonical expression nodes."""

    __slots__ = ()

    def __add__(self, other: "ExprLike") -> "Expr":
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other: "ExprLike") -> "Expr":
        return add(self, mul(integer(-1), other))

    def __rsub__(self, other: "ExprLike") -> "Expr":
        return add(other, mul(integer(-1), self))

    def __mul__(self, other: "ExprLike") -> "Expr":
        return mul(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> "Expr":
        return mul(integer(-1), self)

    def __truediv__(self, other: "ExprLike") -> "Expr":
        return mul(self, _invert(_coerce(other)))

    def __rtruediv__(self, other: "ExprLike") -> "Expr":
        return mul(other, _invert(self))

    def __pow__(self, n: int) -> "Expr":
        if not isinstance(n, int):
            raise TypeError("exponents must be integers")
        return _pow_expr(self, n)


ExprLike = Union[Expr, int, Fraction, ComplexRational]


@dataclass(frozen=True)
class Const(Expr):
    value: ComplexRational

    __slots__ = ("value",)


@dataclass(frozen=True)
class Sym(Expr):
    name: str

    __slots__ = ("name",)


@dataclass(frozen=True)
class Add(Expr):
    terms: tuple[Expr, ...]

    __slots__ = ("terms",)


@dataclass(frozen=True)
class Mul(Expr):
    factors: tuple[Expr, ...]

    __slots__ = ("factors",)


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    __slots__ = ("base", "exponent")


@dataclass(frozen=True)
class Fn(Expr):
    fname: str
    arg: Expr

    __slots__ = ("fname", "arg")


FUNCTIONS = ("sinh", "cosh", "exp", "tanh")

# value of f(0) for each supported function, used to fold exact zero arguments
_FN_AT_ZERO = {"sinh": CR_ZERO, "cosh": CR_ONE, "exp": CR_ONE, "tanh": CR_ZERO}

_FN_NUMERIC: dict[str, Callable[[complex], complex]] = {
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
    "exp": cmath.exp,
    "tanh": cmath.tanh,
}

ZERO = Const(CR_ZERO)
ONE = Const(CR_ONE)
I = Const(CR_I)


def const(re: RationalLike = 0, im: RationalLike = 0) -> Expr:
    return Const(_crat(re, im))


def integer(n: int) -> Expr:
    return Const(_crat(n))


def rational(p: int, q: int) -> Expr:
    return Const(_crat(Fraction(p, q)))


def sym(name: str) -> Expr:
    if not name or name == "i":
        raise ValueError(f"invalid symbol name {name!r}")
    return Sym(name)


def _coerce(e: ExprLike) -> Expr:
    if isinstance(e, Expr):
        return e
    if isinstance(e, bool):
        raise TypeError("bool is not an expression")
    if isinstance(e, (int, Fraction)):
        return Const(_crat(e))
    if isinstance(e, ComplexRational):
        return Const(e)
    raise TypeError(f"cannot interpret {type(e).__name__} as Expr")


# --- ordering ---------------------------------------------------------------

def _skey(e: Expr) -> tuple:
    """Deterministic structural sort key."""
    if isinstance(e, Const):
        return (0, str(e.value.re), str(e.value.im))
    if isinstance(e, Sym):
        return (1, e.name)
    if isinstance(e, Fn):
        return (2, e.fname, _skey(e.arg))
    if isinstance(e, Pow):
        return (3, _skey(e.base), e.exponent)
    if isinstance(e, Mul):
        return (4, tuple(_skey(f) for f in e.factors))
    if isinstance(e, Add):
        return (5, tuple(_skey(t) for t in e.terms))
    raise TypeError(type(e))


# --- normal form ------------------------------------------------------------

# A monomial maps atoms (Sym or Fn nodes) to nonzero integer exponents.  The
# term map of an expression maps frozen monomials to coefficients.
Monomial = tuple[tuple[Expr, int], ...]
TermMap = dict[Monomial, ComplexRational]


def _mono_key(mono: Monomial) -> tuple:
    return tuple((_skey(atom), exp) for atom, exp in mono)


def _freeze(atoms: Mapping[Expr, int]) -> Monomial:
    items = [(a, e) for a, e in atoms.items() if e != 0]
    items.sort(key=lambda it: _skey(it[0]))
    return tuple(items)


def _add_term(out: TermMap, mono: Monomial, coeff: ComplexRational) -> None:
    if coeff.is_zero:
        return
    cur = out.get(mono)
    if cur is None:
        out[mono] = coeff
    else:
        s = cur + coeff
        if s.is_zero:
            del out[mono]
        else:
            out[mono] = s


def _reduce_cosh(mono_atoms: dict[Expr, int], coeff: ComplexRational, out: TermMap) -> None:
    """Insert coeff * monomial into ``out`` with cosh powers >= 2 eliminated."""
    for atom, e in mono_atoms.items():
        if isinstance(atom, Fn) and atom.fname == "cosh" and e >= 2:
            rest = dict(mono_atoms)
            del rest[atom]
            k, r = divmod(e, 2)
            if r:
                rest[atom] = 1
            # (1 + sinh(u)^2)^k expanded by the binomial theorem
            s_atom = Fn("sinh", atom.arg)
            binom = 1
            for j in range(k + 1):
                sub = dict(rest)
                if j:
                    sub[s_atom] = sub.get(s_atom, 0) + 2 * j
                _reduce_cosh(sub, coeff * _crat(binom), out)
                binom = binom * (k - j) // (j + 1)
            return
    _add_term(out, _freeze(mono_atoms), coeff)


def _as_terms(e: Expr) -> TermMap:
    """Decompose a canonical expression into its term map."""
    if isinstance(e, Const):
        return {} if e.value.is_zero else {(): e.value}
    if isinstance(e, (Sym, Fn)):
        return {((e, 1),): CR_ONE}
    if isinstance(e, Pow):
        return {((e.base, e.exponent),): CR_ONE}
    if isinstance(e, Mul):
        coeff = CR_ONE
        atoms: dict[Expr, int] = {}
        for f in e.factors:
            if isinstance(f, Const):
                coeff = coeff * f.value
            elif isinstance(f, Pow):
                atoms[f.base] = atoms.get(f.base, 0) + f.exponent
            else:
                atoms[f] = atoms.get(f, 0) + 1
        return {_freeze(atoms): coeff}
    if isinstance(e, Add):
        out: TermMap = {}
        for t in e.terms:
            for mono, c in _as_terms(t).items():
                _add_term(out, mono, c)
        return out
    raise TypeError(type(e))


def _term_to_expr(mono: Monomial, coeff: ComplexRational) -> Expr:
    factors: list[Expr] = []
    if not coeff.is_one or not mono:
        factors.append(Const(coeff))
    for atom, e in mono:
        factors.append(atom if e == 1 else Pow(atom, e))
    if len(factors) == 1:
        return factors[0]
    return Mul(tuple(factors))


def _from_terms(terms: TermMap) -> Expr:
    if not terms:
        return ZERO
    items = sorted(terms.items(), key=lambda kv: _mono_key(kv[0]))
    exprs = [_term_to_expr(m, c) for m, c in items]
    if len(exprs) == 1:
        return exprs[0]
    return Add(tuple(exprs))


def _mul_terms(t1: TermMap, t2: TermMap) -> TermMap:
    out: TermMap = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            atoms = {a: e for a, e in m1}
            for a, e in m2:
                atoms[a] = atoms.get(a, 0) + e
            _reduce_cosh(atoms, c1 * c2, out)
    return out


def add(*parts: ExprLike) -> Expr:
    out: TermMap = {}
    for p in parts:
        for mono, c in _as_terms(_coerce(p)).items():
            _add_term(out, mono, c)
    return _from_terms(out)


def mul(*parts: ExprLike) -> Expr:
    terms: TermMap = {(): CR_ONE}
    for p in parts:
        terms = _mul_terms(terms, _as_terms(_coerce(p)))
        if not terms:
            return ZERO
    return _from_terms(terms)


def _invert(e: Expr) -> Expr:
    terms = _as_terms(e)
    if not terms:
        raise ZeroDivisionError("division by exact zero expression")
    if len(terms) > 1:
        raise NonMonomialDivisionError(
            "can only divide by a single-term (monomial) expression"
        )
    (mono, coeff), = terms.items()
    atoms = {a: -x for a, x in mono}
    out: TermMap = {}
    _reduce_cosh(atoms, coeff.inverse(), out)
    return _from_terms(out)


def _pow_expr(e: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n < 0:
        return _pow_expr(_invert(e), -n)
    terms = _as_terms(e)
    if len(terms) == 1:
        (mono, coeff), = terms.items()
        atoms = {a: x * n for a, x in mono}
        out: TermMap = {}
        _reduce_cosh(atoms, coeff.power(n), out)
        return _from_terms(out)
    # expand positive powers of sums by binary exponentiation
    acc: TermMap = {(): CR_ONE}
    base = terms
    k = n
    while k:
        if k & 1:
            acc = _mul_terms(acc, base)
        k >>= 1
        if k:
            base = _mul_terms(base, base)
    return _from_terms(acc)


def _fn(name: str, arg: ExprLike) -> Expr:
    a = _coerce(arg)
    if isinstance(a, Const) and a.value.is_zero:
        return Const(_FN_AT_ZERO[name])
    out: TermMap = {}
    _reduce_cosh({Fn(name, a): 1}, CR_ONE, out)
    return _from_terms(out)


def sinh(arg: ExprLike) -> Expr:
    return _fn("sinh", arg)


def cosh(arg: ExprLike) -> Expr:
    return _fn("cosh", arg)


def exp(arg: ExprLike) -> Expr:
    return _fn("exp", arg)


def tanh(arg: ExprLike) -> Expr:
    return _fn("tanh", arg)


# --- operations -------------------------------------------------------------

def simplify(e: Expr) -> Expr:
    """Re-normalize an expression.

    Expressions are canonical by construction, so this is a fixed point:
    ``simplify(simplify(e))`` is structurally identical to ``simplify(e)``.
    It remains the entry point for trees assembled from raw node constructors.
    """
    if isinstance(e, Const):
        return ZERO if e.value.is_zero else e
    if isinstance(e, Sym):
        return e
    if isinstance(e, Fn):
        return _fn(e.fname, simplify(e.arg))
    if isinstance(e, Pow):
        return _pow_expr(simplify(e.base), e.exponent)
    if isinstance(e, Mul):
        return mul(*(simplify(f) for f in e.factors))
    if isinstance(e, Add):
        return add(*(simplify(t) for t in e.terms))
    raise TypeError(type(e))


def _atom_derivative(atom: Expr, name: str) -> Expr:
    if isinstance(atom, Sym):
        return ONE if atom.name == name else ZERO
    if isinstance(atom, Fn):
        inner = differentiate(atom.arg, name)
        if inner is ZERO or inner == ZERO:
            return ZERO
        u = atom.arg
        if atom.fname == "sinh":
            outer = cosh(u)
        elif atom.fname == "cosh":
            outer = sinh(u)
        elif atom.fname == "exp":
            outer = exp(u)
        else:  # tanh
            outer = ONE - tanh(u) ** 2
        return mul(outer, inner)
    raise TypeError(type(atom))


def differentiate(e: Expr, v: Union[str, Expr]) -> Expr:
    """Exact partial derivative with respect to symbol ``v``, canonicalized."""
    if isinstance(v, Sym):
        name = v.name
    elif isinstance(v, str):
        name = v
    else:
        raise TypeError("differentiation variable must be a symbol or its name")
    if not name or name == "i":
        raise ValueError(f"invalid differentiation symbol {name!r}")
    parts: list[Expr] = []
    for mono, coeff in _as_terms(e).items():
        for idx, (atom, k) in enumerate(mono):
            d = _atom_derivative(atom, name)
            if d == ZERO:
                continue
            rest = [
                (a if x == 1 else Pow(a, x))
                for j, (a, x) in enumerate(mono)
                if j != idx
            ]
            parts.append(
                mul(Const(coeff * _crat(k)), _pow_expr(atom, k - 1), d, *rest)
            )
    return add(*parts) if parts else ZERO


def substitute(e: Expr, mapping: Mapping[str, ExprLike]) -> Expr:
    """Simultaneous substitution of symbols, followed by normalization."""
    table = {n: _coerce(x) for n, x in mapping.items()}

    def walk(node: Expr) -> Expr:
        if isinstance(node, Const):
            return node
        if isinstance(node, Sym):
            return table.get(node.name, node)
        if isinstance(node, Fn):
            return _fn(node.fname, walk(node.arg))
        if isinstance(node, Pow):
            return _pow_expr(walk(node.base), node.exponent)
        if isinstance(node, Mul):
            return mul(*(walk(f) for f in node.factors))
        if isinstance(node, Add):
            return add(*(walk(t) for t in node.terms))
        raise TypeError(type(node))

    return walk(e)


def free_symbols(e: Expr) -> frozenset[str]:
    names: set[str] = set()

    def walk(node: Expr) -> None:
        if isinstance(node, Sym):
            names.add(node.name)
        elif isinstance(node, Fn):
            walk(node.arg)
        elif isinstance(node, Pow):
            walk(node.base)
        elif isinstance(node, Mul):
            for f in node.factors:
                walk(f)
        elif isinstance(node, Add):
            for t in node.terms:
                walk(t)

    walk(e)
    return frozenset(names)


Bindings = Mapping[str, complex]


def eval_numeric(e: Expr, bindings: Bindings) -> complex:
    """IEEE complex value of ``e``.  Every free symbol must be bound."""
    if isinstance(e, Const):
        return e.value.to_complex()
    if isinstance(e, Sym):
        try:
            return complex(bindings[e.name])
        except KeyError:
            raise UnboundSymbolError(e.name) from None
    if isinstance(e, Fn):
        return _FN_NUMERIC[e.fname](eval_numeric(e.arg, bindings))
    if isinstance(e, Pow):
        return eval_numeric(e.base, bindings) ** e.exponent
    if isinstance(e, Mul):
        out = 1 + 0j
        for f in e.factors:
            out *= eval_numeric(f, bindings)
        return out
    if isinstance(e, Add):
        return sum(eval_numeric(t, bindings) for t in e.terms)
    raise TypeError(type(e))


DEFAULT_SAMPLE_RANGE = (0.5, 2.0)
_PROBE_RETRY_CAP = 8


def equality_probe(
    e1: Expr,
    e2: Expr,
    trials: int = 32,
    tol: float = 1e-9,
    *,
    seed: int = 20259,
    ranges: Mapping[str, tuple[float, float]] | None = None,
) -> bool:
    """Numeric equality test at pseudo-random bindings from a fixed-seed box.

    Symbols default to the box ``[0.5, 2]``, which keeps every sampled point
    away from coordinate singularities such as a vanishing radial coordinate;
    ``ranges`` overrides the box per symbol (parameters typically use a
    smaller positive box).  Returns True iff ``|e1 - e2| <= tol * (1 + |e1|)``
    at every trial.  Sample points where either side overflows or is not
    finite are redrawn, with a retry cap.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    names = sorted(free_symbols(e1) | free_symbols(e2))
    rng = random.Random(seed)
    for _ in range(trials):
        for attempt in range(_PROBE_RETRY_CAP + 1):
            b = {}
            for n in names:
                lo, hi = (ranges or {}).get(n, DEFAULT_SAMPLE_RANGE)
                b[n] = rng.uniform(lo, hi)
            try:
                v1 = eval_numeric(e1, b)
                v2 = eval_numeric(e2, b)
            except (OverflowError, ZeroDivisionError):
                continue
            if cmath.isfinite(v1) and cmath.isfinite(v2):
                break
        else:
            raise ProbeSamplingError(
                "no finite sample point found within the retry cap"
            )
        if abs(v1 - v2) > tol * (1.0 + abs(v1)):
            return False
    return True
