"""Exact sparse multivariate polynomials and rational functions over Q.

Variables live in five alphabets:

* ``x`` -- x_1..x_n, the flag-variety Chern roots (graded degree 1)
* ``y`` -- y_1..y_n, the auxiliary alphabet for double Schubert work (degree 1)
* ``q`` -- q_1..q_{n-1}, quantum parameters (degree 2)
* ``t`` -- t_w, one deformation parameter per permutation w (degree 0)
* ``z`` -- a scratch formal variable used for generating functions (degree 1)

A monomial is a sorted tuple of ``(Var, exponent)`` pairs with positive
exponents; the empty tuple is the unit monomial.  A :class:`Polynomial` maps
monomials to nonzero :class:`fractions.Fraction` coefficients and is never
mutated after construction.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Union

Monomial = tuple  # tuple[tuple[Var, int], ...]

_KIND_RANK = {"x": 0, "y": 1, "q": 2, "t": 3, "z": 4}
_KIND_WEIGHT = {"x": 1, "y": 1, "q": 2, "t": 0, "z": 1}


class Var(NamedTuple):
    """A variable: alphabet tag plus index (an int, or a one-line tuple for t)."""

    kind: str
    index: object

    def __str__(self) -> str:
        if self.kind == "t":
            return "t[" + ",".join(str(i) for i in self.index) + "]"
        if self.kind == "z":
            return "z"
        return f"{self.kind}{self.index}"

    @property
    def weight(self) -> int:
        return _KIND_WEIGHT[self.kind]

    def priority(self) -> tuple:
        """Sort key for display: x1 > x2 > ... > y.. > q1 > ... > t-variables."""
        if self.kind == "t":
            return (_KIND_RANK["t"], len_of_perm(self.index), tuple(self.index))
        return (_KIND_RANK[self.kind], self.index if self.kind != "z" else 0)


def len_of_perm(w: tuple) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def parse_var(name: str) -> Var:
    """Inverse of ``str(Var)``."""
    if name == "z":
        return Var("z", 0)
    if name.startswith("t[") and name.endswith("]"):
        return Var("t", tuple(int(s) for s in name[2:-1].split(",")))
    kind, idx = name[0], name[1:]
    if kind not in ("x", "y", "q") or not idx.isdigit():
        raise ValueError(f"cannot parse variable {name!r}")
    return Var(kind, int(idx))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    """Graded degree: x, y, z count 1, q counts 2, t counts 0."""
    return sum(_KIND_WEIGHT[v.kind] * e for v, e in m)


def mono_t_degree(m: Monomial) -> int:
    return sum(e for v, e in m if v.kind == "t")


_DISPLAY_RANK = {"q": 0, "t": 1, "x": 2, "y": 3, "z": 4}


def _display_key(v: Var) -> tuple:
    return (_DISPLAY_RANK[v.kind],) + v.priority()[1:]


def mono_str(m: Monomial) -> str:
    # coefficient alphabets first: q1*x1 rather than x1*q1
    parts = []
    for v, e in sorted(m, key=lambda ve: _display_key(ve[0])):
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


Scalar = Union[int, Fraction]


class Polynomial:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # terms already canonical: nonzero Fraction coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls._raw({(): Fraction(c)} if c else {})

    @classmethod
    def var(cls, v: Var, exp: int = 1) -> "Polynomial":
        if exp == 0:
            return cls.constant(1)
        return cls._raw({((v, exp),): Fraction(1)})

    @classmethod
    def monomial(cls, m: Iterable[tuple[Var, int]], coeff: Scalar = 1) -> "Polynomial":
        mono = tuple(sorted((v, e) for v, e in m if e))
        return cls._raw({mono: Fraction(coeff)} if coeff else {})

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict:
        """Read-only view intent: do not mutate."""
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def kinds(self) -> set:
        return {v.kind for m in self._terms for v, _ in m}

    def graded_degrees(self) -> set:
        return {mono_degree(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.graded_degrees()) <= 1

    def t_degree(self) -> int:
        """Largest total t-degree of a term (-1 for zero)."""
        return max((mono_t_degree(m) for m in self._terms), default=-1)

    def t_order(self) -> int:
        """Smallest total t-degree of a term (-1 for zero)."""
        return min((mono_t_degree(m) for m in self._terms), default=-1)

    def degree_in(self, v: Var) -> int:
        return max((dict(m).get(v, 0) for m in self._terms), default=-1)

    # -- arithmetic -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = -c
            else:
                s -= c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return Polynomial()
        out: dict = {}
        get = out.get
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        return self * Fraction(c)

    # -- calculus and substitution ---------------------------------------

    def diff(self, v: Var) -> "Polynomial":
        """Formal partial derivative with respect to ``v``."""
        out: dict = {}
        for m, c in self._terms.items():
            for i, (u, e) in enumerate(m):
                if u == v:
                    if e == 1:
                        nm = m[:i] + m[i + 1:]
                    else:
                        nm = m[:i] + ((u, e - 1),) + m[i + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return Polynomial._raw({m: c for m, c in out.items() if c})

    def truncate_t(self, D: int) -> "Polynomial":
        """Drop every term whose total t-degree exceeds ``D``."""
        return Polynomial._raw({m: c for m, c in self._terms.items() if mono_t_degree(m) <= D})

    def t_homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if mono_t_degree(m) == k})

    def map_monomials(self, f: Callable[[Monomial], Monomial]) -> "Polynomial":
        out: dict = {}
        for m, c in self._terms.items():
            nm = f(m)
            out[nm] = out.get(nm, 0) + c
        return Polynomial._raw({m: c for m, c in out.items() if c})

    def rename(self, mapping: Mapping[Var, Var]) -> "Polynomial":
        """Apply a variable-to-variable substitution (e.g. a transposition)."""
        def f(m):
            d: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            return tuple(sorted(d.items()))
        return self.map_monomials(f)

    def set_zero(self, pred: Callable[[Var], bool]) -> "Polynomial":
        """Specialize every variable satisfying ``pred`` to 0."""
        return Polynomial._raw({
            m: c for m, c in self._terms.items() if not any(pred(v) for v, _ in m)
        })

    def subs(self, mapping: Mapping[Var, "Polynomial"]) -> "Polynomial":
        result = Polynomial()
        for m, c in self._terms.items():
            term = Polynomial.constant(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    term = term * (mapping[v] ** e)
                else:
                    rest.append((v, e))
            if rest:
                term = term * Polynomial.monomial(rest)
            result = result + term
        return result

    def split(self, pred: Callable[[Var], bool]) -> dict:
        """Group terms by the sub-monomial of variables satisfying ``pred``.

        Returns ``{selected_monomial: Polynomial in the remaining variables}``.
        """
        groups: dict = {}
        for m, c in self._terms.items():
            sel = tuple((v, e) for v, e in m if pred(v))
            rest = tuple((v, e) for v, e in m if not pred(v))
            groups.setdefault(sel, {})[rest] = c
        return {k: Polynomial._raw(v) for k, v in groups.items()}

    # -- display and serialization --------------------------------------

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order (x1 > x2 > ... > q1 > ... > t)."""
        vs = sorted(self.variables(), key=Var.priority)

        def key(item):
            d = dict(item[0])
            return (mono_degree(item[0]), mono_t_degree(item[0]), tuple(d.get(v, 0) for v in vs))

        return sorted(self._terms.items(), key=key, reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = mono_str(m)
            else:
                body = f"{a}*{mono_str(m)}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def to_records(self) -> list:
        """JSON-ready sorted term list with decimal-string rationals."""
        return [
            {
                "exponents": {str(v): e for v, e in sorted(m, key=lambda ve: ve[0].priority())},
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_records(cls, records: Iterable[Mapping]) -> "Polynomial":
        terms: dict = {}
        for r in records:
            m = tuple(sorted((parse_var(k), int(e)) for k, e in r["exponents"].items()))
            terms[m] = terms.get(m, 0) + Fraction(int(r["num"]), int(r["den"]))
        return cls(terms)


def _coerce(obj) -> Polynomial | None:
    if isinstance(obj, Polynomial):
        return obj
    if isinstance(obj, (int, Fraction)):
        return Polynomial.constant(obj)
    return None


def X(i: int) -> Polynomial:
    return Polynomial.var(Var("x", i))


def Y(i: int) -> Polynomial:
    return Polynomial.var(Var("y", i))


def Q(i: int) -> Polynomial:
    return Polynomial.var(Var("q", i))


def T(w) -> Polynomial:
    return Polynomial.var(t_var(w))


def t_var(w) -> Var:
    return Var("t", tuple(w))


Z = Polynomial.var(Var("z", 0))
ZERO = Polynomial()
ONE = Polynomial.constant(1)


def poly_sum(items: Iterable[Polynomial]) -> Polynomial:
    out: dict = {}
    for p in items:
        for m, c in p.items():
            out[m] = out.get(m, 0) + c
    return Polynomial._raw({m: c for m, c in out.items() if c})


def truncate_t(p: Polynomial, D: int) -> Polynomial:
    return p.truncate_t(D)


def partial_derivative(p: Polynomial, v: Var) -> Polynomial:
    return p.diff(v)


def mul_trunc(a: Polynomial, b: Polynomial, D: int) -> Polynomial:
    """``truncate_t(a * b, D)`` without forming the discarded terms."""
    if not a or not b:
        return ZERO
    bt = [(m, mono_t_degree(m), c) for m, c in b.items()]
    out: dict = {}
    get = out.get
    for m1, c1 in a.items():
        d1 = mono_t_degree(m1)
        if d1 > D:
            continue
        room = D - d1
        for m2, d2, c2 in bt:
            if d2 <= room:
                m = mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
    return Polynomial._raw({m: c for m, c in out.items() if c})


class RationalFunction:
    """Fraction of two polynomials; equality is by cross-multiplication.

    No gcd normalization is attempted.  Use :meth:`equal_mod_t` to compare
    numerators only up to a total t-degree bound.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _coerce(num)
        den = _coerce(den)
        if num is None or den is None:
            raise TypeError("RationalFunction needs polynomial numerator and denominator")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        # move a constant denominator into the numerator
        if den.is_constant() and den != 1:
            num = num * (1 / den.constant_term())
            den = ONE
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rf(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_rf(other) / self

    def derivative(self, v: Var) -> "RationalFunction":
        if self.den.is_constant():
            return RationalFunction(self.num.diff(v), self.den)
        return RationalFunction(
            self.num.diff(v) * self.den - self.num * self.den.diff(v), self.den * self.den
        )

    def equal(self, other) -> bool:
        other = _as_rf(other)
        return self.num * other.den == other.num * self.den

    def equal_mod_t(self, other, bound: int) -> bool:
        """Cross-multiplied numerators agree in every t-degree up to ``bound``."""
        other = _as_rf(other)
        return mul_trunc(self.num, other.den, bound) == mul_trunc(other.num, self.den, bound)

    def truncate_t(self, D: int) -> "RationalFunction":
        return RationalFunction(self.num.truncate_t(D), self.den.truncate_t(D))

    def simplify(self) -> "RationalFunction":
        """Cancel the common monomial content of numerator and denominator."""
        if self.num.is_zero():
            return RationalFunction(ZERO, ONE)
        common = None
        for p in (self.num, self.den):
            for m in p.terms:
                d = dict(m)
                common = d if common is None else {v: min(e, d.get(v, 0)) for v, e in common.items()}
        common = {v: e for v, e in (common or {}).items() if e}
        if not common:
            return self

        def strip(m):
            return tuple((v, e - common.get(v, 0)) for v, e in m if e - common.get(v, 0))

        return RationalFunction(self.num.map_monomials(strip), self.den.map_monomials(strip))

    def __eq__(self, other) -> bool:
        if isinstance(other, (RationalFunction, Polynomial, int, Fraction)):
            return self.equal(other)
        return NotImplemented

    __hash__ = None  # equality is not structural

    def __repr__(self) -> str:
        if self.den == 1:
            return f"RationalFunction({self.num})"
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def to_record(self) -> dict:
        return {"num": self.num.to_records(), "den": self.den.to_records()}


def _as_rf(obj) -> RationalFunction:
    if isinstance(obj, RationalFunction):
        return obj
    return RationalFunction(obj, ONE)


def rf_ops(a: RationalFunction, b: RationalFunction, op: str, v: Var | None = None):
    """Dispatch table over the rational-function operations by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "derivative":
        return a.derivative(v)
    if op == "equal":
        return a.equal(b)
    raise ValueError(f"unknown rational-function op {op!r}")


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial op {op!r}")


def iter_t_vars(p: Polynomial) -> Iterator[Var]:
    return iter(sorted((v for v in p.variables() if v.kind == "t"), key=Var.priority))
