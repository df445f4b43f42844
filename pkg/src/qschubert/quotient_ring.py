"""The small quantum cohomology ring Q[x, q] / I~_n.

Normal forms are computed by exact per-degree linear algebra.  The ideal is
homogeneous (deg x = 1, deg q = 2), so each graded slice of I~_n is a finite
Q-vector space spanned by products m * e~_i.  Row-reducing that slice with
pivots preferred on non-standard monomials (x-exponent not below delta_n)
leaves exactly the standard monomials x^I q^g as the complement.

Only slices of degree <= l(w0) + 1 are ever reduced: every x^a is reached by
repeated multiplication by single variables x_k, and x_k * x^I with I standard
never exceeds that degree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path

from .exact_algebra import ONE, ZERO, Polynomial, Var, mul_trunc, poly_sum
from .permutations import Permutation, all_permutations, from_code, longest_element
from .report import CheckResult, tally
from .schubert import default_cache_dir, quantum_elementary, schubert_table

SCHEMA_VERSION = 1


class FreenessError(RuntimeError):
    """The degree slice of the ideal does not complement the standard monomials."""


def monomial_basis(n: int) -> list[tuple]:
    """Exponent vectors I with 0 <= i_k <= n - k, lexicographically ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    return sorted(product(*[range(n - k + 1) for k in range(1, n + 1)]))


def is_standard(a: tuple) -> bool:
    n = len(a)
    return all(e <= n - 1 - k for k, e in enumerate(a))


def _monomials_of_degree(n: int, d: int) -> list[tuple]:
    """All (x-exponent, q-exponent) pairs with |a| + 2|g| == d."""
    out = []

    def compositions(total, parts):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for qd in range(d // 2 + 1):
        for g in compositions(qd, n - 1):
            for a in compositions(d - 2 * qd, n):
                out.append((a, g))
    return out


def _to_columns(p: Polynomial, n: int) -> dict:
    cols: dict = {}
    for m, c in p.items():
        a = [0] * n
        g = [0] * (n - 1)
        for v, e in m:
            if v.kind == "x":
                a[v.index - 1] = e
            elif v.kind == "q":
                g[v.index - 1] = e
            else:
                raise ValueError(f"unexpected variable {v} in an ideal slice")
        cols[(tuple(a), tuple(g))] = c
    return cols


def _q_monomial(g: tuple) -> tuple:
    return tuple((Var("q", i + 1), e) for i, e in enumerate(g) if e)


def _x_monomial(a: tuple) -> tuple:
    return tuple((Var("x", i + 1), e) for i, e in enumerate(a) if e)


def _col_key(col) -> tuple:
    a, g = col
    return (is_standard(a), a, g)


@dataclass
class DegreeSlice:
    """Echelon form of the degree-d slice of I~_n; rows keyed by pivot column."""

    n: int
    degree: int
    pivots: dict = field(default_factory=dict)

    @classmethod
    def build(cls, n: int, d: int) -> "DegreeSlice":
        sl = cls(n, d)
        gens = [_to_columns(quantum_elementary(i, n), n) for i in range(1, n + 1)]
        nonstandard = [c for c in _monomials_of_degree(n, d) if not is_standard(c[0])]
        for i in range(1, n + 1):
            if i > d:
                break
            for a, g in _monomials_of_degree(n, d - i):
                row = {}
                for (ea, eg), c in gens[i - 1].items():
                    row[(tuple(x + y for x, y in zip(a, ea)), tuple(x + y for x, y in zip(g, eg)))] = c
                sl._insert(row)
                if len(sl.pivots) == len(nonstandard):
                    break
            if len(sl.pivots) == len(nonstandard):
                break
        if len(sl.pivots) != len(nonstandard):
            raise FreenessError(
                f"degree {d} slice of the ideal has rank {len(sl.pivots)}, "
                f"expected {len(nonstandard)} non-standard pivots"
            )
        return sl

    def _eliminate(self, row: dict, only_nonstandard: bool) -> dict:
        row = dict(row)
        while row:
            lead = min(row, key=_col_key)
            if is_standard(lead[0]):
                break
            piv = self.pivots.get(lead)
            if piv is None:
                if only_nonstandard:
                    raise FreenessError(f"no pivot for non-standard column {lead} in degree {self.degree}")
                break
            f = row[lead]
            for col, c in piv.items():
                s = row.get(col, 0) - f * c
                if s:
                    row[col] = s
                else:
                    row.pop(col, None)
        return row

    def _insert(self, row: dict) -> None:
        row = self._eliminate(row, only_nonstandard=False)
        if not row:
            return
        lead = min(row, key=_col_key)
        if is_standard(lead[0]):
            raise FreenessError(f"ideal slice of degree {self.degree} meets the standard span")
        inv = 1 / row[lead]
        self.pivots[lead] = {c: v * inv for c, v in row.items()}

    def reduce(self, vec: dict) -> dict:
        """Remove every non-standard column; returns standard columns only."""
        return self._eliminate(vec, only_nonstandard=True)

    def to_json(self) -> dict:
        rows = []
        for lead in sorted(self.pivots, key=_col_key):
            rows.append({
                "pivot": [list(lead[0]), list(lead[1])],
                "entries": [
                    [list(c[0]), list(c[1]), str(v.numerator), str(v.denominator)]
                    for c, v in sorted(self.pivots[lead].items(), key=lambda kv: _col_key(kv[0]))
                ],
            })
        return {"schema": SCHEMA_VERSION, "n": self.n, "degree": self.degree, "rows": rows}

    @classmethod
    def from_json(cls, data: dict, n: int, d: int) -> "DegreeSlice":
        if data.get("schema") != SCHEMA_VERSION or data.get("n") != n or data.get("degree") != d:
            raise ValueError("cache record does not match")
        sl = cls(n, d)
        for r in data["rows"]:
            lead = (tuple(r["pivot"][0]), tuple(r["pivot"][1]))
            sl.pivots[lead] = {
                (tuple(a), tuple(g)): Fraction(int(num), int(den)) for a, g, num, den in r["entries"]
            }
        return sl


class QuotientElement:
    """Element of H_n[q]: coefficients (polynomials in q and t) on x^I, I below delta_n."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "QuantumRing", coeffs: dict | None = None):
        self.ring = ring
        self.coeffs = {I: c for I, c in (coeffs or {}).items() if not c.is_zero()}

    @property
    def n(self) -> int:
        return self.ring.n

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        out = dict(self.coeffs)
        for I, c in other.coeffs.items():
            out[I] = out[I] + c if I in out else c
        return QuotientElement(self.ring, out)

    def __neg__(self) -> "QuotientElement":
        return QuotientElement(self.ring, {I: -c for I, c in self.coeffs.items()})

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        return self + (-other)

    def scale(self, c) -> "QuotientElement":
        """Multiply by a scalar or by a polynomial in q and t."""
        return QuotientElement(self.ring, {I: v * c for I, v in self.coeffs.items()})

    def __mul__(self, other) -> "QuotientElement":
        if isinstance(other, QuotientElement):
            return self.ring.multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if isinstance(other, QuotientElement):
            return self.ring.n == other.ring.n and self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def truncate_t(self, D: int) -> "QuotientElement":
        return QuotientElement(self.ring, {I: c.truncate_t(D) for I, c in self.coeffs.items()})

    def diff(self, v: Var) -> "QuotientElement":
        return QuotientElement(self.ring, {I: c.diff(v) for I, c in self.coeffs.items()})

    def map_coeffs(self, f) -> "QuotientElement":
        return QuotientElement(self.ring, {I: f(c) for I, c in self.coeffs.items()})

    def to_polynomial(self) -> Polynomial:
        return poly_sum(c * Polynomial.monomial(_x_monomial(I)) for I, c in self.coeffs.items())

    def schubert_coefficients(self) -> dict:
        return self.ring.schubert_expand(self)

    def residue(self) -> Polynomial:
        return self.ring.residue(self)

    def __repr__(self) -> str:
        return f"QuotientElement(n={self.n}, {self.to_polynomial()})"


class QuantumRing:
    """Normal forms, Schubert expansion, residue pairing and structure constants for one n."""

    def __init__(self, n: int, cache_dir: Path | str | None = None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.top_degree = n * (n - 1) // 2
        self.cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
        self.basis = monomial_basis(n)
        self.basis_index = {I: k for k, I in enumerate(self.basis)}
        self.perms = all_permutations(n)
        self.w0 = longest_element(n)
        self.table = schubert_table(n, self.cache_dir)
        self._slices: dict = {}
        self._nf: dict = {}
        self._xmul: dict = {}
        self._mult: dict = {}
        self._struct: dict = {}
        self._schubert_elems: dict = {}
        self._load_or_build_change_of_basis()

    # -- reduction ------------------------------------------------------

    def _slice_path(self, d: int) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"n{self.n}" / f"echelon_d{d}.json"

    def degree_slice(self, d: int) -> DegreeSlice:
        sl = self._slices.get(d)
        if sl is not None:
            return sl
        path = self._slice_path(d)
        if path is not None and path.exists():
            try:
                sl = DegreeSlice.from_json(json.loads(path.read_text()), self.n, d)
            except (ValueError, KeyError):
                sl = None
        if sl is None:
            sl = DegreeSlice.build(self.n, d)
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(json.dumps(sl.to_json(), sort_keys=True))
        self._slices[d] = sl
        return sl

    def _reduce_low(self, a: tuple) -> dict:
        """Normal form of x^a for |a| <= l(w0) + 1 via the echelon slice."""
        d = sum(a)
        red = self.degree_slice(d).reduce({(a, (0,) * (self.n - 1)): Fraction(1)})
        out: dict = {}
        for (I, g), c in red.items():
            out.setdefault(I, {})[_q_monomial(g)] = c
        return {I: Polynomial(t) for I, t in out.items()}

    def _times_x(self, k: int, I: tuple) -> dict:
        key = (k, I)
        hit = self._xmul.get(key)
        if hit is None:
            a = tuple(e + (1 if j == k else 0) for j, e in enumerate(I))
            hit = {a: ONE} if is_standard(a) else self._reduce_low(a)
            self._xmul[key] = hit
        return hit

    def nf_monomial(self, a: tuple) -> dict:
        """Normal form of x^a as {I: polynomial in q}."""
        a = tuple(a)
        hit = self._nf.get(a)
        if hit is not None:
            return hit
        if is_standard(a):
            hit = {a: ONE}
        else:
            k = next(j for j, e in enumerate(a) if e)
            prev = self.nf_monomial(tuple(e - (1 if j == k else 0) for j, e in enumerate(a)))
            acc: dict = {}
            for I, c in prev.items():
                for J, cj in self._times_x(k, I).items():
                    acc[J] = acc[J] + c * cj if J in acc else c * cj
            hit = {I: c for I, c in acc.items() if not c.is_zero()}
        self._nf[a] = hit
        return hit

    def normal_form(self, f) -> QuotientElement:
        """The unique representative of f in H_n[q] (t-variables ride along as scalars)."""
        if isinstance(f, QuotientElement):
            return f
        if isinstance(f, (int, Fraction)):
            f = Polynomial.constant(f)
        bad = f.kinds() - {"x", "q", "t"}
        if bad:
            raise ValueError(f"normal_form accepts x, q, t variables only (got {sorted(bad)})")
        acc: dict = {}
        for xm, coeff in f.split(lambda v: v.kind == "x").items():
            a = [0] * self.n
            for v, e in xm:
                if v.index > self.n:
                    raise ValueError(f"{v} is outside x1..x{self.n}")
                a[v.index - 1] = e
            for I, c in self.nf_monomial(tuple(a)).items():
                term = coeff * c
                acc[I] = acc[I] + term if I in acc else term
        return QuotientElement(self, acc)

    def element(self, f) -> QuotientElement:
        return self.normal_form(f)

    def one(self) -> QuotientElement:
        return QuotientElement(self, {self.basis[0]: ONE})

    def zero(self) -> QuotientElement:
        return QuotientElement(self)

    def mult_entry(self, I: tuple, J: tuple) -> dict:
        key = (I, J) if I <= J else (J, I)
        hit = self._mult.get(key)
        if hit is None:
            hit = self.nf_monomial(tuple(a + b for a, b in zip(I, J)))
            self._mult[key] = hit
        return hit

    def multiply(self, a: QuotientElement, b: QuotientElement, D: int | None = None) -> QuotientElement:
        """Product in the quotient ring; with ``D`` the t-degree is truncated at D."""
        acc: dict = {}
        for I, ca in a.coeffs.items():
            for J, cb in b.coeffs.items():
                cab = ca * cb if D is None else mul_trunc(ca, cb, D)
                if cab.is_zero():
                    continue
                for K, ck in self.mult_entry(I, J).items():
                    term = cab * ck if D is None else mul_trunc(cab, ck, D)
                    acc[K] = acc[K] + term if K in acc else term
        return QuotientElement(self, acc)

    # -- Schubert basis -------------------------------------------------

    def schubert(self, w: Permutation) -> Polynomial:
        return self.table.quantum[Permutation(w)]

    def schubert_element(self, w: Permutation) -> QuotientElement:
        w = Permutation(w)
        hit = self._schubert_elems.get(w)
        if hit is None:
            hit = self.normal_form(self.schubert(w))
            self._schubert_elems[w] = hit
        return hit

    def _load_or_build_change_of_basis(self) -> None:
        path = self.cache_dir / f"n{self.n}" / "change_of_basis.json" if self.cache_dir else None
        if path is not None and path.exists():
            try:
                data = json.loads(path.read_text())
                if data.get("schema") == SCHEMA_VERSION and data.get("n") == self.n:
                    self.to_monomial = _matrix_from_json(data["to_monomial"], self.perms, self.basis)
                    self.to_schubert = _matrix_from_json(data["to_schubert"], self.basis, self.perms)
                    self.determinant = Polynomial.from_records(data["determinant"])
                    return
            except (ValueError, KeyError):
                pass
        self.to_monomial = {w: self.schubert_element(w).coeffs for w in self.perms}
        self.to_schubert, self.determinant = invert_unit_matrix(self.to_monomial, self.perms, self.basis)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps({
                "schema": SCHEMA_VERSION,
                "n": self.n,
                "to_monomial": _matrix_to_json(self.to_monomial, self.perms, self.basis),
                "to_schubert": _matrix_to_json(self.to_schubert, self.basis, self.perms),
                "determinant": self.determinant.to_records(),
            }, sort_keys=True))

    def schubert_expand(self, h) -> dict:
        """Coefficients a_w with h = sum_w a_w S~_w (zero coefficients omitted)."""
        if not isinstance(h, QuotientElement):
            h = self.normal_form(h)
        acc: dict = {}
        for I, c in h.coeffs.items():
            for w, b in self.to_schubert[I].items():
                term = c * b
                acc[w] = acc[w] + term if w in acc else term
        return {w: acc[w] for w in self.perms if w in acc and not acc[w].is_zero()}

    def from_schubert(self, coeffs: dict) -> QuotientElement:
        acc = self.zero()
        for w, c in coeffs.items():
            acc = acc + self.schubert_element(w).scale(c)
        return acc

    def residue(self, f) -> Polynomial:
        """Coefficient of S~_{w0} in the Schubert expansion of the normal form of f."""
        if not isinstance(f, QuotientElement):
            f = self.normal_form(f)
        return poly_sum(c * self.to_schubert[I].get(self.w0, ZERO) for I, c in f.coeffs.items())

    def pairing(self, f, g) -> Polynomial:
        """<f, g>_Q = residue(f g)."""
        f = self.normal_form(f)
        g = self.normal_form(g)
        return self.residue(self.multiply(f, g))

    def structure_constants(self, u: Permutation, v: Permutation) -> dict:
        key = (Permutation(u), Permutation(v))
        hit = self._struct.get(key)
        if hit is None:
            hit = self.schubert_expand(self.multiply(self.schubert_element(u), self.schubert_element(v)))
            self._struct[key] = hit
            self._struct[(key[1], key[0])] = hit
        return hit

    def structure_constant(self, u, v, w) -> Polynomial:
        return self.structure_constants(u, v).get(Permutation(w), ZERO)

    def gw_invariant(self, u, v, w, d) -> Fraction:
        """Coefficient of q^d (d an exponent tuple for q_1..q_{n-1}) in c~_{uv}^w."""
        c = self.structure_constant(u, v, w)
        return c.coefficient(_q_monomial(tuple(d)))

    def code_element(self, w: Permutation) -> QuotientElement:
        """x^{code(w)} as a quotient element."""
        return QuotientElement(self, {tuple(Permutation(w).code): ONE})


def invert_unit_matrix(rows: dict, row_keys, col_keys):
    """Invert a square matrix over Q[q] by Gauss-Jordan with constant pivots.

    ``rows[r][c]`` holds polynomial entries (missing means zero).  Returns
    ``(inverse, determinant)`` with ``inverse[c][r]`` such that
    ``sum_c inverse[c][r'] * rows[r][c] = delta``.  Raises if at some stage no
    entry is a nonzero constant (the matrix is then not unimodular-triangular).
    """
    row_keys = list(row_keys)
    col_keys = list(col_keys)
    if len(row_keys) != len(col_keys):
        raise ValueError("matrix is not square")
    work = {r: dict(rows[r]) for r in row_keys}
    aug = {r: {r: ONE} for r in row_keys}
    used_rows: dict = {}
    used_cols = set()
    for _ in range(len(row_keys)):
        choice = None
        for c in col_keys:
            if c in used_cols:
                continue
            for r in row_keys:
                if r in used_rows:
                    continue
                e = work[r].get(c)
                if e is not None and e.is_constant() and not e.is_zero():
                    choice = (r, c)
                    break
            if choice:
                break
        if choice is None:
            raise ValueError("no constant pivot available; matrix is not invertible over Q[q]")
        r, c = choice
        piv = work[r][c]
        for r2 in row_keys:
            if r2 == r:
                continue
            e = work[r2].get(c)
            if e is None or e.is_zero():
                continue
            f = e * (1 / piv.constant_term())
            for cc, val in work[r].items():
                s = work[r2].get(cc, ZERO) - f * val
                if s.is_zero():
                    work[r2].pop(cc, None)
                else:
                    work[r2][cc] = s
            for cc, val in aug[r].items():
                s = aug[r2].get(cc, ZERO) - f * val
                if s.is_zero():
                    aug[r2].pop(cc, None)
                else:
                    aug[r2][cc] = s
        used_rows[r] = c
        used_cols.add(c)
    # work is now a generalized permutation matrix: row r has its pivot at used_rows[r]
    det = Fraction(1)
    for r in row_keys:
        det *= work[r][used_rows[r]].constant_term()
    perm = [col_keys.index(used_rows[r]) for r in row_keys]
    det *= _perm_sign(perm)
    inverse: dict = {c: {} for c in col_keys}
    for r in row_keys:
        c = used_rows[r]
        inv_p = 1 / work[r][c].constant_term()
        inverse[c] = {rr: v * inv_p for rr, v in aug[r].items() if not v.is_zero()}
    return inverse, Polynomial.constant(det)


def _perm_sign(perm: list[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _matrix_to_json(mat: dict, row_keys, col_keys) -> list:
    return [
        {"row": list(r), "entries": [{"col": list(c), "poly": mat[r][c].to_records()} for c in col_keys if c in mat[r]]}
        for r in row_keys
    ]


def _matrix_from_json(data: list, row_keys, col_keys) -> dict:
    rows = {tuple(rec["row"]): {tuple(e["col"]): Polynomial.from_records(e["poly"]) for e in rec["entries"]} for rec in data}
    out = {}
    row_lookup = {tuple(r): r for r in row_keys}
    col_lookup = {tuple(c): c for c in col_keys}
    for r, entries in rows.items():
        out[row_lookup[r]] = {col_lookup[c]: p for c, p in entries.items()}
    if set(out) != set(row_lookup.values()):
        raise ValueError("change-of-basis cache is incomplete")
    return out


@lru_cache(maxsize=None)
def _ring(n: int, cache_dir: str | None) -> QuantumRing:
    return QuantumRing(n, cache_dir)


def quantum_ring(n: int, cache_dir: Path | str | None = None) -> QuantumRing:
    """Shared per-process ring for S_n."""
    return _ring(n, str(cache_dir) if cache_dir else None)


def code_basis_matrix(ring: QuantumRing) -> dict:
    """Rows S~_w, columns x^{code(u)} (u in S_n): the change-of-basis matrix."""
    return {w: {from_code(I): c for I, c in ring.to_monomial[w].items()} for w in ring.perms}


def _is_nonnegative_integral(p: Polynomial) -> bool:
    return all(c.denominator == 1 and c >= 0 for _, c in p.items())


def orthogonality_check(ring: QuantumRing) -> CheckResult:
    """<S~_u, S~_v>_Q = delta_{u, w0 v} over all pairs."""
    failures = []
    for u in ring.perms:
        su = ring.schubert_element(u)
        for v in ring.perms:
            val = ring.residue(ring.multiply(su, ring.schubert_element(v)))
            if val != (1 if u == ring.w0.compose(v) else 0):
                failures.append({"u": list(u), "v": list(v), "value": str(val)})
    return tally("schubert_orthogonality", None, failures, len(ring.perms) ** 2)


def determinant_check(ring: QuantumRing) -> CheckResult:
    """det of the S~_w -> x^{code(u)} matrix is +-1, recomputed independently with sympy."""
    import sympy

    n = ring.n
    qs = sympy.symbols(f"q1:{n}")
    mat = code_basis_matrix(ring)

    def to_sympy(p: Polynomial):
        expr = sympy.Integer(0)
        for mono, c in p.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for v, e in mono:
                term *= qs[v.index - 1] ** e
            expr += term
        return expr

    M = sympy.Matrix([[to_sympy(mat[w].get(u, ZERO)) for u in ring.perms] for w in ring.perms])
    det = sympy.expand(M.det(method="berkowitz"))
    failures = []
    if det not in (1, -1) or ring.determinant not in (Polynomial.constant(1), Polynomial.constant(-1)):
        failures.append({"sympy": str(det), "elimination": str(ring.determinant)})
    return tally("change_of_basis_unimodular", None, failures, 1, note=f"det = {det}")


def structure_constant_checks(ring: QuantumRing) -> list[CheckResult]:
    """Integrality and nonnegativity of c~_{uv}^w; their q = 0 part against d_w(S_u S_v)|_{x=0}."""
    from .schubert import classical_schubert_direct, divided_difference_perm, specialize_q

    positive, classical = [], []
    count = 0
    for u in ring.perms:
        for v in ring.perms:
            consts = ring.structure_constants(u, v)
            prod = classical_schubert_direct(u) * classical_schubert_direct(v)
            for w in ring.perms:
                count += 1
                c = consts.get(w, ZERO)
                if not _is_nonnegative_integral(c) or any(var.kind != "q" for var in c.variables()):
                    positive.append({"u": list(u), "v": list(v), "w": list(w), "value": str(c)})
                if w.length == u.length + v.length:
                    expected = divided_difference_perm(w, prod).constant_term()
                else:
                    expected = 0
                if specialize_q(c) != expected:
                    classical.append({"u": list(u), "v": list(v), "w": list(w), "value": str(c)})
    return [
        tally("structure_constants_nonnegative_integral", None, positive, count),
        tally("structure_constants_classical_limit", None, classical, count),
    ]


def ring_checks(ring: QuantumRing, with_determinant: bool = True) -> list[CheckResult]:
    out = [orthogonality_check(ring)]
    if with_determinant:
        out.append(determinant_check(ring))
    out.extend(structure_constant_checks(ring))
    return out
