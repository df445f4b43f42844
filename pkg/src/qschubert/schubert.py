"""Quantum elementary symmetric polynomials and (quantum, double) Schubert polynomials."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .exact_algebra import ONE, ZERO, Polynomial, Q, Var, X, Y, Z, mono_mul
from .permutations import Permutation, all_permutations, longest_element, reduced_word
from .report import CheckResult, tally

SCHEMA_VERSION = 1


def quantum_e_generating(k: int, t: Polynomial, n: int | None = None) -> Polynomial:
    """Delta_k(t | X_k) via the three-term recurrence of the tridiagonal determinant.

    Delta_k = (x_k + t) Delta_{k-1} + q_{k-1} Delta_{k-2}, Delta_0 = 1, Delta_{-1} = 0.
    """
    if k < 0 or (n is not None and k > n):
        raise ValueError(f"k={k} out of range")
    prev, cur = ZERO, ONE
    for j in range(1, k + 1):
        nxt = (X(j) + t) * cur
        if j >= 2:
            nxt = nxt + Q(j - 1) * prev
        prev, cur = cur, nxt
    return cur


@lru_cache(maxsize=None)
def _elementary_table(k: int) -> tuple:
    # e_i(X_j | q) for j <= k, by the recurrence read coefficientwise
    rows = [[ONE], [ONE, X(1)]]
    for j in range(2, k + 1):
        row = []
        for i in range(j + 1):
            e = rows[j - 1][i] if i <= j - 1 else ZERO
            if i >= 1:
                e = e + X(j) * rows[j - 1][i - 1]
            if i >= 2:
                e = e + Q(j - 1) * rows[j - 2][i - 2]
            row.append(e)
        rows.append(row)
    return tuple(tuple(r) for r in rows[: k + 1])


def quantum_elementary(i: int, k: int, n: int | None = None) -> Polynomial:
    """e_i(X_k | q): the coefficient of t^(k-i) in Delta_k(t | X_k)."""
    if not 0 <= i <= k or (n is not None and k > n):
        raise ValueError(f"e_{i}(X_{k}) out of range")
    if k == 0:
        return ONE
    return _elementary_table(k)[k][i]


def coefficient_in(p: Polynomial, v: Var, power: int) -> Polynomial:
    """Coefficient of v**power in p, as a polynomial in the remaining variables."""
    out = {}
    for m, c in p.items():
        d = dict(m)
        if d.get(v, 0) == power:
            d.pop(v, None)
            out[tuple(sorted(d.items()))] = c
    return Polynomial(out)


def divided_difference(i: int, p: Polynomial, alphabet: str = "x") -> Polynomial:
    """(p - s_i p) / (z_i - z_{i+1}) in the chosen alphabet, computed monomialwise."""
    if i < 1:
        raise ValueError(f"no divided difference d_{i}")
    a, b = Var(alphabet, i), Var(alphabet, i + 1)
    out: dict = {}
    for m, c in p.items():
        d = dict(m)
        ea, eb = d.pop(a, 0), d.pop(b, 0)
        if ea == eb:
            continue
        rest = tuple(sorted(d.items()))
        sign = 1
        if ea < eb:
            ea, eb, sign = eb, ea, -1
        # z_a^ea z_b^eb - z_a^eb z_b^ea = (z_a z_b)^eb (z_a^k - z_b^k), k = ea - eb
        k = ea - eb
        for j in range(k):
            pa, pb = eb + k - 1 - j, eb + j
            mono = tuple(sorted([(v, e) for v, e in ((a, pa), (b, pb)) if e]))
            nm = mono_mul(rest, mono)
            out[nm] = out.get(nm, 0) + sign * c
    return Polynomial({m: c for m, c in out.items() if c})


def divided_difference_word(word, p: Polynomial, alphabet: str = "x") -> Polynomial:
    """d_{i1} d_{i2} ... d_{il} p, applying d_{il} first."""
    for i in reversed(list(word)):
        p = divided_difference(i, p, alphabet)
        if p.is_zero():
            break
    return p


def divided_difference_perm(w: Permutation, p: Polynomial, alphabet: str = "x") -> Polynomial:
    return divided_difference_word(reduced_word(w), p, alphabet)


def top_double_schubert(n: int) -> Polynomial:
    """S~_{w0}(x, y) = prod_{i=1}^{n-1} Delta_i(y_{n-i} | X_i)."""
    p = ONE
    for i in range(1, n):
        p = p * quantum_e_generating(i, Y(n - i))
    return p


def quantum_double_schubert(w: Permutation) -> Polynomial:
    n = len(w)
    return divided_difference_perm(w.compose(longest_element(n)), top_double_schubert(n), "y")


def specialize_y(p: Polynomial) -> Polynomial:
    return p.set_zero(lambda v: v.kind == "y")


def specialize_q(p: Polynomial) -> Polynomial:
    return p.set_zero(lambda v: v.kind == "q")


def quantum_schubert(w: Permutation) -> Polynomial:
    return specialize_y(quantum_double_schubert(w))


def classical_schubert(w: Permutation) -> Polynomial:
    return specialize_q(quantum_schubert(w))


def staircase(n: int) -> Polynomial:
    """x^{delta_n} = x1^{n-1} x2^{n-2} ... x_{n-1}."""
    return Polynomial.monomial([(Var("x", i), n - i) for i in range(1, n)])


def classical_schubert_direct(w: Permutation) -> Polynomial:
    """d^{(x)}_{w^{-1} w0} applied to x^{delta_n}; independent of the quantum route."""
    n = len(w)
    return divided_difference_perm(w.inverse().compose(longest_element(n)), staircase(n), "x")


def tridiagonal_matrix(k: int, t):
    """The k x k matrix whose determinant is Delta_k, as nested lists of sympy expressions."""
    import sympy

    xs = sympy.symbols(f"x1:{k + 1}")
    qs = sympy.symbols(f"q1:{k}") if k > 1 else ()
    rows = []
    for i in range(k):
        row = [0] * k
        row[i] = xs[i] + t
        if i + 1 < k:
            row[i + 1] = qs[i]
        if i >= 1:
            row[i - 1] = -1
        rows.append(row)
    return sympy.Matrix(rows)


@dataclass
class SchubertTable:
    """Classical, quantum and quantum double Schubert polynomials for S_n."""

    n: int
    classical: dict = field(default_factory=dict)
    quantum: dict = field(default_factory=dict)
    double: dict = field(default_factory=dict)

    @classmethod
    def build(cls, n: int) -> "SchubertTable":
        table = cls(n)
        for w in all_permutations(n):
            d = quantum_double_schubert(w)
            table.double[w] = d
            table.quantum[w] = specialize_y(d)
            table.classical[w] = specialize_q(table.quantum[w])
        return table

    def to_json(self) -> dict:
        def dump(d):
            return [{"w": list(w), "poly": d[w].to_records()} for w in all_permutations(self.n)]

        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "classical": dump(self.classical),
            "quantum": dump(self.quantum),
            "double": dump(self.double),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SchubertTable":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError("schubert table schema mismatch")
        table = cls(int(data["n"]))
        for name in ("classical", "quantum", "double"):
            target = getattr(table, name)
            for rec in data[name]:
                target[Permutation(rec["w"])] = Polynomial.from_records(rec["poly"])
        return table


def default_cache_dir() -> Path | None:
    env = os.environ.get("SCHUBERT_CACHE_DIR")
    return Path(env) if env else None


_TABLES: dict = {}


def schubert_table(n: int, cache_dir: Path | str | None = None) -> SchubertTable:
    """Build (or load from ``cache_dir``) the Schubert table of S_n, memoized per process."""
    if n in _TABLES:
        return _TABLES[n]
    cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
    table = None
    path = cache_dir / f"schubert_n{n}.json" if cache_dir else None
    if path is not None and path.exists():
        try:
            data = json.loads(path.read_text())
            if int(data.get("n", -1)) == n:
                table = SchubertTable.from_json(data)
        except (ValueError, KeyError):
            table = None
    if table is None:
        table = SchubertTable.build(n)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(table.to_json(), sort_keys=True))
    _TABLES[n] = table
    return table


def delta_via_z(k: int) -> Polynomial:
    """Delta_k with the scratch variable z as the formal parameter."""
    return quantum_e_generating(k, Z)


def _from_sympy(expr, k: int) -> Polynomial:
    import sympy

    xs = sympy.symbols(f"x1:{k + 1}")
    qs = sympy.symbols(f"q1:{k}") if k > 1 else ()
    z = sympy.Symbol("z")
    gens = list(xs) + list(qs) + [z]
    names = [Var("x", i + 1) for i in range(len(xs))] + [Var("q", i + 1) for i in range(len(qs))] + [Var("z", 0)]
    out = ZERO
    for exps, c in sympy.Poly(sympy.expand(expr), *gens).terms():
        out = out + Polynomial.monomial(list(zip(names, exps)), Fraction(int(c.p), int(c.q)))
    return out


def determinant_delta(k: int) -> Polynomial:
    """Delta_k(z | X_k) as the expanded determinant of the tridiagonal matrix (sympy)."""
    import sympy

    return _from_sympy(tridiagonal_matrix(k, sympy.Symbol("z")).det(method="berkowitz"), k)


def delta_determinant_check(kmax: int = 4) -> CheckResult:
    failures = []
    for k in range(1, kmax + 1):
        if delta_via_z(k) != determinant_delta(k):
            failures.append({"k": k})
    return tally("delta_recurrence_matches_determinant", None, failures, kmax)


def classical_limit_check(n: int, cache_dir=None) -> CheckResult:
    """S~_w at q = 0 against d^{(x)}_{w^{-1} w0} x^delta, for every w in S_n."""
    table = schubert_table(n, cache_dir)
    failures = [list(w) for w in all_permutations(n)
                if specialize_q(table.quantum[w]) != classical_schubert_direct(w)]
    return tally(f"classical_limit_n{n}", None, failures, len(all_permutations(n)))
