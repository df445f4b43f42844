"""Gram-Schmidt vectors X_w^t for the pairing <f, g>_t = <f g K> and the Lax pair.

All coefficients are exact :class:`RationalFunction` values built from the
Gram matrix of the truncated kernel; nothing is truncated along the way.
Identities that use dK/dt_w = [S~_w K] carry an O(t^D) defect coming from the
truncation of K and are compared on cross-multiplied numerators up to t-degree
D - 1.  The remaining identities (L_w F symmetric, the Lax equation, commuting
L_w) are pure algebra and hold at every degree; they are still reported at
the degree bound the check was asked for.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exact_algebra import ONE, ZERO, Polynomial, RationalFunction, Var, t_var
from .permutations import Permutation, from_code
from .potential import Kernel, TSeries, build_kernel
from .quotient_ring import QuotientElement
from .report import TIMEOUT, BudgetExceeded, CheckResult, Deadline, tally, time_limit

RF_ZERO = RationalFunction(ZERO)
RF_ONE = RationalFunction(ONE)
LAX_CHECKS = ("pairing_product_rule", "gram_schmidt_orthogonality", "lax_equation",
              "lax_L_symmetrizable", "lax_M_matrix_identity", "lax_L_commute")


class GramSchmidtError(ArithmeticError):
    """A Gram-Schmidt norm vanished identically."""


def pairing_K(kernel: Kernel, f: QuotientElement, g: QuotientElement) -> TSeries:
    """<f, g>_t = residue(f g K) for polynomial-coefficient elements."""
    ring = kernel.ring
    return TSeries(ring.residue(ring.multiply(ring.multiply(f, g), kernel.element, kernel.D)), kernel.D)


def _add_into(acc: dict, key, val: RationalFunction) -> None:
    acc[key] = acc[key] + val if key in acc else val


@dataclass
class GSBasis:
    """Orthogonal vectors X_w^t, stored over the monomial basis (lower unitriangular)."""

    kernel: Kernel
    monomials: list
    perms: list
    gram: dict
    vectors: list = field(default_factory=list)
    norms: list = field(default_factory=list)

    @property
    def ring(self):
        return self.kernel.ring

    @property
    def D(self) -> int:
        return self.kernel.D

    def index_of(self, w: Permutation) -> int:
        return self.perms.index(Permutation(w))

    def pair(self, a: dict, b: dict) -> RationalFunction:
        """<a, b>_t for vectors {I: RationalFunction}."""
        acc = RF_ZERO
        for I, ca in a.items():
            inner = RF_ZERO
            for J, cb in b.items():
                g = self.gram[(I, J)]
                if not g.is_zero():
                    inner = inner + cb * g
            if not inner.is_zero():
                acc = acc + ca * inner
        return acc

    def solve(self, vec: dict) -> list:
        """Coordinates of a monomial-basis vector in the X basis (back substitution)."""
        vec = dict(vec)
        coords = [RF_ZERO] * len(self.monomials)
        for k in range(len(self.monomials) - 1, -1, -1):
            a = vec.get(self.monomials[k])
            if a is None or a.is_zero():
                continue
            coords[k] = a
            for I, c in self.vectors[k].items():
                _add_into(vec, I, -(a * c))
        return coords

    def multiply_schubert(self, w: Permutation, vec: dict) -> dict:
        """S~_w * vec in the quotient ring, as a monomial-basis vector."""
        ring = self.ring
        sw = ring.schubert_element(w)
        out: dict = {}
        for I, c in vec.items():
            for J, s in sw.coeffs.items():
                for K_, e in ring.mult_entry(I, J).items():
                    _add_into(out, K_, c * (s * e))
        return out

    def derivative(self, w: Permutation, vec: dict) -> dict:
        v = t_var(w)
        return {I: c.derivative(v) for I, c in vec.items()}


def gram_schmidt(kernel: Kernel) -> GSBasis:
    """Orthogonalize x^I (I below delta_n, ascending lex) for <f, g>_t = <f g K>."""
    ring = kernel.ring
    monomials = list(ring.basis)
    gram = {}
    for a, I in enumerate(monomials):
        for J in monomials[a:]:
            prod = QuotientElement(ring, ring.mult_entry(I, J))
            val = ring.residue(ring.multiply(prod, kernel.element, kernel.D))
            gram[(I, J)] = gram[(J, I)] = val
    basis = GSBasis(kernel, monomials, [from_code(I) for I in monomials], gram)
    for k, I in enumerate(monomials):
        vec = {I: RF_ONE}
        x_I = {I: RF_ONE}
        for j in range(k):
            proj = basis.pair(x_I, basis.vectors[j]) / basis.norms[j]
            if proj.is_zero():
                continue
            for J, c in basis.vectors[j].items():
                _add_into(vec, J, -(proj * c))
        vec = {J: c for J, c in vec.items() if not c.is_zero()}
        norm = basis.pair(vec, vec)
        if norm.is_zero():
            raise GramSchmidtError(f"<X, X>_t vanishes for the vector led by x^{I}")
        basis.vectors.append(vec)
        basis.norms.append(norm)
    return basis


@dataclass
class LaxMatrices:
    """L_w (multiplication by S~_w) and M_w (d/dt_w) in the X basis, plus diag(F_v)."""

    basis: GSBasis
    L: dict = field(default_factory=dict)
    M: dict = field(default_factory=dict)

    @property
    def norms(self) -> list:
        return self.basis.norms

    def to_json(self) -> dict:
        def mat(m):
            return [[e.to_record() for e in row] for row in m]
        return {
            "basis_order": [list(w) for w in self.basis.perms],
            "norms": [f.to_record() for f in self.norms],
            "L": {str(w): mat(m) for w, m in sorted(self.L.items())},
            "M": {str(w): mat(m) for w, m in sorted(self.M.items())},
        }


def lax_matrix_L(basis: GSBasis, w: Permutation) -> list:
    """(L_w)_{uv} = coefficient of X_v in S~_w X_u."""
    return [basis.solve(basis.multiply_schubert(w, X)) for X in basis.vectors]


def lax_matrix_M(basis: GSBasis, w: Permutation) -> list:
    """(M_w)_{uv} = coefficient of X_v in dX_u/dt_w."""
    return [basis.solve(basis.derivative(w, X)) for X in basis.vectors]


def lax_matrices(basis: GSBasis, ws=None, support=None) -> LaxMatrices:
    ws = list(ws if ws is not None else basis.ring.perms)
    support = list(support if support is not None else basis.kernel.support)
    out = LaxMatrices(basis)
    for w in ws:
        out.L[Permutation(w)] = lax_matrix_L(basis, w)
    for w in support:
        out.M[Permutation(w)] = lax_matrix_M(basis, w)
    return out


def matmul(A: list, B: list) -> list:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = RF_ZERO
            for k in range(n):
                if A[i][k].is_zero() or B[k][j].is_zero():
                    continue
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _entries_equal(A: list, B: list, bound: int) -> list:
    bad = []
    for i, (ra, rb) in enumerate(zip(A, B)):
        for j, (a, b) in enumerate(zip(ra, rb)):
            if not a.equal_mod_t(b, bound):
                bad.append([i, j])
    return bad


def pairing_product_rule_check(kernel: Kernel, trials: int = 20, seed: int = 0) -> CheckResult:
    """d/dt_w <f, g>_t = <df, g>_t + <f, dg>_t + <S~_w f, g>_t on random f, g, w."""
    ring, D = kernel.ring, kernel.D
    rng = random.Random(seed)
    t_vars = [t_var(w) for w in kernel.support]
    q_vars = [Var("q", i) for i in range(1, ring.n)]

    def random_coeff():
        p = ZERO
        for _ in range(rng.randint(1, 3)):
            mono = [(rng.choice(t_vars), rng.randint(0, 2))]
            if q_vars and rng.random() < 0.5:
                mono.append((rng.choice(q_vars), 1))
            p = p + Polynomial.monomial(mono, rng.randint(-3, 3) or 1)
        return p

    def random_element():
        coeffs = {}
        for I in rng.sample(ring.basis, rng.randint(1, len(ring.basis))):
            coeffs[I] = random_coeff()
        return QuotientElement(ring, coeffs)

    failures = []
    for trial in range(trials):
        f, g = random_element(), random_element()
        w = rng.choice(list(kernel.support))
        v = t_var(w)
        lhs = pairing_K(kernel, f, g).poly.diff(v)
        rhs = (pairing_K(kernel, f.diff(v), g).poly + pairing_K(kernel, f, g.diff(v)).poly
               + pairing_K(kernel, ring.multiply(ring.schubert_element(w), f), g).poly)
        if not (lhs - rhs).truncate_t(D - 1).is_zero():
            failures.append({"trial": trial, "w": list(w)})
    return tally("pairing_product_rule", D - 1, failures, trials)


def lax_checks(basis: GSBasis, mats: LaxMatrices, deadline: Deadline | None = None) -> list[CheckResult]:
    D = basis.D
    N = len(basis.vectors)
    Fd = [[basis.norms[i] if i == j else RF_ZERO for j in range(N)] for i in range(N)]
    results = []

    failures = []
    for i in range(N):
        for j in range(i):
            if not basis.pair(basis.vectors[i], basis.vectors[j]).equal_mod_t(RF_ZERO, D):
                failures.append([list(basis.perms[i]), list(basis.perms[j])])
    results.append(tally("gram_schmidt_orthogonality", D, failures, N * (N - 1) // 2))

    # dL_w/dt_u = M_u L_w - L_w M_u
    failures, count, incomplete = [], 0, False
    for u, Mu in mats.M.items():
        for w, Lw in mats.L.items():
            if deadline is not None and deadline.expired():
                incomplete = True
                break
            count += 1
            v = t_var(u)
            dL = [[e.derivative(v) for e in row] for row in Lw]
            ML, LM = matmul(Mu, Lw), matmul(Lw, Mu)
            rhs = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(ML, LM)]
            bad = _entries_equal(dL, rhs, D - 1)
            if bad:
                failures.append({"u": list(u), "w": list(w), "entries": bad})
    results.append(tally("lax_equation", D - 1, failures, count, incomplete))

    # L_w diag(F) symmetric
    failures = []
    for w, Lw in mats.L.items():
        Lt = matmul(Lw, Fd)
        bad = _entries_equal(Lt, [list(r) for r in zip(*Lt)], D)
        if bad:
            failures.append({"w": list(w), "entries": bad})
    results.append(tally("lax_L_symmetrizable", D, failures, len(mats.L)))

    # M_w F + (M_w F)^T + L_w F = dF/dt_w
    failures = []
    for w, Mw in mats.M.items():
        v = t_var(w)
        Mt = matmul(Mw, Fd)
        Lt = matmul(mats.L[w], Fd)
        lhs = [[Mt[i][j] + Mt[j][i] + Lt[i][j] for j in range(N)] for i in range(N)]
        rhs = [[basis.norms[i].derivative(v) if i == j else RF_ZERO for j in range(N)] for i in range(N)]
        bad = _entries_equal(lhs, rhs, D - 1)
        if bad:
            failures.append({"w": list(w), "entries": bad})
    results.append(tally("lax_M_matrix_identity", D - 1, failures, len(mats.M)))

    # [L_u, L_w] = 0
    failures, count = [], 0
    keys = list(mats.L)
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            count += 1
            A, B = mats.L[keys[a]], mats.L[keys[b]]
            bad = _entries_equal(matmul(A, B), matmul(B, A), D)
            if bad:
                failures.append({"u": list(keys[a]), "w": list(keys[b]), "entries": bad})
    results.append(tally("lax_L_commute", D, failures, count))
    return results


def run_lax(n: int, D: int, support=None, cache_dir=None, trials: int = 20,
            deadline: Deadline | None = None) -> tuple[LaxMatrices | None, list[CheckResult]]:
    kernel = build_kernel(n, D, support, cache_dir)
    try:
        with time_limit(deadline):
            basis = gram_schmidt(kernel)
            mats = lax_matrices(basis)
            results = [pairing_product_rule_check(kernel, trials)] + lax_checks(basis, mats, deadline)
    except BudgetExceeded:
        return None, [CheckResult(name, TIMEOUT, None, 0, [], "time budget exhausted") for name in LAX_CHECKS]
    return mats, results

