"""Kernel K(x, t), the toy Gromov-Witten potential F(t) and its identities.

Every series is a polynomial in the t-variables truncated at total degree D.
A quantity obtained by k formal t-derivatives of a degree-D truncation is exact
only up to t-degree D - k; :class:`TSeries` records that bound as its
``order`` and every check reports the degree at which it was certified.

Indexing convention: K = sum_w phi_w(t) S~_{w0 w}(x) with w0 w = w0.compose(w).
With this reading phi_w = dF/dt_w = <S~_w K> holds (the pairing is
<S~_u, S~_v> = delta_{u, w0 v}).

When the t-support is a proper subset of S_n, F does not depend on t_w for
unsupported w.  Identities summing over all tau then use the residue forms
phi_tau = <S~_tau K>, dK/dt_tau -> [S~_tau K] and
Lambda_{u w tau} = <S~_u S~_w S~_tau K> for the missing derivatives.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_algebra import ONE, ZERO, Polynomial, T, Var, mul_trunc, poly_sum, t_var
from .permutations import Permutation, all_permutations, identity, simple
from .quotient_ring import QuantumRing, QuotientElement, quantum_ring
from .report import CheckResult, Deadline, skipped, tally


class TSeries:
    """Polynomial in t (coefficients in Q[q]) known exactly up to t-degree ``order``."""

    __slots__ = ("order", "poly")

    def __init__(self, poly: Polynomial, order: int):
        self.order = order
        self.poly = poly.truncate_t(order) if order >= 0 else ZERO

    def __add__(self, other: "TSeries") -> "TSeries":
        return TSeries(self.poly + other.poly, min(self.order, other.order))

    def __sub__(self, other: "TSeries") -> "TSeries":
        return TSeries(self.poly - other.poly, min(self.order, other.order))

    def __neg__(self) -> "TSeries":
        return TSeries(-self.poly, self.order)

    def __mul__(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            order = min(self.order, other.order)
            return TSeries(mul_trunc(self.poly, other.poly, order), order)
        return TSeries(self.poly * other, self.order)

    __rmul__ = __mul__

    def diff(self, v: Var) -> "TSeries":
        return TSeries(self.poly.diff(v), self.order - 1)

    def at_zero(self) -> Polynomial:
        """Constant term in t (a polynomial in q)."""
        return self.poly.t_homogeneous_part(0)

    def equals(self, other, degree: int | None = None) -> bool:
        if not isinstance(other, TSeries):
            other = TSeries(other if isinstance(other, Polynomial) else Polynomial.constant(other), self.order)
        if degree is None:
            degree = min(self.order, other.order)
        return (self.poly - other.poly).truncate_t(degree).is_zero()

    def to_json(self) -> dict:
        return {"order": self.order, "terms": self.poly.to_records()}

    def __repr__(self) -> str:
        return f"TSeries({self.poly}, order={self.order})"


def resolve_support(n: int, support=None) -> tuple:
    """Normalize a support argument: None/'all', ('length', k), or an iterable of permutations."""
    perms = all_permutations(n)
    if support is None or support == "all":
        return perms
    if isinstance(support, tuple) and len(support) == 2 and support[0] == "length":
        chosen = tuple(w for w in perms if w.length <= support[1])
    else:
        wanted = {Permutation(w) for w in support}
        for w in wanted:
            if len(w) != n:
                raise ValueError(f"{w} is not in S_{n}")
        chosen = tuple(w for w in perms if w in wanted)
    if not chosen:
        raise ValueError("t-support must be nonempty")
    return chosen


@dataclass
class Kernel:
    """K(x, t) = [exp(sum_{w in support} t_w S~_w)] truncated at t-degree D."""

    ring: QuantumRing
    D: int
    support: tuple
    element: QuotientElement

    @property
    def n(self) -> int:
        return self.ring.n

    def schubert_coefficients(self) -> dict:
        return self.ring.schubert_expand(self.element)

    def phi(self, w: Permutation) -> TSeries:
        """Coefficient of S~_{w0 w} in K."""
        w0w = self.ring.w0.compose(Permutation(w))
        return TSeries(self.schubert_coefficients().get(w0w, ZERO), self.D)

    def F(self) -> TSeries:
        return TSeries(self.ring.residue(self.element), self.D)

    def at_zero(self) -> QuotientElement:
        return self.element.map_coeffs(lambda c: c.t_homogeneous_part(0))


def build_kernel(n: int, D: int, support=None, cache_dir=None) -> Kernel:
    if D < 0:
        raise ValueError("truncation order must be nonnegative")
    ring = quantum_ring(n, cache_dir)
    support = resolve_support(n, support)
    E = ring.zero()
    for w in support:
        E = E + ring.schubert_element(w).scale(T(w))
    K = ring.one()
    term = ring.one()
    for k in range(1, D + 1):
        term = ring.multiply(term, E, D).scale(Fraction(1, k))
        K = K + term
    return Kernel(ring, D, support, K)


def potential_F(kernel: Kernel) -> TSeries:
    return kernel.F()


def kernel_inverse_power(kernel: Kernel, m: int) -> QuotientElement:
    """K^{-m} in the quotient ring, exact mod t-degree D.

    K = 1 + N with N of t-order >= 1, so K^{-1} = sum_{j<=D} (-N)^j terminates.
    """
    ring, D = kernel.ring, kernel.D
    if m == 0:
        return ring.one()
    minus_N = (ring.one() - kernel.element).truncate_t(D)
    inv = ring.one()
    power = ring.one()
    for _ in range(D):
        power = ring.multiply(power, minus_N, D)
        if power.is_zero():
            break
        inv = inv + power
    out = inv
    for _ in range(m - 1):
        out = ring.multiply(out, inv, D)
    return out


def power_kernel(kernel: Kernel, m: int) -> QuotientElement:
    out = kernel.ring.one()
    for _ in range(m):
        out = kernel.ring.multiply(out, kernel.element, kernel.D)
    return out


@dataclass
class PotentialBundle:
    """F, its derivatives phi, alpha, Lambda and the t-deformed Schubert polynomials.

    Everything is computed lazily and memoized.
    """

    kernel: Kernel
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def ring(self) -> QuantumRing:
        return self.kernel.ring

    @property
    def D(self) -> int:
        return self.kernel.D

    @property
    def support(self) -> tuple:
        return self.kernel.support

    def supported(self, w) -> bool:
        return Permutation(w) in self.kernel.support

    def _memo(self, key, fn):
        hit = self._cache.get(key)
        if hit is None:
            hit = fn()
            self._cache[key] = hit
        return hit

    @property
    def F(self) -> TSeries:
        return self._memo("F", self.kernel.F)

    @property
    def kernel_coefficients(self) -> dict:
        return self._memo("Kcoef", self.kernel.schubert_coefficients)

    def phi_K(self, w) -> TSeries:
        """phi_w read off K (exact to degree D)."""
        w0w = self.ring.w0.compose(Permutation(w))
        return TSeries(self.kernel_coefficients.get(w0w, ZERO), self.D)

    def dF(self, *indices) -> TSeries:
        """Iterated t-derivative of F; every index must be supported."""
        key = ("dF",) + tuple(sorted(tuple(i) for i in indices))
        if key in self._cache:
            return self._cache[key]
        s = self.F
        for w in sorted(tuple(i) for i in indices):
            if not self.supported(w):
                raise ValueError(f"t_{list(w)} is not in the t-support")
            s = s.diff(t_var(w))
        self._cache[key] = s
        return s

    def phi(self, w) -> TSeries:
        """dF/dt_w when t_w is supported, otherwise the residue <S~_w K>."""
        return self.dF(w) if self.supported(w) else self.phi_K(w)

    def alpha(self, u, w) -> TSeries:
        """Coefficient of S~_{w0 u} in S~_w^t (exact to degree D)."""
        w0u = self.ring.w0.compose(Permutation(u))
        return TSeries(self.t_schubert_coefficients(w).get(w0u, ZERO), self.D)

    def t_schubert(self, w) -> QuotientElement:
        """S~_w^t = [K S~_w]."""
        w = Permutation(w)
        return self._memo(("St", w), lambda: self.ring.multiply(self.kernel.element, self.ring.schubert_element(w), self.D))

    def t_schubert_coefficients(self, w) -> dict:
        w = Permutation(w)
        return self._memo(("Stc", w), lambda: self.ring.schubert_expand(self.t_schubert(w)))

    def product_with_kernel(self, u, w) -> QuotientElement:
        """[S~_u S~_w K]."""
        u, w = sorted((Permutation(u), Permutation(w)))
        return self._memo(("SSK", u, w), lambda: self.ring.multiply(
            self.ring.multiply(self.ring.schubert_element(u), self.ring.schubert_element(w)),
            self.kernel.element, self.D))

    def three_point(self, u, w, tau) -> TSeries:
        """<S~_u S~_w S~_tau K>, exact to degree D."""
        u, w, tau = sorted((Permutation(u), Permutation(w), Permutation(tau)))
        coeffs = self._memo(("SSKc", u, w), lambda: self.ring.schubert_expand(self.product_with_kernel(u, w)))
        return TSeries(coeffs.get(self.ring.w0.compose(tau), ZERO), self.D)

    def Lambda(self, u, w, tau) -> TSeries:
        """Third derivative of F (residue form for unsupported indices)."""
        if all(self.supported(i) for i in (u, w, tau)):
            return self.dF(u, w, tau)
        return self.three_point(u, w, tau)

    def derivative_of_kernel(self, w) -> QuotientElement:
        if self.supported(w):
            return self.kernel.element.diff(t_var(w))
        return self.t_schubert(w)


def potential_derivatives(b: PotentialBundle, order: int, indices) -> TSeries:
    if order > b.D:
        raise ValueError(f"derivative order {order} exceeds truncation D={b.D}")
    if len(indices) != order:
        raise ValueError("need one index per derivative")
    return b.dF(*indices)


def t_schubert(b: PotentialBundle, w) -> QuotientElement:
    return b.t_schubert(w)


def pairing_K2(b: PotentialBundle, f: QuotientElement, g: QuotientElement) -> TSeries:
    """<f, g>_t = <f g K^{-2}>, the pairing making S~^t orthogonal."""
    inv2 = b._memo("Kinv2", lambda: kernel_inverse_power(b.kernel, 2))
    ring = b.ring
    return TSeries(ring.residue(ring.multiply(ring.multiply(f, g, b.D), inv2, b.D)), b.D)


def _qe_equal(a: QuotientElement, b: QuotientElement, degree: int) -> bool:
    return (a - b).truncate_t(degree).is_zero()


def _pstr(w) -> str:
    return "[" + ",".join(map(str, w)) + "]"


# -- WDVV -------------------------------------------------------------------

def _tkey(a, b, c) -> tuple:
    return tuple(sorted((a, b, c)))


def _contract(args):
    # M[a, b, c, d] = sum_v L_{a b v} L_{w0 v, c, d}; v runs over all of S_n
    pairs, lam, support, perms, w0_of, degree = args
    out = {}
    for a, b in pairs:
        for c, d in itertools.product(support, repeat=2):
            acc = ZERO
            for v in perms:
                acc = acc + mul_trunc(lam[_tkey(a, b, v)], lam[_tkey(w0_of[v], c, d)], degree)
            out[(a, b, c, d)] = acc
    return out


def wdvv_check(b: PotentialBundle, degree: int | None = None, jobs: int = 1,
               deadline: Deadline | None = None) -> CheckResult:
    """Sum_v L_{w1 w2 v} L_{w0v w3 w4} = Sum_v L_{w2 w3 v} L_{w0v w1 w4}, all supported w_i."""
    name = "wdvv"
    if degree is None:
        degree = b.D - 3
    if degree < 0 or degree > b.D - 3:
        return skipped(name, f"needs 0 <= D' <= D - 3 (D={b.D})")
    perms = list(all_permutations(b.ring.n))
    support = list(b.support)
    w0_of = {v: b.ring.w0.compose(v) for v in perms}
    lam = {}
    for trip in itertools.combinations_with_replacement(perms, 3):
        lam[_tkey(*trip)] = b.Lambda(*trip).poly.truncate_t(degree)
    pairs = list(itertools.product(support, repeat=2))
    table: dict = {}
    if jobs > 1 and len(pairs) > 1:
        chunks = [pairs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_contract, [(c, lam, support, perms, w0_of, degree) for c in chunks]):
                table.update(part)
    else:
        table = _contract((pairs, lam, support, perms, w0_of, degree))
    failures = []
    count = 0
    incomplete = False
    for w1, w2, w3, w4 in itertools.product(support, repeat=4):
        if deadline is not None and deadline.expired():
            incomplete = True
            break
        diff = table[(w1, w2, w3, w4)] - table[(w2, w3, w1, w4)]
        count += 1
        if not diff.is_zero():
            failures.append({"quadruple": [list(w) for w in (w1, w2, w3, w4)], "residual": str(diff)})
    return tally(name, degree, failures, count, incomplete)


# -- derivative identities ----------------------------------------------------

def pde_checks(b: PotentialBundle, deadline: Deadline | None = None) -> list[CheckResult]:
    """Identities for derivatives of F, K and S~^t, each certified at D minus the consumed order."""
    ring, D = b.ring, b.D
    perms = ring.perms
    w0 = ring.w0
    sup = b.support
    results = []
    if D < 2:
        return [skipped("pde_checks", "needs D >= 2")]

    def scan(name, degree, items, test):
        failures, count, incomplete = [], 0, False
        for item in items:
            if deadline is not None and deadline.expired():
                incomplete = True
                break
            count += 1
            if not test(*item):
                failures.append([list(w) for w in item])
        results.append(tally(name, degree, failures, count, incomplete))

    # dF/dt_w = phi_w
    scan("first_derivative_is_phi", D - 1, [(w,) for w in sup],
         lambda w: b.dF(w).equals(b.phi_K(w), D - 1))
    # alpha_{u,w} = d2F/dt_u dt_w
    scan("second_derivative_is_alpha", D - 2, list(itertools.product(sup, repeat=2)),
         lambda u, w: b.alpha(u, w).equals(b.dF(u, w), D - 2))

    # alpha_{u,w} = sum_tau phi_tau c~_{w, w0 tau}^{w0 u}
    def relation(u, w):
        rhs = poly_sum(
            b.phi_K(tau).poly * ring.structure_constant(w, w0.compose(tau), w0.compose(u)) for tau in perms
        )
        return b.alpha(u, w).equals(TSeries(rhs, D), D)
    scan("alpha_structure_expansion", D, list(itertools.product(perms, repeat=2)), relation)

    # Delta_{u,w} F = 0
    def delta_F(u, w):
        rhs = poly_sum(
            b.phi(tau).poly * ring.structure_constant(w, w0.compose(tau), w0.compose(u)) for tau in perms
        )
        return b.dF(u, w).equals(TSeries(rhs, D - 1), D - 2)
    scan("delta_operator_annihilates_F", D - 2, list(itertools.product(sup, repeat=2)), delta_F)

    # dK/dt_w = S~_w^t
    scan("kernel_derivative_is_t_schubert", D - 1, [(w,) for w in sup],
         lambda w: _qe_equal(b.kernel.element.diff(t_var(w)), b.t_schubert(w), D - 1))

    if D >= 3:
        scan("third_derivative_is_three_point", D - 3, list(itertools.combinations_with_replacement(sup, 3)),
             lambda u, w, tau: b.dF(u, w, tau).equals(b.three_point(u, w, tau), D - 3))

        four_point = {}

        def fp(u, w, a, tau):
            # <S~_u S~_w S~_a S~_tau> = sum_beta c~_{uw}^beta c~_{a tau}^{w0 beta} (antidiagonal pairing)
            key = tuple(sorted((u, w, a, tau)))
            if key not in four_point:
                left = ring.structure_constants(key[0], key[1])
                right = ring.structure_constants(key[2], key[3])
                four_point[key] = poly_sum(c * right[w0.compose(beta)]
                                           for beta, c in left.items() if w0.compose(beta) in right)
            return four_point[key]

        def four_point_expansion(u, w, tau):
            rhs = poly_sum(b.phi(w0.compose(a)).poly * fp(u, w, a, tau) for a in perms)
            return b.Lambda(u, w, tau).equals(TSeries(rhs, D - 1), D - 3)
        scan("three_point_four_point_expansion", D - 3,
             list(itertools.combinations_with_replacement(perms, 3)), four_point_expansion)

        def circ_product(u, w):
            lhs = ring.multiply(b.t_schubert(u), b.t_schubert(w), D)
            rhs = ring.zero()
            for tau in perms:
                rhs = rhs + b.t_schubert(w0.compose(tau)).scale(b.Lambda(u, w, tau).poly)
            return _qe_equal(lhs, rhs.truncate_t(D), D - 3)
        scan("t_schubert_circ_product", D - 3, list(itertools.combinations_with_replacement(perms, 2)), circ_product)

        # same identity with the residue form of Lambda, which is exact to degree D
        def circ_product_residue(u, w):
            lhs = ring.multiply(b.t_schubert(u), b.t_schubert(w), D)
            rhs = ring.zero()
            for tau in perms:
                rhs = rhs + b.t_schubert(w0.compose(tau)).scale(b.three_point(u, w, tau).poly)
            return _qe_equal(lhs, rhs.truncate_t(D), D)
        scan("t_schubert_circ_product_full_degree", D,
             list(itertools.combinations_with_replacement(perms, 2)), circ_product_residue)

        scan("lambda_symmetry", D - 3, list(itertools.product(perms, repeat=3)),
             lambda u, w, tau: all(b.Lambda(*p).equals(b.Lambda(u, w, tau), D - 3)
                                   for p in itertools.permutations((u, w, tau))))

        def at_zero(u, w, tau):
            triple = ring.multiply(ring.multiply(ring.schubert_element(u), ring.schubert_element(w)),
                                   ring.schubert_element(tau))
            return b.Lambda(u, w, tau).at_zero() == ring.residue(triple)
        scan("three_point_at_zero_is_gw", 0, list(itertools.combinations_with_replacement(perms, 3)), at_zero)

        def positive(u, w, tau):
            c = b.Lambda(u, w, tau).at_zero()
            return all(v.denominator == 1 and v >= 0 for _, v in c.items())
        scan("lambda_at_zero_nonnegative", 0, list(itertools.combinations_with_replacement(perms, 3)), positive)
    else:
        results.append(skipped("third_derivative_is_three_point", "needs D >= 3"))

    # dS~_w^t/dt_u = sum_tau c~_{uw}^tau S~_tau^t
    def deformed_derivative(u, w):
        lhs = b.t_schubert(w).diff(t_var(u))
        rhs = ring.zero()
        for tau, c in ring.structure_constants(u, w).items():
            rhs = rhs + b.t_schubert(tau).scale(c)
        return _qe_equal(lhs, rhs, D - 1)
    scan("t_schubert_derivative_structure", D - 1, [(u, w) for u in sup for w in perms], deformed_derivative)

    # (d_u d_w - sum_tau c~_{uw}^tau d_tau) K = 0
    def kernel_system(u, w):
        lhs = b.kernel.element.diff(t_var(u)).diff(t_var(w))
        rhs = ring.zero()
        for tau, c in ring.structure_constants(u, w).items():
            rhs = rhs + b.derivative_of_kernel(tau).scale(c)
        return _qe_equal(lhs, rhs, D - 2)
    scan("kernel_linear_system", D - 2, list(itertools.product(sup, repeat=2)), kernel_system)

    # d_u S~_w^t = [S~_u S~_w K]
    scan("t_schubert_derivative_is_product", D - 1, [(u, w) for u in sup for w in perms],
         lambda u, w: _qe_equal(b.t_schubert(w).diff(t_var(u)), b.product_with_kernel(u, w), D - 1))

    if D >= 3:
        # nabla_u S~_w = sum_tau Lambda_{u w tau} S~_{w0 tau}
        def star_product(u, w):
            star = ring.zero()
            for tau in perms:
                star = star + ring.schubert_element(w0.compose(tau)).scale(b.Lambda(u, w, tau).poly)
            return _qe_equal(b.t_schubert(w).diff(t_var(u)), star, D - 3)
        scan("t_schubert_derivative_star_product", D - 3, [(u, w) for u in sup for w in perms], star_product)
    return results


def orthogonality_t_check(b: PotentialBundle, deadline: Deadline | None = None) -> CheckResult:
    """<S~_u^t, S~_w^t K^{-2}> = delta_{u, w0 w} mod t-degree D."""
    ring = b.ring
    failures, count, incomplete = [], 0, False
    for u in ring.perms:
        for w in ring.perms:
            if deadline is not None and deadline.expired():
                incomplete = True
                break
            count += 1
            val = pairing_K2(b, b.t_schubert(u), b.t_schubert(w))
            expected = ONE if u == ring.w0.compose(w) else ZERO
            if not val.equals(expected, b.D):
                failures.append({"u": list(u), "w": list(w), "value": str(val.poly)})
    return tally("t_schubert_orthogonality", b.D, failures, count, incomplete)


def km_conditions_check(b: PotentialBundle) -> list[CheckResult]:
    """Normalization, initial and degree conditions, all at t = 0."""
    ring = b.ring
    n = ring.n
    w0 = ring.w0
    perms = ring.perms
    if b.D < 3:
        return [skipped("km_conditions", "needs D >= 3")]
    e = identity(n)
    results = []

    failures = []
    for v in perms:
        for w in perms:
            val = b.Lambda(e, v, w).at_zero()
            expected = ONE if v == w0.compose(w) else ZERO
            if val != expected:
                failures.append({"v": list(v), "w": list(w), "value": str(val)})
    results.append(tally("km_normalization", 0, failures, len(perms) ** 2,
                         note="checked at t=0"))

    failures = []
    for k in range(1, n):
        s = simple(k, n)
        val = b.Lambda(s, s, w0).at_zero()
        if val != Polynomial.var(Var("q", k)):
            failures.append({"k": k, "value": str(val)})
    results.append(tally("km_initial_conditions", 0, failures, n - 1, note="checked at t=0"))

    failures = []
    count = 0
    top = w0.length
    for u, v, w in itertools.combinations_with_replacement(perms, 3):
        excess = u.length + v.length + w.length - top
        if excess < 0 or excess % 2:
            count += 1
            val = b.Lambda(u, v, w).at_zero()
            if not val.is_zero():
                failures.append({"triple": [list(u), list(v), list(w)], "value": str(val)})
    results.append(tally("km_degree_conditions", 0, failures, count,
                         note="graded form l(u)+l(v)+l(w)-l(w0) negative or odd; checked at t=0"))
    return results


def build_bundle(n: int, D: int, support=None, cache_dir=None) -> PotentialBundle:
    return PotentialBundle(build_kernel(n, D, support, cache_dir))

