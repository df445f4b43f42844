"""Acceptance criteria 1-12.  Every comparison is exact (tolerance zero).

Run with pytest (one PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""
import subprocess
import sys
from fractions import Fraction

import pytest

from qschubert.exact_algebra import Q, T
from qschubert.permutations import Permutation, all_permutations, identity, longest_element, simple
from qschubert.potential import build_bundle, km_conditions_check, orthogonality_t_check, pde_checks, wdvv_check
from qschubert.quotient_ring import (
    determinant_check, orthogonality_check, quantum_ring, structure_constant_checks,
)
from qschubert.lax import run_lax
from qschubert.report import PASS
from qschubert.schubert import classical_schubert_direct, delta_via_z, determinant_delta, specialize_q, quantum_schubert

RESULTS: dict = {}

TITLES = {
    1: "tridiagonal recurrence equals determinant expansion, k <= 4",
    2: "classical limit of quantum Schubert polynomials, n = 2, 3, 4",
    3: "orthogonality <S~_u, S~_v> = delta_{u, w0 v}, n = 2, 3",
    4: "change of basis {x^code(w)} <-> {S~_w} has determinant +-1, n <= 3",
    5: "S_3 structure constants: nonnegative integral, s1^2 rule, classical limit",
    6: "initial conditions d3F/dt_sk^2 dt_w0 at 0 = q_k, n = 2, 3",
    7: "n = 2 potential closed form mod t-degree 3",
    8: "WDVV residual zero mod t-degree 1: n = 2 (16), n = 3 (1296)",
    9: "derivative identities certified at D - consumed order, n <= 3, D = 3",
    10: "t-deformed orthogonality with K^-2 mod t-degree D, n <= 3, D = 2",
    11: "Lax suite n = 2, D = 4",
    12: "verify-all output is byte-identical across runs",
}


def record(k: int, ok: bool, detail: str = "") -> None:
    RESULTS[k] = (ok, detail)
    line = f"CRITERION {k:2d} {'PASS' if ok else 'FAIL'}: {TITLES[k]}" + (f" ({detail})" if detail else "")
    print(line)
    assert ok, line


def summary_lines() -> list[str]:
    out = []
    for k in sorted(TITLES):
        if k in RESULTS:
            ok, detail = RESULTS[k]
            status = "PASS" if ok else "FAIL"
        else:
            status, detail = "NOT RUN", ""
        out.append(f"CRITERION {k:2d} {status}: {TITLES[k]}" + (f" ({detail})" if detail else ""))
    return out


def test_criterion_01_delta_determinant():
    bad = [k for k in range(1, 5) if delta_via_z(k) != determinant_delta(k)]
    record(1, not bad, f"mismatch at k = {bad}" if bad else "k = 1..4")


def test_criterion_02_classical_limit():
    bad = [str(w) for n in (2, 3, 4) for w in all_permutations(n)
           if specialize_q(quantum_schubert(w)) != classical_schubert_direct(w)]
    record(2, not bad, f"{len(bad)} mismatches" if bad else "32 permutations")


def test_criterion_03_orthogonality():
    res = [orthogonality_check(quantum_ring(n)) for n in (2, 3)]
    ok = all(r.ok for r in res) and [r.items for r in res] == [4, 36]
    record(3, ok, "pairs checked: " + ", ".join(str(r.items) for r in res))


def test_criterion_04_determinant():
    res = [determinant_check(quantum_ring(n)) for n in (2, 3)]
    record(4, all(r.ok for r in res), "; ".join(r.note for r in res))


def test_criterion_05_structure_constants():
    ring = quantum_ring(3)
    checks = structure_constant_checks(ring)
    s1 = simple(1, 3)
    square = ring.structure_constants(s1, s1)
    rule = square == {Permutation([3, 1, 2]): Q(1) ** 0, identity(3): Q(1)}
    ok = all(r.ok for r in checks) and rule
    record(5, ok, f"{checks[0].items} constants; s1^2 = {{{', '.join(f'{w}: {c}' for w, c in square.items())}}}")


def test_criterion_06_initial_conditions():
    got = {}
    for n in (2, 3):
        b = build_bundle(n, 3)
        w0 = longest_element(n)
        for k in range(1, n):
            s = simple(k, n)
            got[(n, k)] = b.dF(s, s, w0).at_zero()
    ok = all(got[(n, k)] == Q(k) for n, k in got)
    ok = ok and all(r.ok for n in (2, 3) for r in km_conditions_check(build_bundle(n, 3))
                    if r.name == "km_initial_conditions")
    record(6, ok, ", ".join(f"n={n} k={k}: {v}" for (n, k), v in sorted(got.items())))


def test_criterion_07_closed_form():
    ID, S1 = Permutation([1, 2]), Permutation([2, 1])
    t_id, t_s1 = T(ID), T(S1)
    expected = (t_s1 + t_id * t_s1 + (t_id ** 2 * t_s1).scale(Fraction(1, 2))
                + (Q(1) * t_s1 ** 3).scale(Fraction(1, 6)))
    ok = all(build_bundle(2, D).F.poly.truncate_t(3) == expected for D in (3, 4, 5))
    record(7, ok, f"F = {expected}")


def test_criterion_08_wdvv():
    r2 = wdvv_check(build_bundle(2, 4), 1)
    r3 = wdvv_check(build_bundle(3, 4), 1)
    ok = r2.status == PASS and r3.status == PASS and (r2.items, r3.items) == (16, 1296)
    record(8, ok, f"n=2: {r2.items} {r2.status}, n=3: {r3.items} {r3.status}")


# consumed t-order of each derivative identity; the certified degree must be D minus it
CONSUMED = {
    "first_derivative_is_phi": 1,
    "second_derivative_is_alpha": 2,
    "alpha_structure_expansion": 0,
    "delta_operator_annihilates_F": 2,
    "kernel_derivative_is_t_schubert": 1,
    "third_derivative_is_three_point": 3,
    "three_point_four_point_expansion": 3,
    "t_schubert_circ_product": 3,
    "t_schubert_circ_product_full_degree": 0,
    "lambda_symmetry": 3,
    "t_schubert_derivative_structure": 1,
    "kernel_linear_system": 2,
    "t_schubert_derivative_is_product": 1,
    "t_schubert_derivative_star_product": 3,
}
AT_ZERO = {"three_point_at_zero_is_gw", "lambda_at_zero_nonnegative"}


def test_criterion_09_derivative_identities():
    D = 3
    problems = []
    count = 0
    for n in (2, 3):
        for r in pde_checks(build_bundle(n, D)):
            count += 1
            expected = 0 if r.name in AT_ZERO else D - CONSUMED[r.name]
            if r.status != PASS or r.certified_degree != expected:
                problems.append(f"n={n} {r.name}: {r.status} at {r.certified_degree}")
    record(9, not problems and count == 2 * (len(CONSUMED) + len(AT_ZERO)),
           "; ".join(problems) if problems else f"{count} identity scans")


def test_criterion_10_deformed_orthogonality():
    res = [orthogonality_t_check(build_bundle(n, 2)) for n in (2, 3)]
    ok = all(r.status == PASS and r.certified_degree == 2 for r in res) and [r.items for r in res] == [4, 36]
    record(10, ok, "pairs: " + ", ".join(str(r.items) for r in res))


def test_criterion_11_lax():
    _, results = run_lax(2, 4, trials=20)
    ok = all(r.status == PASS for r in results) and len(results) == 6 and results[0].items == 20
    record(11, ok, ", ".join(f"{r.name}@{r.certified_degree}" for r in results))


def _verify_all_bytes(args):
    proc = subprocess.run([sys.executable, "-m", "qschubert", "verify-all", *args],
                          capture_output=True, check=False)
    return proc.returncode, proc.stdout


@pytest.mark.parametrize("args", [["--n", "2", "--trunc", "4"]])
def test_criterion_12_determinism(args):
    first = _verify_all_bytes(args)
    second = _verify_all_bytes(args)
    ok = first == second and first[0] == 0 and len(first[1]) > 0
    record(12, ok, f"{len(first[1])} bytes, exit {first[0]}")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in tests:
        try:
            if fn is test_criterion_12_determinism:
                fn(["--n", "2", "--trunc", "4"])
            else:
                fn()
        except AssertionError:
            pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) and len(RESULTS) == len(TITLES) else 1)
