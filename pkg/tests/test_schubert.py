import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from qschubert.exact_algebra import ONE, Q, Var, X, Y, Z
from qschubert.permutations import Permutation, all_permutations, from_word, longest_element
from qschubert.schubert import (
    SchubertTable, classical_schubert, classical_schubert_direct, delta_via_z, determinant_delta,
    divided_difference, divided_difference_perm, divided_difference_word, quantum_double_schubert,
    quantum_e_generating, quantum_elementary, quantum_schubert, schubert_table, specialize_q,
    staircase,
)
from conftest import polynomials

XS = [Var("x", i) for i in (1, 2, 3)]
x_polys = polynomials(variables=XS + [Var("q", 1)], max_terms=4)


def P(*w):
    return Permutation(w)


# -- quantum elementary polynomials ------------------------------------------

def test_small_deltas():
    z = Z
    assert delta_via_z(1) == X(1) + z
    assert delta_via_z(2) == (X(1) + z) * (X(2) + z) + Q(1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_recurrence_matches_determinant(k):
    assert delta_via_z(k) == determinant_delta(k)


def test_quantum_elementary_examples():
    assert quantum_elementary(1, 2) == X(1) + X(2)
    assert quantum_elementary(2, 2) == X(1) * X(2) + Q(1)
    assert quantum_elementary(2, 3) == X(1) * X(2) + X(1) * X(3) + X(2) * X(3) + Q(1) + Q(2)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_quantum_elementary_classical_limit(k):
    xs = sympy.symbols(f"x1:{k + 1}")
    for i in range(1, k + 1):
        p = specialize_q(quantum_elementary(i, k))
        expected = sum(sympy.prod(c) for c in itertools.combinations(xs, i))
        got = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(xs[v.index - 1] ** e for v, e in m)
                  for m, c in p.items())
        assert sympy.expand(got - expected) == 0


# -- divided differences --------------------------------------------------------

@given(x_polys, st.integers(1, 2))
def test_divided_difference_squares_to_zero(p, i):
    assert divided_difference(i, divided_difference(i, p)).is_zero()


@given(x_polys)
def test_braid_relation(p):
    assert divided_difference_word([1, 2, 1], p) == divided_difference_word([2, 1, 2], p)


@given(x_polys)
def test_far_commutation(p):
    q = p * X(4)
    assert divided_difference_word([1, 3], q) == divided_difference_word([3, 1], q)


@given(x_polys, x_polys)
def test_twisted_leibniz(f, g):
    s1f = f.rename({Var("x", 1): Var("x", 2), Var("x", 2): Var("x", 1)})
    lhs = divided_difference(1, f * g)
    assert lhs == divided_difference(1, f) * g + s1f * divided_difference(1, g)


def test_reduced_word_independence():
    w = longest_element(4)
    p = staircase(4) * X(1)
    words = [[1, 2, 1, 3, 2, 1], [3, 2, 3, 1, 2, 3], [2, 1, 3, 2, 3, 1]]
    assert all(from_word(word, 4) == w for word in words)
    results = {divided_difference_word(word, p) for word in words}
    assert len(results) == 1


def test_divided_difference_on_y_alphabet():
    assert divided_difference(1, Y(1), "y") == ONE


# -- Schubert polynomials ----------------------------------------------------------

def test_quantum_schubert_examples_n3():
    assert quantum_schubert(P(1, 2, 3)) == ONE
    assert quantum_schubert(P(2, 1, 3)) == X(1)
    assert quantum_schubert(P(1, 3, 2)) == X(1) + X(2)
    assert quantum_schubert(P(2, 3, 1)) == X(1) * X(2) + Q(1)
    assert quantum_schubert(P(3, 1, 2)) == X(1) ** 2 - Q(1)
    assert quantum_schubert(P(3, 2, 1)) == X(1) ** 2 * X(2) + Q(1) * X(1)


def test_quantum_schubert_n2():
    assert quantum_schubert(P(2, 1)) == X(1)
    assert quantum_double_schubert(P(2, 1)) == X(1) + Y(1)


def test_top_double_schubert_is_delta_product():
    assert quantum_double_schubert(P(3, 2, 1)) == quantum_e_generating(1, Y(2)) * quantum_e_generating(2, Y(1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_classical_limit(n):
    for w in all_permutations(n):
        assert classical_schubert(w) == classical_schubert_direct(w)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_homogeneity_and_top_degree(n):
    for w in all_permutations(n):
        p = quantum_schubert(w)
        assert p.graded_degrees() == {w.length}
        d = quantum_double_schubert(w)
        assert d.graded_degrees() == {w.length}
        assert divided_difference_perm(w, classical_schubert(w)) == ONE


@pytest.mark.parametrize("n", [3, 4])
def test_schubert_polynomials_are_integral(n):
    for w in all_permutations(n):
        assert all(c.denominator == 1 for _, c in quantum_double_schubert(w).items())


def test_table_cache_round_trip(tmp_path):
    table = SchubertTable.build(3)
    again = SchubertTable.from_json(table.to_json())
    assert again.quantum == table.quantum and again.double == table.double
    data = table.to_json()
    data["schema"] = 999
    with pytest.raises(ValueError):
        SchubertTable.from_json(data)


def test_table_persisted(tmp_path):
    from qschubert import schubert
    schubert._TABLES.pop(2, None)
    t = schubert_table(2, tmp_path)
    assert (tmp_path / "schubert_n2.json").exists()
    schubert._TABLES.pop(2, None)
    assert schubert_table(2, tmp_path).quantum == t.quantum
