import random
from fractions import Fraction
from math import comb, factorial

from hypothesis import given, settings, strategies as st

from sqpo.algebra import (GraphStateVector, Observable,
                          commutator, correlator, delta, dump, eigenvalue,
                          observable_apply, product, projection, represent,
                          scale, state, unit, zero)
from sqpo.graph import EMPTY, Graph, cycle, discrete, path, single_edge
from sqpo.homsearch import count_monos
from sqpo.randgen import random_graph, random_rule
from sqpo.rules import LinearRule, library_rule


def disc_rule(p, q):
    return LinearRule.from_inclusions(discrete(p), EMPTY, discrete(q))


V_PLUS = library_rule("v_plus")
V_MINUS = library_rule("v_minus")
E_PLUS = library_rule("e_plus")
ID_V = library_rule("id_vertex")
ID_E = library_rule("id_edge")


def test_example_vertex_delete_after_create_two():
    got = product(delta(V_MINUS), delta(disc_rule(2, 0)))
    assert got.coefficient(disc_rule(2, 1)) == 1
    assert got.coefficient(disc_rule(1, 0)) == 2
    assert len(got.terms) == 2


def test_discrete_composition_structure_spot_checks():
    for p, q, r, s in ((1, 1, 1, 1), (2, 2, 2, 2), (0, 3, 3, 0), (3, 0, 0, 3)):
        got = product(delta(disc_rule(p, q)), delta(disc_rule(r, s)))
        for k in range(min(q, r) + 1):
            want = factorial(k) * comb(q, k) * comb(r, k)
            assert got.coefficient(disc_rule(p + r - k, q + s - k)) == want
        assert len(got.terms) == min(q, r) + 1


def test_unit_element():
    for rule in (E_PLUS, V_MINUS, disc_rule(2, 1)):
        r = delta(rule)
        assert product(unit(), r) == r
        assert product(r, unit()) == r


def test_linear_ops_drop_zero_terms():
    a = delta(V_PLUS)
    assert (a - a).is_zero()
    assert scale(0, a).is_zero()
    assert zero() + a == a
    assert scale(Fraction(3, 2), a).coefficient(V_PLUS) == Fraction(3, 2)


def test_commutator_number_operator_with_creation():
    assert commutator(delta(ID_V), delta(V_PLUS)) == delta(V_PLUS)


def test_commutator_number_operator_with_edge_creation_vanishes():
    assert commutator(delta(ID_V), delta(E_PLUS)).is_zero()


def test_commutator_edge_counter_with_vertex_delete():
    got = commutator(delta(ID_E), delta(V_MINUS))
    expected = -1 * (delta(library_rule("src_delete")) + delta(library_rule("trg_delete")))
    assert got == expected


def test_commutator_antisymmetry_and_self():
    rnd = random.Random(3)
    for _ in range(10):
        a = delta(random_rule(rnd, 2, 1, 1, 1))
        b = delta(random_rule(rnd, 2, 1, 1, 1))
        assert commutator(a, a).is_zero()
        assert commutator(a, b) == -1 * commutator(b, a)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(-3, 3), st.integers(-3, 3))
def test_product_bilinear(seed, ca, cb):
    rnd = random.Random(seed)
    a = delta(random_rule(rnd, 2, 1, 1, 1))
    b = delta(random_rule(rnd, 2, 1, 1, 1))
    c = delta(random_rule(rnd, 2, 1, 1, 1))
    lhs = product(scale(ca, a) + scale(cb, b), c)
    rhs = scale(ca, product(a, c)) + scale(cb, product(b, c))
    assert lhs == rhs


# --- representation --------------------------------------------------------

def test_heisenberg_weyl_ladder():
    d_hat = delta(V_MINUS)
    x_hat = delta(V_PLUS)
    assert represent(d_hat, state(EMPTY)).is_zero()
    for n in range(1, 8):
        assert represent(d_hat, state(discrete(n))) == n * state(discrete(n - 1))
        assert represent(x_hat, state(discrete(n))) == state(discrete(n + 1))


def test_graph_derivative_of_path():
    got = represent(delta(V_MINUS), state(path(3)))
    assert got == 2 * state(path(2)) + state(discrete(2))


def test_represent_unit_is_identity():
    for g in (EMPTY, cycle(3), path(4)):
        s = state(g)
        assert represent(unit(), s) == s


def test_represent_no_matches_gives_zero():
    assert represent(delta(E_PLUS), state(discrete(1))).is_zero()


def test_state_vector_collects_by_iso_class():
    g = Graph([4, 7], {9: (4, 7)})
    s = state(g) + state(single_edge())
    assert s.coefficient(single_edge()) == 2
    assert len(s.terms) == 1


def test_projection():
    assert projection(state(cycle(3))) == 1
    s = 2 * state(discrete(1)) - 2 * state(discrete(2))
    assert projection(s) == 0
    rnd = random.Random(9)
    for _ in range(25):
        p = random_rule(rnd, 2, 1, 2, 1)
        x = random_graph(rnd, 4, 3, min_vertices=1)
        assert projection(represent(delta(p), state(x))) == count_monos(p.input, x)


def test_observables():
    o_v = Observable(discrete(1))
    o_e = Observable(single_edge())
    o_pair = Observable(discrete(2))
    assert eigenvalue(o_v, cycle(3)) == 3
    assert eigenvalue(o_e, discrete(2)) == 0
    for n in range(5):
        assert eigenvalue(o_pair, discrete(n)) == n * (n - 1)
    s = state(cycle(3))
    assert observable_apply(o_v, s) == 3 * s


def test_identity_rules_act_diagonally():
    rnd = random.Random(21)
    for _ in range(20):
        motif = random_graph(rnd, 3, 2)
        x = random_graph(rnd, 4, 4, min_vertices=1)
        got = represent(delta(LinearRule.identity(motif)), state(x))
        assert got == count_monos(motif, x) * state(x)


def test_correlators():
    o_v = Observable(discrete(1))
    o_e = Observable(single_edge())
    assert correlator([o_v], state(cycle(3))) == 3
    s = Fraction(1, 2) * state(discrete(1)) + Fraction(1, 2) * state(discrete(2))
    assert correlator([o_v, o_v], s) == Fraction(5, 2)
    assert correlator([o_e], represent(delta(V_MINUS), state(path(3)))) == 2


def test_dump_is_stable_and_sorted():
    a = delta(V_MINUS) + 2 * delta(V_PLUS)
    text = dump(a)
    assert text == dump(delta(V_MINUS) + 2 * delta(V_PLUS))
    lines = text.splitlines()
    assert lines == sorted(lines)
    assert all("\t" in line for line in lines)


def test_float_coefficients_at_simulation_boundary():
    s = GraphStateVector([(discrete(1), 0.25), (discrete(1), 0.5)])
    assert s.coefficient(discrete(1)) == 0.75
    assert projection(s) == 0.75
