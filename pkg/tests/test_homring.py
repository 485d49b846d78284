import numpy as np
import pytest
from hypothesis import given, strategies as st

from centaut import oracle
from centaut.corpus import corpus_group
from centaut.errors import BudgetExceeded
from centaut.groups import center, make_group
from centaut.homring import (ModMatrixRing, build_hom_ring, factor_is_p_nil, idempotent_in_powers, is_left_p_nil,
                             is_radical, is_right_p_nil, is_two_sided_ideal, nilpotency_class, omega_ideal,
                             power_subring, ring_report)

SMALL_RINGS = ["cyclic:3", "cyclic:9", "abelian:3,3", "abelian:9,3", "dihedral:8", "quaternion:8",
               "heisenberg:3", "modular:3", "modular:3,4", "wreath:3", "product(cyclic:2,dihedral:8)"]


def ring(spec):
    return build_hom_ring(corpus_group(spec))


def is_hom_into_center(G, values):
    Z = center(G).members
    return all(values[g] in Z for g in range(G.order)) and all(
        values[G.mul(a, b)] == G.mul(values[a], values[b]) for a in range(G.order) for b in range(G.order))


def test_sizes():
    assert ring("cyclic:3").size == 3
    assert ring("heisenberg:3").size == 9
    assert ring("product(cyclic:3,heisenberg:3)").size == 729
    assert ring("cyclic:1").size == 1


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_elements_are_distinct_homomorphisms(spec):
    R = ring(spec)
    G = R.group
    funcs = {tuple(R.evaluation[i]) for i in range(R.size)}
    assert len(funcs) == R.size
    for i in range(R.size):
        assert is_hom_into_center(G, R.evaluation[i])


@pytest.mark.parametrize("spec", ["cyclic:9", "abelian:3,3", "dihedral:8", "heisenberg:3", "modular:3,4"])
def test_every_homomorphism_is_represented(spec):
    R = ring(spec)
    G = R.group
    _, _, homs = oracle.enumerate_homs(G, G)
    Z = center(G).members
    into_center = {tuple(h.tolist()) for h in homs if all(int(v) in Z for v in h)}
    assert into_center == {tuple(R.evaluation[i].tolist()) for i in range(R.size)}


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_operations_are_pointwise(spec):
    R = ring(spec)
    G = R.group
    ev = R.evaluation
    rng = np.random.default_rng(0)
    for x, y in rng.integers(0, R.size, size=(60, 2)):
        s, m = R.add_table[x, y], R.mul_table[x, y]
        assert all(ev[s, g] == G.mul(ev[x, g], ev[y, g]) for g in range(G.order))
        assert all(ev[m, g] == ev[y, ev[x, g]] for g in range(G.order))
        assert (R[x] * R[y]).index == m and (R[x] + R[y]).index == s


@pytest.mark.parametrize("spec", ["abelian:9,3", "modular:3,4", "cyclic:9"])
def test_ring_axioms(spec):
    R = ring(spec)
    A, M = R.add_table, R.mul_table
    idx = np.arange(R.size)
    assert (A == A.T).all()
    assert (A[A[:, :, None], idx] == A[idx[:, None, None], A[None]]).all()
    assert (M[M[:, :, None], idx] == M[idx[:, None, None], M[None]]).all()
    assert (M[idx[:, None, None], A[None]] == A[M[:, :, None], M[:, None, :]]).all()
    assert (M[A[:, :, None], idx] == A[M[:, None, :], M[None, :, :]]).all()
    assert (A[idx, R.neg_table] == 0).all()


def test_mask_rejects_ill_defined_matrices():
    R = ring("abelian:9,3")
    # Z_3 -> Z_9 must land in 3 Z_9
    assert (R.steps == [[1, 3], [1, 1]]).all()
    assert R.check_mask([[0, 3], [0, 0]])
    assert not R.check_mask([[0, 1], [0, 0]])
    with pytest.raises(ValueError, match="well-definedness"):
        R.element([[0, 1], [0, 0]])


def test_lift_perturbation_is_caught():
    R = ring("heisenberg:3")
    G = R.group
    values = [R[4](g) for g in range(G.order)]
    z = next(iter(center(G).members - {G.identity}))
    g = next(g for g in range(G.order) if g not in R.lifts and g != G.identity)
    values[g] = G.mul(values[g], z)
    with pytest.raises(ValueError, match="not a homomorphism"):
        R.from_function(values)


def test_from_function_roundtrip():
    R = ring("product(cyclic:2,dihedral:8)")
    for h in R.elements():
        assert R.from_function(h) == h


def test_heisenberg_ring_has_zero_products():
    R = ring("heisenberg:3")
    assert (R.connect == 0).all()
    assert (R.mul_table == 0).all()
    assert power_subring(R, 2) == frozenset([0])
    assert power_subring(R, 1) == frozenset(range(R.size))
    assert nilpotency_class(R) == 1
    assert is_radical(R).radical
    assert is_left_p_nil(R) and is_right_p_nil(R)


def test_end_z3():
    R = ring("cyclic:3")
    assert power_subring(R, 2) == frozenset(range(3))
    assert nilpotency_class(R) is None
    assert not is_radical(R).radical
    assert not is_left_p_nil(R) and not is_right_p_nil(R)


def test_zero_ring():
    R = ring("cyclic:1")
    assert nilpotency_class(R) == 0 and is_radical(R).radical
    assert R.zero(R.group.identity) == R.group.identity


def test_decomposable_group_has_projection_idempotent():
    R = ring("product(cyclic:3,heisenberg:3)")
    res = is_radical(R)
    assert not res.radical
    e = res.witness
    assert e * e == e and not e.is_zero
    G = R.group
    image = {e(g) for g in range(G.order)}
    assert len(image) == 3


def test_apply_zero():
    R = ring("wreath:3")
    assert all(R.zero(g) == R.group.identity for g in range(R.group.order))


def test_large_ring_tables_are_capped():
    G = make_group("abelian:3,3,3")
    R = build_hom_ring(G)
    assert R.size == 3 ** 9
    with pytest.raises(BudgetExceeded):
        R.mul_table
    # power walk still works on the big ring
    assert not is_radical(R).radical


@pytest.mark.parametrize("n, x, e", [(12, 2, 4), (12, 3, 9), (12, 5, 1), (12, 6, 0), (12, 4, 4), (8, 2, 0)])
def test_idempotent_in_powers_integers(n, x, e):
    Zn = ModMatrixRing(n)
    assert idempotent_in_powers(Zn(x)) == Zn(e)


@given(k=st.integers(0, 80), shape=st.sampled_from(["full", "upper", "strict"]))
def test_idempotent_in_powers_matrices(k, shape):
    R = ModMatrixRing(3, 2, shape)
    elems = R.elements()
    x = elems[k % len(elems)]
    e = idempotent_in_powers(x)
    assert e * e == e
    assert any(x ** m == e for m in range(1, 30))


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_idempotent_in_powers_on_hom_rings(spec):
    R = ring(spec)
    for x in R.elements():
        e = idempotent_in_powers(x)
        assert e * e == e


def test_nilpotent_elements_give_zero():
    R = ring("modular:3,4")
    for x in R.elements():
        assert idempotent_in_powers(x).is_zero


@pytest.mark.parametrize("spec", SMALL_RINGS + ["product(cyclic:3,modular:3)"])
def test_omega_ideals(spec):
    R = ring(spec)
    if R.p is None:
        pytest.skip("zero ring")
    for n in range(1, 4):
        S = omega_ideal(R, n)
        assert S == {i for i in range(R.size) if (R.scalar_table(R.p ** n)[i] == 0)}
        if is_left_p_nil(R) or is_right_p_nil(R):
            assert is_two_sided_ideal(R, S)
    assert omega_ideal(R, 10) == frozenset(range(R.size))


def test_exponent_p_ring_is_its_own_omega():
    R = ring("heisenberg:3")
    assert omega_ideal(R, 1) == frozenset(range(R.size))


def test_factor_rings_stay_p_nil():
    R = ring("modular:3,4")
    assert is_left_p_nil(R) and is_right_p_nil(R)
    assert factor_is_p_nil(R, 1, "left") and factor_is_p_nil(R, 1, "right")


def test_ring_report_keys():
    rep = ring_report(ring("modular:3,4"))
    assert rep == {"size": 27, "source_orders": [9, 3], "target_orders": [9], "connect": [[3], [0]],
                   "radical": True, "left_p_nil": True, "right_p_nil": True, "class": 2}
