import numpy as np
import pytest

from centaut import oracle
from centaut.adjoint import circle
from centaut.central import (AutMap, adney_yen, aut_c, aut_Zn, check_witness, conjugation,
                             construct_noninner_central_order_p, d_invariants, decomposable_automorphism,
                             decomposition_from_idempotent, has_noninner_central_order_p, identity_map,
                             inner_central_image, is_direct_product, is_inner, to_aut)
from centaut.corpus import corpus_group
from centaut.errors import CriterionInapplicable
from centaut.groups import center
from centaut.homring import build_hom_ring, is_radical, omega_ideal

from conftest import ODD_NONABELIAN


def ring(spec):
    return build_hom_ring(corpus_group(spec))


def test_zero_is_identity():
    R = ring("wreath:3")
    assert to_aut(R.zero).is_identity()
    assert adney_yen(identity_map(R.group), R).is_zero


def test_heisenberg_gives_nine_automorphisms():
    R = ring("heisenberg:3")
    auts = {to_aut(h).perm for h in R.elements()}
    assert len(auts) == 9
    assert all(AutMap(R.group, p).is_automorphism() for p in auts)


def test_non_radical_ring_has_non_bijective_maps():
    R = ring("product(cyclic:3,heisenberg:3)")
    e = is_radical(R).witness
    assert to_aut(-e) is None


@pytest.mark.parametrize("spec, order", [("heisenberg:3", 9), ("dihedral:8", 4), ("abelian:3,3", 48),
                                         ("quaternion:8", 4), ("wreath:3", 9), ("modular:3", 9),
                                         ("product(cyclic:2,dihedral:8)", 32)])
def test_autc_orders(spec, order):
    assert aut_c(corpus_group(spec)).order == order


def test_abelian_autc_is_full_aut():
    G = corpus_group("abelian:3,3")
    assert aut_c(G).order == len(oracle.enumerate_automorphisms(G)) == 48


@pytest.mark.parametrize("spec", ["heisenberg:3", "wreath:3", "modular:3,4", "product(cyclic:2,dihedral:8)",
                                  "quaternion:16"])
def test_circle_maps_to_composition(spec):
    C = aut_c(corpus_group(spec))
    A = C.adjoint
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, A.order, size=(40, 2)):
        x, y = A.element(a), A.element(b)
        assert to_aut(circle(x, y)) == to_aut(x).then(to_aut(y))
        assert C.table.table[a, b] == A.group.table[a, b]


@pytest.mark.parametrize("spec", ["heisenberg:3", "dihedral:16", "product(cyclic:3,heisenberg:3)"])
def test_adney_yen_roundtrip(spec):
    C = aut_c(corpus_group(spec))
    for k, sigma in enumerate(C.elements):
        assert adney_yen(sigma, C.ring) == C.adjoint.element(k)
        assert C.iso(C.adjoint.element(k)) == sigma


def test_adney_yen_rejects_non_central():
    G = corpus_group("dihedral:8")
    auts = oracle.enumerate_automorphisms(G)
    central = oracle.central_automorphisms(G).as_set()
    outer = next(p for p in auts if p not in central)
    with pytest.raises(ValueError, match="not central"):
        adney_yen(AutMap(G, outer))


def test_inner():
    G = corpus_group("heisenberg:3")
    assert is_inner(identity_map(G))[0]
    Z = center(G).members
    for g in range(G.order):
        ok, w = is_inner(conjugation(G, g))
        assert ok and np.array_equal(G.conjugation_table[w], G.conjugation_table[g])
        assert G.mul(G.inv(w), g) in Z


@pytest.mark.parametrize("spec, inv", [("heisenberg:3", (2, 1, 2)), ("wreath:3", (2, 1, 1)),
                                       ("product(cyclic:3,heisenberg:3)", (3, 2, 2)), ("modular:3", (2, 1, 2))])
def test_d_invariants(spec, inv):
    assert tuple(d_invariants(corpus_group(spec)))[:3] == inv


def test_d_invariants_abelian_flag():
    assert d_invariants(corpus_group("abelian:9,3")) == (2, 2, 0, True)


def test_inner_central_image():
    assert inner_central_image(corpus_group("abelian:3,3")) == {ring("abelian:3,3").zero}
    assert len(inner_central_image(corpus_group("heisenberg:3"))) == 9
    I = inner_central_image(corpus_group("wreath:3"))
    assert len(I) == 3 and len(omega_ideal(ring("wreath:3"), 1)) == 9


@pytest.mark.parametrize("spec, expected", [("heisenberg:3", False), ("wreath:3", True), ("modular:3", False),
                                            ("product(cyclic:3,heisenberg:3)", True)])
def test_criterion_examples(spec, expected):
    assert has_noninner_central_order_p(corpus_group(spec)) is expected


@pytest.mark.parametrize("spec", ODD_NONABELIAN)
def test_criterion_against_oracle(spec):
    G = corpus_group(spec)
    found = oracle.noninner_central_of_order(G, G.prime)
    assert has_noninner_central_order_p(G) == bool(found)


def test_criterion_domain():
    with pytest.raises(CriterionInapplicable):
        has_noninner_central_order_p(corpus_group("dihedral:8"))
    with pytest.raises(ValueError):
        has_noninner_central_order_p(corpus_group("abelian:3,3"))


@pytest.mark.parametrize("spec", ["wreath:3", "product(cyclic:3,heisenberg:3)", "product(cyclic:2,dihedral:8)",
                                  "product(cyclic:3,modular:3)"])
def test_witnesses(spec):
    G = corpus_group(spec)
    sigma = construct_noninner_central_order_p(G)
    w = check_witness(sigma)
    assert w.automorphism and w.central and not w.inner and w.order == G.prime
    assert sigma.perm in oracle.central_automorphisms(G).as_set()
    assert sigma.perm not in oracle.inner_automorphisms(G)


def test_witness_refused_when_criterion_fails():
    with pytest.raises(ValueError):
        construct_noninner_central_order_p(corpus_group("heisenberg:3"))


def test_decomposable_construction_moves_cyclic_factor():
    G = corpus_group("product(cyclic:3,heisenberg:3)")
    A, B = decomposition_from_idempotent(is_radical(build_hom_ring(G)).witness)
    assert is_direct_product(G, A, B) and A.order == 3 and A.is_abelian()
    sigma = decomposable_automorphism(G, A, B)
    g = sigma.source[1]
    assert g in A.members and sigma(g) not in A.members


def test_aut_zn():
    G = corpus_group("heisenberg:3")
    assert len(aut_Zn(G, 1)) == 9
    G = corpus_group("modular:3,4")
    assert len(aut_Zn(G, 2)) == aut_c(G).order
    assert len(aut_Zn(G, 1)) < aut_c(G).order


def test_automorphism_powers():
    sigma = construct_noninner_central_order_p(corpus_group("wreath:3"))
    assert sigma.power(3).is_identity() and not sigma.power(1).is_identity()
    assert sigma.then(sigma) == sigma.power(2)
