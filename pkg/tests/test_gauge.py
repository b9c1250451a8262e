import pytest

from fusioncensus.catalog import build_fib, build_pointed_cyclic, catalog_data
from fusioncensus.cyclo import Cyclo, from_root
from fusioncensus.gauge import (
    GaugeTransform,
    MonomialSyntaxError,
    UndefinedValueError,
    apply_gauge,
    apply_permutation,
    evaluate_monomial,
    format_monomial,
    gauge_weight,
    inverse_permutation,
    is_de_facto_invariant,
    is_de_jure_invariant,
    is_vacuum_slot,
    parse_monomial,
    permute_monomial,
    random_gauge,
)
from fusioncensus.ring import automorphisms
from fusioncensus.skeleton import (
    SkeletalData,
    bundled_ring,
    check_hexagon,
    check_pentagon,
    check_pivotal,
    f_indices,
    quantum_dims,
)

from helpers import z2

I = from_root(4)


def test_identity_gauge():
    d = z2(F=-1, R=I, d2=1)
    assert apply_gauge(d, GaugeTransform(d.ring)) == d


def test_z2_gauge_leaves_invariants():
    d = z2(F=-1, R=I, d2=1)
    g = GaugeTransform(d.ring, {(2, 2, 1): Cyclo(-1)})
    new = apply_gauge(d, g)
    assert new.f(2, 2, 2, 2, 1, 1) == -1
    assert new.R[(2, 2, 1)] == I


def test_fib_gauge_flips_off_diagonal():
    d = build_fib(1)
    g = GaugeTransform(d.ring, {(2, 2, 2): I})
    new = apply_gauge(d, g)
    _, _, old = d.block(2, 2, 2, 2)
    _, _, M = new.block(2, 2, 2, 2)
    assert M[0][0] == old[0][0] and M[1][1] == old[1][1]
    assert M[0][1] == -old[0][1] and M[1][0] == -old[1][0]


def test_vacuum_slots_are_pinned():
    ring = bundled_ring("Z2")
    with pytest.raises(ValueError):
        GaugeTransform(ring, {(1, 2, 2): Cyclo(-1)})
    g = random_gauge(bundled_ring("Ising"), 11)
    for slot, v in g.values.items():
        if is_vacuum_slot(slot):
            assert v == 1
        assert v**24 == 1


def test_random_gauge_deterministic():
    ring = bundled_ring("Ising")
    assert random_gauge(ring, 5).values == random_gauge(ring, 5).values
    assert random_gauge(ring, 5).values != random_gauge(ring, 6).values


def test_gauge_composition():
    for _, d in catalog_data("Ising")[:3]:
        g1, g2 = random_gauge(d.ring, 1), random_gauge(d.ring, 2)
        assert apply_gauge(apply_gauge(d, g1), g2) == apply_gauge(d, g1 * g2)
        assert apply_gauge(apply_gauge(d, g1), g1.inverse()) == d


def test_checks_and_dims_survive_gauges():
    for ring in ("Fib", "Ising", "Z3"):
        for _, d in catalog_data(ring):
            dims = quantum_dims(d)
            for seed in range(5):
                new = apply_gauge(d, random_gauge(d.ring, seed))
                assert check_pentagon(new).passed
                assert check_pivotal(new).passed
                if new.R is not None:
                    assert check_hexagon(new).passed
                assert quantum_dims(new) == dims


def test_adj_so16_example():
    m = parse_monomial("F[5,5,5,5,6,6]")
    assert gauge_weight(m) == {(6, 5, 5): 1, (5, 6, 5): -1}
    assert not is_de_jure_invariant(m)
    assert gauge_weight(parse_monomial("d[2]")) == {}
    assert is_de_jure_invariant(parse_monomial("d[3]"))
    assert gauge_weight(parse_monomial("R[2,2,1]")) == {}
    # de facto: a vanishing numerator symbol is invariant under every gauge
    ring = bundled_ring("AdjSO16_2")
    F = {idx: Cyclo(1) for idx in f_indices(ring)}
    F[(5, 5, 5, 5, 6, 6)] = Cyclo(0)
    data = SkeletalData(ring, F)
    assert is_de_facto_invariant(m, data)
    with pytest.raises(UndefinedValueError):
        evaluate_monomial(parse_monomial("F[5,5,5,5,6,6]^-1"), data)
    with pytest.raises(UndefinedValueError):
        is_de_facto_invariant(parse_monomial("F[5,5,5,5,6,6]^-1"), data)
    F[(5, 5, 5, 5, 6, 6)] = Cyclo(2)
    assert not is_de_facto_invariant(m, SkeletalData(ring, F))


def test_fib_diagonal_entry_is_de_jure():
    assert is_de_jure_invariant(parse_monomial("F[2,2,2,2,2,2]"))


def test_weight_is_homomorphism():
    a = parse_monomial("F[2,3,2,3,4,4] * F[3,2,3,1,4,4]")
    b = parse_monomial("F[3,4,2,2,1,3] * R[3,3,2]")
    wa, wb, wab = gauge_weight(a), gauge_weight(b), gauge_weight(a * b)
    keys = set(wa) | set(wb) | set(wab)
    assert all(wa.get(k, 0) + wb.get(k, 0) == wab.get(k, 0) for k in keys)


def test_de_jure_semantic():
    m = parse_monomial("F[2,3,2,3,4,4] * F[3,2,3,1,4,4] * F[3,4,2,2,1,3] * F[2,2,3,3,1,4]^-1 * F[2,3,3,1,4,2]^-1")
    assert is_de_jure_invariant(m)
    for _, d in catalog_data("Z4")[:4]:
        v = evaluate_monomial(m, d)
        for seed in range(100):
            assert evaluate_monomial(m, apply_gauge(d, random_gauge(d.ring, seed))) == v


def test_evaluate():
    fib = build_fib(1)
    assert evaluate_monomial(parse_monomial("F[2,2,2,2,2,2]"), fib) == 1 + from_root(5, 2) + from_root(5, 3)
    assert evaluate_monomial(parse_monomial("R[2,2,1]^2"), z2(F=-1, R=I)) == -1
    assert evaluate_monomial(parse_monomial("1"), fib) == 1


def test_monomial_text():
    m = parse_monomial("F[3,3,3,1,3,3]^1 * R[2,2,1]^-1")
    assert format_monomial(m) == "F[3,3,3,1,3,3] * R[2,2,1]^-1"
    assert parse_monomial(format_monomial(m)) == m
    assert parse_monomial("d[2]*d[2]") == parse_monomial("d[2]^2")
    for bad in ("F[1,2]", "X[1]", "F[1,1,1,1,1,1] R[1,1,1]", "R[a,b,c]"):
        with pytest.raises(MonomialSyntaxError):
            parse_monomial(bad)


def test_permutations():
    z3 = build_pointed_cyclic(3, 0)
    R = {(a, b, c): from_root(3, k) for k, (a, b, c) in enumerate(sorted(z3.ring.vertices()))}
    R = {k: (Cyclo(1) if 1 in k[:2] else v) for k, v in R.items()}
    d = z3.replace(R=R)
    sigma = (1, 3, 2)
    new = apply_permutation(d, sigma)
    assert new.R[(3, 3, 2)] == d.R[(2, 2, 3)]
    assert check_pentagon(new).passed
    assert apply_permutation(d, (1, 2, 3)) == d
    assert apply_permutation(new, inverse_permutation(sigma)) == d
    with pytest.raises(ValueError):
        apply_permutation(build_fib(1), (2, 1))


def test_z4_swap_is_involution():
    for _, d in catalog_data("Z4")[:4]:
        assert apply_permutation(apply_permutation(d, (1, 2, 4, 3)), (1, 2, 4, 3)) == d


def test_permute_monomial():
    m = parse_monomial("R[2,2,3]")
    assert permute_monomial((1, 3, 2), m) == parse_monomial("R[3,3,2]")
    assert permute_monomial((1, 2, 3), m) == m
    z5 = bundled_ring("Z5")
    m = parse_monomial("F[4,3,2,4,3,1] * R[3,3,4] * d[3]")
    for s in automorphisms(z5):
        assert permute_monomial(inverse_permutation(s), permute_monomial(s, m, z5)) == m
    with pytest.raises(ValueError):
        permute_monomial((1, 3, 2, 4, 5), m, z5)


def test_verdicts_survive_permutations():
    for ring in ("Z3", "Z4", "TY_Z3"):
        group = automorphisms(bundled_ring(ring))
        for _, d in catalog_data(ring):
            for s in group:
                new = apply_permutation(d, s)
                assert check_pentagon(new).passed
                assert check_pivotal(new).passed
                if new.R is not None:
                    assert check_hexagon(new).passed
