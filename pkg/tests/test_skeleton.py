import pytest

from fusioncensus.catalog import (
    build_fib,
    build_ising,
    build_pointed_cyclic,
    build_trivial,
    catalog_data,
    solve_braidings,
    solve_pivotals,
)
from fusioncensus.cyclo import Cyclo, from_root, parse_cyclo
from fusioncensus.skeleton import (
    DataError,
    NotApplicableError,
    PreconditionError,
    Unitarity,
    check_all,
    check_hexagon,
    check_pentagon,
    check_pivotal,
    check_vacuum,
    classify_properties,
    data_from_json,
    data_to_json,
    is_spherical,
    quantum_dims,
    s_matrix,
)

from helpers import z2

I = from_root(4)


def test_vacuum():
    assert check_vacuum(build_fib(1)).passed
    d = z2(F=1)
    F = dict(d.F)
    F[(1, 2, 2, 1, 2, 1)] = Cyclo(2)
    bad = d.replace(F=F)
    rep = check_vacuum(bad)
    assert not rep.passed
    assert rep.counterexamples[0].index == (1, 2, 2, 1, 2, 1)
    R = z2(F=1, R=1)
    Rbad = dict(R.R)
    Rbad[(2, 1, 2)] = Cyclo(-1)
    assert not check_vacuum(R.replace(R=Rbad)).passed


def test_container_rejects_missing_and_extra():
    d = z2(F=1)
    F = dict(d.F)
    del F[(2, 2, 2, 2, 1, 1)]
    with pytest.raises(DataError):
        d.replace(F=F)
    F = dict(d.F)
    F[(2, 2, 2, 2, 2, 2)] = Cyclo(1)
    with pytest.raises(DataError):
        d.replace(F=F)
    with pytest.raises(DataError):
        z2(F=1, R=0)


def test_pentagon():
    assert check_pentagon(build_trivial()).passed
    assert check_pentagon(z2(F=-1)).passed
    fib = build_fib(1)
    F = dict(fib.F)
    F[(2, 2, 2, 2, 1, 2)] = -F[(2, 2, 2, 2, 1, 2)]
    rep = check_pentagon(fib.replace(F=F))
    assert not rep.passed
    c = rep.counterexamples[0]
    assert c.lhs != c.rhs and len(c.index) == 9


def test_hexagon():
    assert check_hexagon(z2(F=1, R=-1)).passed
    assert not check_hexagon(z2(F=1, R=I)).passed
    assert check_hexagon(z2(F=-1, R=I)).passed
    fib = build_fib(1)
    sols = solve_braidings(fib)
    assert from_root(5, 3) in {R[(2, 2, 1)] for R in sols}
    for R in sols:
        assert check_hexagon(fib.replace(R=R)).passed
    R = dict(sols[0])
    R[(2, 2, 1)] = -R[(2, 2, 1)]
    assert not check_hexagon(fib.replace(R=R)).passed
    with pytest.raises(NotApplicableError):
        check_hexagon(fib)


def test_hexagon_and_pivotal_refuse_without_pentagon():
    fib = build_fib(1)
    F = dict(fib.F)
    F[(2, 2, 2, 2, 2, 2)] = Cyclo(1)
    broken = fib.replace(F=F, P={1: 1, 2: 1})
    with pytest.raises(PreconditionError):
        check_pivotal(broken)


def test_pivotal():
    assert check_pivotal(z2(F=1, d2=1)).passed
    rep = check_pivotal(z2(F=1, d2=I))
    assert not rep.passed
    assert any(c.equation == "dual" for c in rep.counterexamples)
    fib = build_fib(1)
    for P in solve_pivotals(fib):
        assert check_pivotal(fib.replace(P=P)).passed
    with pytest.raises(NotApplicableError):
        check_pivotal(fib)


def test_quantum_dims():
    t = build_trivial().replace(P={1: 1})
    assert quantum_dims(t) == {1: 1}
    assert quantum_dims(z2(F=1, d2=-1))[2] == -1
    ising = build_ising(1)
    dims = [quantum_dims(ising.replace(P=P))[3] for P in solve_pivotals(ising)]
    assert parse_cyclo("E(8) - E(8)^3") in dims


def test_spherical():
    assert is_spherical(z2(F=1, d2=1))
    z3 = build_pointed_cyclic(3, 0)
    d = z3.replace(P={1: 1, 2: from_root(3), 3: from_root(3, 2)})
    assert quantum_dims(d)[2] == from_root(3)
    assert not is_spherical(d)
    assert is_spherical(z3.replace(P={1: 1, 2: 1, 3: 1}))


def test_s_matrix():
    t = build_trivial().replace(R={(1, 1, 1): 1}, P={1: 1})
    assert s_matrix(t) == [[1]]
    assert s_matrix(z2(F=-1, R=I, d2=1)) == [[1, 1], [1, -1]]
    assert s_matrix(z2(F=1, R=1, d2=1)) == [[1, 1], [1, 1]]
    with pytest.raises(NotApplicableError):
        s_matrix(z2(F=1, d2=1))


def test_classify():
    semion = classify_properties(z2(F=-1, R=I, d2=1))
    assert semion.braided and semion.spherical and semion.ribbon and semion.modular
    triv = classify_properties(z2(F=1, R=1, d2=1))
    assert triv.ribbon and not triv.modular
    assert triv.unitary is Unitarity.YES
    fib = build_fib(1)
    P = solve_pivotals(fib)[0]
    flags = classify_properties(fib.replace(P=P))
    assert flags.unitary is Unitarity.NO
    assert classify_properties(fib).unitary is Unitarity.NA


def test_flag_invariants_on_all_catalog_data():
    for ring in ("Z2", "Fib", "Ising", "Z3", "TY_Z3"):
        for _, d in catalog_data(ring):
            f = classify_properties(d)
            assert not f.ribbon or (f.spherical and f.braided)
            assert not f.modular or f.ribbon


def test_catalog_dims_multiplicative_and_s_symmetric():
    for ring in ("Z2", "Fib", "Ising", "Z3", "Z4", "TY_Z3"):
        for _, d in catalog_data(ring):
            dims = quantum_dims(d)
            r = d.ring
            for a in r.labels:
                for b in r.labels:
                    total = sum((dims[c] for c in r.fuse(a, b)), Cyclo(0))
                    assert dims[a] * dims[b] == total
            if d.R is not None and is_spherical(d):
                S = s_matrix(d)
                assert all(S[i][j] == S[j][i] for i in range(r.rank) for j in range(r.rank))


def test_json_round_trip():
    d = z2(F=-1, R=I, d2=1)
    obj = data_to_json(d, "Z2")
    assert data_from_json(obj) == d
    assert data_from_json(data_to_json(d)) == d
    assert [r.passed for r in check_all(d)] == [True] * 4


def test_report_json_shape():
    rep = check_pentagon(build_fib(1)).to_json()
    assert rep == {"check": "pentagon", "pass": True, "counterexamples": []}
