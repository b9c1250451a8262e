"""Known fusion categories built from closed formulas, plus finite searches
for their braidings and pivotal structures.

Everything produced here is re-verified exactly by the checkers in
:mod:`fusioncensus.skeleton`; the numeric filtering inside the searches only
prunes candidates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .cyclo import ONE, Cyclo, from_root, inv, parse_cyclo
from .ring import FusionRing
from .skeleton import (
    SkeletalData,
    bundled_ring,
    check_hexagon,
    check_pentagon,
    f_indices,
    pivotal_failures,
    pivotal_rhs,
    r_indices,
)

__all__ = [
    "BudgetExceeded",
    "CatalogSpec",
    "build",
    "build_trivial",
    "build_pointed_cyclic",
    "build_fib",
    "build_ising",
    "build_ty",
    "solve_braidings",
    "solve_pivotals",
    "catalog_data",
]


class BudgetExceeded(RuntimeError):
    def __init__(self, bound: int) -> None:
        self.bound = bound
        super().__init__(f"search exceeded its budget of {bound} candidate assignments")


# square roots of small integers inside cyclotomic fields
_SQRT = {
    1: "1",
    2: "E(8) - E(8)^3",
    3: "E(12) - E(12)^5",
    4: "2",
    5: "1 + 2*E(5) + 2*E(5)^4",
}


def sqrt_int(n: int) -> Cyclo:
    if n not in _SQRT:
        raise ValueError(f"no bundled square root of {n}")
    return parse_cyclo(_SQRT[n])


def _group_exponents(ring: FusionRing, labels: Sequence[int], n: int) -> dict[int, int]:
    """Label -> exponent w.r.t. the smallest label that generates ``labels``."""
    for g in labels:
        powers = [1]
        x = g
        while x != 1:
            powers.append(x)
            (x,) = ring.fuse(x, g)
        if len(powers) == n:
            return {lab: k for k, lab in enumerate(powers)}
    raise ValueError("group part is not cyclic of the expected order")


def build_trivial() -> SkeletalData:
    ring = bundled_ring("trivial")
    return SkeletalData(ring, {(1, 1, 1, 1, 1, 1): ONE}, name="trivial")


def build_pointed_cyclic(n: int, q: int) -> SkeletalData:
    """Vec over Z_n twisted by the 3-cocycle of class ``q``."""
    if not 2 <= n <= 7:
        raise ValueError(f"unsupported group order {n}")
    if not 0 <= q < n:
        raise ValueError(f"cocycle class must lie in 0..{n - 1}")
    ring = bundled_ring(f"Z{n}")
    ex = _group_exponents(ring, list(ring.labels), n)
    F = {}
    for idx in f_indices(ring):
        a, b, c = idx[:3]
        k = q * ex[a] * ((ex[b] + ex[c]) // n)
        F[idx] = from_root(n, k)
    return SkeletalData(ring, F, name=f"pointed Z{n} q={q}")


def _phi() -> Cyclo:
    return -from_root(5, 2) - from_root(5, 3)


def build_fib(f_class: int) -> SkeletalData:
    if f_class not in (1, 2):
        raise ValueError("Fibonacci F-class must be 1 or 2")
    ring = bundled_ring("Fib")
    phi = _phi()
    if f_class == 2:
        phi = phi.galois(2)
    ip = inv(phi)
    F = {idx: ONE for idx in f_indices(ring)}
    F[(2, 2, 2, 2, 1, 1)] = ip
    F[(2, 2, 2, 2, 1, 2)] = ONE
    F[(2, 2, 2, 2, 2, 1)] = ip
    F[(2, 2, 2, 2, 2, 2)] = -ip
    return SkeletalData(ring, F, name=f"Fib class {f_class}")


def build_ty(n: int, bichar: int, sign: int) -> SkeletalData:
    """Tambara-Yamagami data for Z_n with bicharacter ``z^(bichar*x*y)``."""
    if not 2 <= n <= 5:
        raise ValueError(f"unsupported group order {n}")
    if math.gcd(bichar, n) != 1 or not 0 < bichar < n:
        raise ValueError(f"bicharacter index {bichar} is degenerate for Z_{n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ring = bundled_ring("Ising" if n == 2 else f"TY_Z{n}")
    m = ring.rank
    ex = _group_exponents(ring, list(range(1, m)), n)

    def chi(a: int, b: int) -> Cyclo:
        return from_root(n, bichar * ex[a] * ex[b])

    tau = Cyclo(sign) * inv(sqrt_int(n))
    F = {}
    for idx in f_indices(ring):
        a, b, c, d, e, f = idx
        v = ONE
        if b == m and d == m and a != m and c != m:
            v = chi(a, c)
        elif a == m and c == m and b != m and d != m:
            v = chi(b, d)
        elif a == b == c == d == m:
            v = tau * inv(chi(e, f))
        F[idx] = v
    return SkeletalData(ring, F, name=f"TY(Z{n}) chi={bichar} sign={sign:+d}")


def build_ising(f_class: int) -> SkeletalData:
    if f_class not in (1, 2):
        raise ValueError("Ising F-class must be 1 or 2")
    d = build_ty(2, 1, 1 if f_class == 1 else -1)
    return d.replace(name=f"Ising class {f_class}")


# -- finite searches --------------------------------------------------------


@dataclass
class _Constraint:
    slots: frozenset
    test: Callable[[dict], bool]


def _backtrack(
    slots: list,
    candidates: dict,
    constraints: list[_Constraint],
    budget: int,
) -> list[dict]:
    """All assignments passing every constraint.

    Forward checking: once a constraint has a single unassigned slot left,
    that slot's domain is filtered through it.  The next slot is always one
    with the smallest remaining domain.
    """
    by_slot: dict = {s: [] for s in slots}
    for c in constraints:
        for s in c.slots:
            by_slot[s].append(c)
    visits = 0

    def spend(n: int) -> None:
        nonlocal visits
        visits += n
        if visits > budget:
            raise BudgetExceeded(budget)

    def narrow(slot, dom: list, assign: dict, cons) -> list:
        out = []
        for cand in dom:
            spend(1)
            assign[slot] = cand
            if all(c.test(assign) for c in cons):
                out.append(cand)
        del assign[slot]
        return out

    # node consistency
    domains = {}
    for s in slots:
        unary = [c for c in by_slot[s] if c.slots == {s}]
        domains[s] = narrow(s, list(candidates[s]), {}, unary)

    out: list[dict] = []

    def rec(assign: dict, domains: dict) -> None:
        free = [s for s in slots if s not in assign]
        if not free:
            out.append(dict(assign))
            return
        s = min(free, key=lambda x: (len(domains[x]), slots.index(x)))
        for cand in domains[s]:
            spend(1)
            assign[s] = cand
            ok = all(c.test(assign) for c in by_slot[s] if c.slots <= assign.keys())
            new = dict(domains)
            if ok:
                # filter slots that became the last unknown of a constraint
                touched: dict = {}
                for c in by_slot[s]:
                    rest = [x for x in c.slots if x not in assign]
                    if len(rest) == 1:
                        touched.setdefault(rest[0], []).append(c)
                for x, cons in touched.items():
                    new[x] = narrow(x, new[x], assign, cons)
                    if not new[x]:
                        ok = False
                        break
            if ok:
                rec(assign, new)
            del assign[s]

    rec({}, domains)
    return out


_TOL = 1e-7


def _num(x: Cyclo) -> complex:
    return complex(x)


def solve_braidings(data: SkeletalData, max_order: int = 240, budget: int = 5_000_000) -> list[dict]:
    """Every root-of-unity solution of both hexagon families.

    Vacuum R-symbols are fixed to 1.  Returns a list of R-symbol
    associations, each verified exactly.
    """
    return [dict(r) for r in _solve_braidings(data, max_order, budget)]


@lru_cache(maxsize=256)
def _solve_braidings(data: SkeletalData, max_order: int, budget: int) -> tuple:
    ring = data.ring
    if not ring.is_commutative:
        raise ValueError("braidings need a commutative ring")
    if not check_pentagon(data).passed:
        raise ValueError("pentagon equations fail; no braidings to search for")
    Fn = {k: _num(v) for k, v in data.F.items()}
    fz = lambda *i: Fn.get(i, 0j)  # noqa: E731
    roots = [cmath.exp(2j * math.pi * k / max_order) for k in range(max_order)]

    free = [s for s in r_indices(ring) if 1 not in s[:2]]
    cands = {s: list(range(max_order)) for s in free}

    def val(assign, s):
        if s[0] == 1 or s[1] == 1:
            return 1.0
        return roots[assign[s]]

    constraints = []
    for a in ring.labels:
        for b in ring.labels:
            for c in ring.labels:
                for e in ring.fuse(c, a):
                    for d in ring.fuse(e, b):
                        for g in ring.fuse(c, b):
                            if not ring.N(a, g, d):
                                continue
                            fs = [f for f in ring.fuse(a, b) if ring.N(c, f, d)]
                            fam1 = {(c, a, e), (c, b, g)} | {(c, f, d) for f in fs}
                            fam2 = {(a, c, e), (b, c, g)} | {(f, c, d) for f in fs}

                            def test1(assign, a=a, b=b, c=c, d=d, e=e, g=g, fs=fs):
                                lhs = val(assign, (c, a, e)) * fz(a, c, b, d, e, g) * val(assign, (c, b, g))
                                rhs = sum(fz(c, a, b, d, e, f) * val(assign, (c, f, d)) * fz(a, b, c, d, f, g) for f in fs)
                                return abs(lhs - rhs) <= _TOL

                            def test2(assign, a=a, b=b, c=c, d=d, e=e, g=g, fs=fs):
                                lhs = fz(a, c, b, d, e, g) / (val(assign, (a, c, e)) * val(assign, (b, c, g)))
                                rhs = sum(fz(c, a, b, d, e, f) / val(assign, (f, c, d)) * fz(a, b, c, d, f, g) for f in fs)
                                return abs(lhs - rhs) <= _TOL

                            for used, test in ((fam1, test1), (fam2, test2)):
                                used = frozenset(x for x in used if 1 not in x[:2])
                                constraints.append(_Constraint(used, test))
    sols = _backtrack(free, cands, constraints, budget)
    out = []
    for sol in sorted(sols, key=lambda s: [s[k] for k in sorted(s)]):
        R = {s: ONE for s in r_indices(ring)}
        for s, k in sol.items():
            R[s] = from_root(max_order, k)
        cand = data.replace(R=R, P=None)
        if check_hexagon(cand).passed:
            out.append(tuple(sorted(R.items())))
    return tuple(out)


def pivotal_order_bound(data: SkeletalData) -> int:
    n = 1
    for v in data.F.values():
        n = n * v.conductor // math.gcd(n, v.conductor)
    return 2 * data.ring.rank * n


def solve_pivotals(data: SkeletalData, max_order: Optional[int] = None, budget: int = 5_000_000) -> list[dict]:
    """Every root-of-unity pivotal structure, verified exactly."""
    return [dict(p) for p in _solve_pivotals(data, max_order, budget)]


@lru_cache(maxsize=256)
def _solve_pivotals(data: SkeletalData, max_order: Optional[int], budget: int) -> tuple:
    ring = data.ring
    if not check_pentagon(data).passed:
        raise ValueError("pentagon equations fail; no pivotal structures to search for")
    M = max_order or pivotal_order_bound(data)
    roots = [cmath.exp(2j * math.pi * k / M) for k in range(M)]
    reps = [a for a in ring.labels if a != 1 and a <= ring.dual(a)]
    cands = {}
    for a in reps:
        if ring.dual(a) == a:
            # p_a p_a = 1
            cands[a] = [0] + ([M // 2] if M % 2 == 0 else [])
        else:
            cands[a] = list(range(M))

    def pv(assign, a):
        if a == 1:
            return 1.0
        ad = ring.dual(a)
        if a in assign:
            return roots[assign[a]]
        return 1.0 / roots[assign[ad]]

    constraints = []
    for a, b, c in ring.vertices():
        rhs = complex(pivotal_rhs(data, a, b, c))
        used = frozenset(min(x, ring.dual(x)) for x in (a, b, c) if x != 1)

        def test(assign, a=a, b=b, c=c, rhs=rhs):
            return abs(pv(assign, a) * pv(assign, b) / pv(assign, c) - rhs) <= _TOL

        constraints.append(_Constraint(used, test))
    # constraints with no free slot must hold outright
    if any(not c.slots and not c.test({}) for c in constraints):
        return ()
    sols = _backtrack(reps, cands, [c for c in constraints if c.slots], budget)
    out = []
    for sol in sols:
        P = {1: ONE}
        for a, k in sol.items():
            P[a] = from_root(M, k)
            P[ring.dual(a)] = from_root(M, -k)
        if not pivotal_failures(ring, data, P):
            out.append(tuple(sorted(P.items())))
    out.sort(key=lambda P: _dim_phase_key(data, dict(P)))
    return tuple(out)


def _dim_phase_key(data: SkeletalData, P: dict) -> list:
    """Order pivotal structures by the phases of their quantum dimensions.

    Per label, phases of lower root-of-unity order come first, then by
    angle; this reproduces the n_P numbering of the census tables.
    """
    key = []
    for a in data.ring.labels:
        ad = data.ring.dual(a)
        d = complex(P[a]) / complex(data.f(ad, a, ad, ad, 1, 1))
        turn = Fraction(cmath.phase(d) / (2 * math.pi) % 1).limit_denominator(1000)
        key.append((turn.denominator, turn))
    return key


# -- the bundled catalog ----------------------------------------------------


@dataclass(frozen=True)
class CatalogSpec:
    """Provenance of a catalog datum.

    ``family`` is one of ``trivial``, ``pointed``, ``fib``, ``ising``, ``ty``;
    ``params`` holds the constructor arguments.  ``braiding`` and ``pivotal``
    are 1-based positions in the solver output (``None`` for absent).
    """

    family: str
    params: tuple = ()
    braiding: Optional[int] = None
    pivotal: Optional[int] = None

    def label(self) -> str:
        p = ",".join(map(str, self.params))
        return f"{self.family}({p}) R{self.braiding or 0} P{self.pivotal or 0}"


_BUILDERS: dict[str, Callable[..., SkeletalData]] = {
    "trivial": build_trivial,
    "pointed": build_pointed_cyclic,
    "fib": build_fib,
    "ising": build_ising,
    "ty": build_ty,
}


def build(spec: CatalogSpec) -> SkeletalData:
    """Construct the datum described by ``spec`` (solving for R and P as needed)."""
    if spec.family not in _BUILDERS:
        raise ValueError(f"unknown family {spec.family!r}")
    data = _BUILDERS[spec.family](*spec.params)
    R = None
    if spec.braiding is not None:
        sols = solve_braidings(data)
        if not 1 <= spec.braiding <= len(sols):
            raise ValueError(f"braiding index {spec.braiding} out of range 1..{len(sols)}")
        R = sols[spec.braiding - 1]
    P = None
    if spec.pivotal is not None:
        sols = solve_pivotals(data)
        if not 1 <= spec.pivotal <= len(sols):
            raise ValueError(f"pivotal index {spec.pivotal} out of range 1..{len(sols)}")
        P = sols[spec.pivotal - 1]
    return SkeletalData(data.ring, data.F, R, P, name=spec.label())


# F-level parameter sets per bundled ring, listed in census n_F order
FAMILY_PARAMS: dict[str, list[tuple[str, tuple]]] = {
    "trivial": [("trivial", ())],
    "Z2": [("pointed", (2, 1)), ("pointed", (2, 0))],
    "Fib": [("fib", (1,)), ("fib", (2,))],
    "Ising": [("ising", (1,)), ("ising", (2,))],
    "Z3": [("pointed", (3, 0)), ("pointed", (3, 1)), ("pointed", (3, 2))],
    "Z4": [("pointed", (4, q)) for q in (2, 0, 3, 1)],
    "TY_Z3": [("ty", (3, 2, 1)), ("ty", (3, 2, -1)), ("ty", (3, 1, -1)), ("ty", (3, 1, 1))],
}


def catalog_specs(ring_name: str) -> list[CatalogSpec]:
    """Every (F-class, braiding, pivotal) combination for a bundled ring.

    F-classes without any braiding contribute their non-braided data;
    braided F-classes contribute one datum per braiding.
    """
    out = []
    for family, params in FAMILY_PARAMS[ring_name]:
        data = _BUILDERS[family](*params)
        braids = solve_braidings(data) if data.ring.is_commutative else []
        pivs = solve_pivotals(data)
        for bi in range(1, len(braids) + 1) if braids else [None]:
            for pi in range(1, len(pivs) + 1):
                out.append(CatalogSpec(family, params, bi, pi))
    return out


def catalog_data(ring_name: str) -> list[tuple[CatalogSpec, SkeletalData]]:
    return [(s, build(s)) for s in catalog_specs(ring_name)]
