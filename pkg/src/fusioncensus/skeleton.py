"""Skeletal data and the equation checkers.

Index conventions (all labels 1-based):

* ``F[(a, b, c, d, e, f)]`` is the entry in row ``e`` and column ``f`` of the
  matrix ``F_d^{abc}``; rows run over ``e`` in ``a x b`` with ``d`` in
  ``e x c``, columns over ``f`` in ``b x c`` with ``d`` in ``a x f``.
* ``R[(a, b, c)]`` is the braiding coefficient ``R_c^{ab}``.
* ``P[a]`` is the pivotal coefficient of ``a``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator, Mapping, Optional

from .cyclo import (
    ONE,
    ZERO,
    Cyclo,
    conj,
    format_cyclo,
    inv,
    is_real,
    lift,
    parse_cyclo,
    raw_sum_is_zero,
    sign_of_real,
)
from .matrix import det, mat_inverse
from .ring import FusionRing, ring_from_json, ring_to_json

FIndex = tuple[int, int, int, int, int, int]
RIndex = tuple[int, int, int]


class DataError(ValueError):
    """The data file or container is malformed."""


class NotApplicableError(ValueError):
    """A check needs a component (R or P) that the data lacks."""


class InvalidDataError(ValueError):
    """The data violates a precondition, e.g. a vanishing denominator."""


class PreconditionError(InvalidDataError):
    """A check was asked for before the checks it depends on passed."""


# -- admissible index sets ------------------------------------------------


@lru_cache(maxsize=64)
def f_indices(ring: FusionRing) -> tuple[FIndex, ...]:
    """Every admissible F-symbol index, in lexicographic order."""
    out = []
    for a, b, c, d in _abcd(ring):
        rows, cols = f_block_labels(ring, a, b, c, d)
        out.extend((a, b, c, d, e, f) for e in rows for f in cols)
    return tuple(sorted(out))


def _abcd(ring: FusionRing) -> Iterator[tuple[int, int, int, int]]:
    for a in ring.labels:
        for b in ring.labels:
            for c in ring.labels:
                ds = set()
                for e in ring.fuse(a, b):
                    ds.update(ring.fuse(e, c))
                for d in sorted(ds):
                    yield a, b, c, d


@lru_cache(maxsize=4096)
def _block_labels_cached(ring: FusionRing, a: int, b: int, c: int, d: int):
    rows = tuple(e for e in ring.fuse(a, b) if ring.N(e, c, d))
    cols = tuple(f for f in ring.fuse(b, c) if ring.N(a, f, d))
    return rows, cols


def f_block_labels(ring: FusionRing, a: int, b: int, c: int, d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return _block_labels_cached(ring, a, b, c, d)


@lru_cache(maxsize=64)
def f_blocks(ring: FusionRing) -> tuple[tuple[int, int, int, int], ...]:
    return tuple(k for k in _abcd(ring) if f_block_labels(ring, *k)[0])


@lru_cache(maxsize=64)
def r_indices(ring: FusionRing) -> tuple[RIndex, ...]:
    return tuple(sorted(ring.vertices()))


def is_f_admissible(ring: FusionRing, idx: FIndex) -> bool:
    a, b, c, d, e, f = idx
    r = ring.rank
    if not all(1 <= x <= r for x in idx):
        return False
    return bool(ring.N(a, b, e) and ring.N(e, c, d) and ring.N(a, f, d) and ring.N(b, c, f))


def is_vacuum_f(idx: FIndex) -> bool:
    a, b, c = idx[:3]
    return a == 1 or b == 1 or c == 1


# -- container --------------------------------------------------------------


class SkeletalData:
    """A ring with F-symbols and optional R-symbols and pivotal coefficients.

    Instances are treated as immutable; checks are memoized per instance.
    """

    def __init__(
        self,
        ring: FusionRing,
        F: Mapping[FIndex, Cyclo],
        R: Optional[Mapping[RIndex, Cyclo]] = None,
        P: Optional[Mapping[int, Cyclo]] = None,
        name: str = "",
    ) -> None:
        self.ring = ring
        self.name = name
        self.F: dict[FIndex, Cyclo] = {tuple(k): Cyclo(v) for k, v in F.items()}
        self.R: Optional[dict[RIndex, Cyclo]] = (
            None if R is None else {tuple(k): Cyclo(v) for k, v in R.items()}
        )
        self.P: Optional[dict[int, Cyclo]] = (
            None if P is None else {int(k): Cyclo(v) for k, v in P.items()}
        )
        self._validate()
        self._cache: dict[str, object] = {}

    def _validate(self) -> None:
        ring = self.ring
        want = set(f_indices(ring))
        have = set(self.F)
        extra = sorted(have - want)
        if extra:
            raise DataError(f"F-symbol {list(extra[0])} is not admissible")
        missing = sorted(want - have)
        if missing:
            raise DataError(f"admissible F-symbol {list(missing[0])} is missing")
        if self.R is not None:
            if not ring.is_commutative:
                raise DataError("R-symbols given for a non-commutative ring")
            want_r = set(r_indices(ring))
            extra = sorted(set(self.R) - want_r)
            if extra:
                raise DataError(f"R-symbol {list(extra[0])} is not admissible")
            missing = sorted(want_r - set(self.R))
            if missing:
                raise DataError(f"R-symbol {list(missing[0])} is missing")
            for k, v in self.R.items():
                if v.is_zero():
                    raise DataError(f"R-symbol {list(k)} is zero")
        if self.P is not None:
            if sorted(self.P) != list(ring.labels):
                raise DataError("pivotal coefficients must be given for every label")
            for k, v in self.P.items():
                if v.is_zero():
                    raise DataError(f"pivotal coefficient {k} is zero")

    # -- accessors ----------------------------------------------------------

    @property
    def braided(self) -> bool:
        return self.R is not None

    @property
    def pivotal(self) -> bool:
        return self.P is not None

    def f(self, *idx: int) -> Cyclo:
        """F-symbol value; out-of-block indices read as 0."""
        return self.F.get(idx, ZERO)

    def block(self, a: int, b: int, c: int, d: int) -> tuple[tuple[int, ...], tuple[int, ...], list[list[Cyclo]]]:
        rows, cols = f_block_labels(self.ring, a, b, c, d)
        return rows, cols, [[self.F[(a, b, c, d, e, f)] for f in cols] for e in rows]

    def replace(self, **kw) -> SkeletalData:
        args = {"F": self.F, "R": self.R, "P": self.P, "name": self.name}
        args.update(kw)
        return SkeletalData(self.ring, **args)

    def content_key(self) -> tuple:
        return (
            self.ring.key,
            tuple(sorted(self.F.items())),
            None if self.R is None else tuple(sorted(self.R.items())),
            None if self.P is None else tuple(sorted(self.P.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkeletalData):
            return NotImplemented
        return self.content_key() == other.content_key()

    def __hash__(self) -> int:
        return hash(self.content_key())

    def __repr__(self) -> str:
        parts = [f"rank={self.ring.rank}", f"{len(self.F)} F"]
        if self.R is not None:
            parts.append(f"{len(self.R)} R")
        if self.P is not None:
            parts.append("P")
        label = f"{self.name!r}, " if self.name else ""
        return f"SkeletalData({label}{', '.join(parts)})"

    def conductor(self) -> int:
        n = 1
        for vals in (self.F.values(), (self.R or {}).values(), (self.P or {}).values()):
            for v in vals:
                c = v.conductor
                n = n * c // math.gcd(n, c)
        return n


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    equation: str
    index: tuple[int, ...]
    lhs: Cyclo
    rhs: Cyclo

    def to_json(self) -> dict:
        return {
            "equation": self.equation,
            "index": list(self.index),
            "lhs": format_cyclo(self.lhs),
            "rhs": format_cyclo(self.rhs),
        }


@dataclass(frozen=True)
class VerificationReport:
    check: str
    counterexamples: tuple[Counterexample, ...] = ()
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "pass": self.passed,
            "counterexamples": [c.to_json() for c in self.counterexamples],
        }
        if self.note:
            out["note"] = self.note
        return out


def _report(check: str, failures: Iterable[Counterexample]) -> VerificationReport:
    return VerificationReport(check, tuple(sorted(failures, key=lambda c: (c.equation, c.index))))


# -- checks -----------------------------------------------------------------


def check_vacuum(data: SkeletalData) -> VerificationReport:
    """Vacuum F-symbols and R-symbols equal 1; ``[F_a^{a a* a}]_1^1`` is nonzero."""
    ring = data.ring
    bad = []
    for idx, v in data.F.items():
        if is_vacuum_f(idx) and v != ONE:
            bad.append(Counterexample("vacuum-F", idx, v, ONE))
    for a in ring.labels:
        ad = ring.dual(a)
        v = data.f(a, ad, a, a, 1, 1)
        if v.is_zero():
            bad.append(Counterexample("nondegenerate", (a, ad, a, a, 1, 1), v, ZERO))
    if data.R is not None:
        for b in ring.labels:
            for idx in ((1, b, b), (b, 1, b)):
                v = data.R[idx]
                if v != ONE:
                    bad.append(Counterexample("vacuum-R", idx, v, ONE))
    return _report("vacuum", bad)


class _Lifted:
    """Symbol values lifted once to the data's common conductor."""

    def __init__(self, data: SkeletalData) -> None:
        self.m = data.conductor()
        m = self.m
        zero = (1, ())
        self.F = {k: lift(v, m) for k, v in data.F.items()}
        self.zero = zero
        self.R = None if data.R is None else {k: lift(v, m) for k, v in data.R.items()}
        self.Rinv = None if data.R is None else {k: lift(inv(v), m) for k, v in data.R.items()}

    def f(self, idx: FIndex):
        return self.F.get(idx, self.zero)


def _memo(data: SkeletalData, key: str, fn):
    if key not in data._cache:
        data._cache[key] = fn()
    return data._cache[key]


# results shared between data objects with equal F (e.g. the same fusion
# category with different braidings)
_PENTAGON_CACHE: dict[tuple, VerificationReport] = {}


def pentagon_instances(ring: FusionRing) -> Iterator[tuple[int, ...]]:
    """``(a, b, c, d, e, f, g, k, l)`` for every pentagon instance."""
    return iter(_pentagon_instances(ring))


@lru_cache(maxsize=64)
def _pentagon_instances(ring: FusionRing) -> tuple[tuple[int, ...], ...]:
    out = []
    L = ring.labels
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    for f in ring.fuse(a, b):
                        for g in ring.fuse(f, c):
                            for e in ring.fuse(g, d):
                                for l in ring.fuse(c, d):
                                    for k in ring.fuse(b, l):
                                        if ring.N(a, k, e):
                                            out.append((a, b, c, d, e, f, g, k, l))
    return tuple(out)


def _pentagon_sides(data: SkeletalData, inst) -> tuple[Cyclo, Cyclo]:
    a, b, c, d, e, f, g, k, l = inst
    lhs = data.f(f, c, d, e, g, l) * data.f(a, b, l, e, f, k)
    rhs = ZERO
    for h in data.ring.fuse(b, c):
        rhs = rhs + data.f(a, b, c, g, f, h) * data.f(a, h, d, e, g, k) * data.f(b, c, d, k, h, l)
    return lhs, rhs


def check_pentagon(data: SkeletalData) -> VerificationReport:
    """Exhaustive pentagon check, with out-of-block symbols read as 0."""

    def run() -> VerificationReport:
        key = (data.ring.key, tuple(sorted(data.F.items())))
        hit = _PENTAGON_CACHE.get(key)
        if hit is not None:
            return hit
        lf = _Lifted(data)
        m = lf.m
        ring = data.ring
        fx = lf.f
        bad = []
        for inst in _pentagon_instances(ring):
            a, b, c, d, e, f, g, k, l = inst
            terms = [(1, (fx((f, c, d, e, g, l)), fx((a, b, l, e, f, k))))]
            for h in ring.fuse(b, c):
                terms.append(
                    (-1, (fx((a, b, c, g, f, h)), fx((a, h, d, e, g, k)), fx((b, c, d, k, h, l))))
                )
            if not raw_sum_is_zero(m, terms):
                lhs, rhs = _pentagon_sides(data, inst)
                bad.append(Counterexample("pentagon", inst, lhs, rhs))
        rep = _report("pentagon", bad)
        if len(_PENTAGON_CACHE) > 4096:
            _PENTAGON_CACHE.clear()
        _PENTAGON_CACHE[key] = rep
        return rep

    return _memo(data, "pentagon", run)


@lru_cache(maxsize=64)
def _hexagon_instances(ring: FusionRing) -> tuple[tuple[int, ...], ...]:
    out = []
    L = ring.labels
    for a in L:
        for b in L:
            for c in L:
                for e in ring.fuse(c, a):
                    for d in ring.fuse(e, b):
                        for g in ring.fuse(c, b):
                            if ring.N(a, g, d):
                                out.append((a, b, c, d, e, g))
    return tuple(out)


def _hexagon_sides(data: SkeletalData, inst, inverse: bool) -> tuple[Cyclo, Cyclo]:
    a, b, c, d, e, g = inst
    R = data.R
    if not inverse:
        lhs = R[(c, a, e)] * data.f(a, c, b, d, e, g) * R[(c, b, g)]
    else:
        lhs = inv(R[(a, c, e)]) * data.f(a, c, b, d, e, g) * inv(R[(b, c, g)])
    rhs = ZERO
    for f in data.ring.fuse(a, b):
        if not data.ring.N(c, f, d):
            continue
        r = R[(c, f, d)] if not inverse else inv(R[(f, c, d)])
        rhs = rhs + data.f(c, a, b, d, e, f) * r * data.f(a, b, c, d, f, g)
    return lhs, rhs


def check_hexagon(data: SkeletalData) -> VerificationReport:
    """Both hexagon families; refuses unless the pentagon holds."""
    if data.R is None:
        raise NotApplicableError("hexagon check needs R-symbols")
    if not data.ring.is_commutative:
        raise NotApplicableError("hexagon check needs a commutative ring")

    def run() -> VerificationReport:
        if not check_pentagon(data).passed:
            raise PreconditionError("hexagon check requires the pentagon equations to hold")
        lf = _Lifted(data)
        m = lf.m
        ring = data.ring
        fx = lf.f
        R, Ri = lf.R, lf.Rinv
        bad = []
        for inst in _hexagon_instances(ring):
            a, b, c, d, e, g = inst
            mid = fx((a, c, b, d, e, g))
            t1 = [(1, (R[(c, a, e)], mid, R[(c, b, g)]))]
            t2 = [(1, (Ri[(a, c, e)], mid, Ri[(b, c, g)]))]
            for f in ring.fuse(a, b):
                if not ring.N(c, f, d):
                    continue
                left = fx((c, a, b, d, e, f))
                right = fx((a, b, c, d, f, g))
                t1.append((-1, (left, R[(c, f, d)], right)))
                t2.append((-1, (left, Ri[(f, c, d)], right)))
            if not raw_sum_is_zero(m, t1):
                lhs, rhs = _hexagon_sides(data, inst, False)
                bad.append(Counterexample("hexagon", inst, lhs, rhs))
            if not raw_sum_is_zero(m, t2):
                lhs, rhs = _hexagon_sides(data, inst, True)
                bad.append(Counterexample("hexagon-inverse", inst, lhs, rhs))
        return _report("hexagon", bad)

    return _memo(data, "hexagon", run)


def pivotal_rhs(data: SkeletalData, a: int, b: int, c: int) -> Cyclo:
    """Product of the three F-symbols that ``p_a p_b / p_c`` must equal."""
    d = data.ring.dual
    return (
        data.f(a, b, d(c), 1, c, d(a))
        * data.f(b, d(c), a, 1, d(a), d(b))
        * data.f(d(c), a, b, 1, d(b), c)
    )


def check_pivotal(data: SkeletalData) -> VerificationReport:
    """``p_1 = 1``, ``p_a p_{a*} = 1`` and the cyclic relation on every vertex."""
    if data.P is None:
        raise NotApplicableError("pivotal check needs pivotal coefficients")

    def run() -> VerificationReport:
        if not check_pentagon(data).passed:
            raise PreconditionError("pivotal check requires the pentagon equations to hold")
        return _report("pivotal", pivotal_failures(data.ring, data, data.P))

    return _memo(data, "pivotal", run)


def pivotal_failures(ring: FusionRing, data: SkeletalData, P: Mapping[int, Cyclo]) -> list[Counterexample]:
    bad = []
    if P[1] != ONE:
        bad.append(Counterexample("unit", (1,), P[1], ONE))
    for a in ring.labels:
        v = P[a] * P[ring.dual(a)]
        if v != ONE:
            bad.append(Counterexample("dual", (a,), v, ONE))
    for a, b, c in ring.vertices():
        lhs = P[a] * P[b] * inv(P[c])
        rhs = pivotal_rhs(data, a, b, c)
        if lhs != rhs:
            bad.append(Counterexample("cyclic", (a, b, c), lhs, rhs))
    return bad


def quantum_dims(data: SkeletalData) -> dict[int, Cyclo]:
    """Left quantum dimensions ``d_a = p_a / [F_{a*}^{a* a a*}]_1^1``."""
    if data.P is None:
        raise NotApplicableError("quantum dimensions need pivotal coefficients")

    def run():
        out = {}
        for a in data.ring.labels:
            ad = data.ring.dual(a)
            den = data.f(ad, a, ad, ad, 1, 1)
            if den.is_zero():
                raise InvalidDataError(f"[F_{ad}^{{{ad} {a} {ad}}}]_1^1 vanishes")
            out[a] = data.P[a] * inv(den)
        return out

    return dict(_memo(data, "dims", run))


def is_spherical(data: SkeletalData) -> bool:
    d = quantum_dims(data)
    return all(d[a] == d[data.ring.dual(a)] for a in data.ring.labels)


def s_matrix(data: SkeletalData) -> list[list[Cyclo]]:
    """The (unnormalized) S-matrix of a spherical braided datum."""
    if data.R is None:
        raise NotApplicableError("S-matrix needs R-symbols")
    if data.P is None or not is_spherical(data):
        raise NotApplicableError("S-matrix needs a spherical structure")

    def run():
        ring = data.ring
        R = data.R
        out = []
        for a in ring.labels:
            row = []
            for b in ring.labels:
                bd = ring.dual(b)
                rows, cols, M = data.block(a, bd, b, a)
                Mi = mat_inverse(M)
                # rows of M^-1 are labelled like the columns of M
                one = cols.index(1)
                total = ZERO
                for i, c in enumerate(rows):
                    total = total + Mi[one][i] * R[(bd, a, c)] * R[(a, bd, c)] * M[i][one]
                row.append(total)
            out.append(row)
        return out

    return [list(r) for r in _memo(data, "smatrix", run)]


class Unitarity(str, Enum):
    YES = "yes-in-given-gauge"
    NO = "no-in-given-gauge"
    NA = "not-applicable"


@dataclass(frozen=True)
class PropertyFlags:
    pivotal: bool
    braided: bool
    spherical: bool
    ribbon: bool
    modular: bool
    unitary: Unitarity

    def to_json(self) -> dict:
        return {
            "pivotal": self.pivotal,
            "braided": self.braided,
            "spherical": self.spherical,
            "ribbon": self.ribbon,
            "modular": self.modular,
            "unitary": self.unitary.value,
        }


def blocks_unitary(data: SkeletalData) -> bool:
    for a, b, c, d in f_blocks(data.ring):
        _, _, M = data.block(a, b, c, d)
        n = len(M)
        for i in range(n):
            for j in range(n):
                s = ZERO
                for k in range(n):
                    s = s + M[i][k] * conj(M[j][k])
                if s != (ONE if i == j else ZERO):
                    return False
    return True


def classify_properties(data: SkeletalData) -> PropertyFlags:
    pent = check_pentagon(data).passed and check_vacuum(data).passed
    pivotal = pent and data.P is not None and check_pivotal(data).passed
    braided = pent and data.R is not None and check_hexagon(data).passed
    spherical = False
    if pivotal:
        try:
            spherical = is_spherical(data)
        except InvalidDataError:
            spherical = False
    ribbon = spherical and braided
    modular = False
    if ribbon:
        modular = not det(s_matrix(data)).is_zero()
    if not pivotal:
        unitary = Unitarity.NA
    else:
        ok = spherical and blocks_unitary(data)
        if ok:
            for v in quantum_dims(data).values():
                if not is_real(v) or sign_of_real(v) <= 0:
                    ok = False
                    break
        unitary = Unitarity.YES if ok else Unitarity.NO
    return PropertyFlags(pivotal, braided, spherical, ribbon, modular, unitary)


def check_all(data: SkeletalData) -> list[VerificationReport]:
    """Vacuum and pentagon, plus hexagon and pivotal when present."""
    out = [check_vacuum(data), check_pentagon(data)]
    if data.R is not None:
        out.append(check_hexagon(data))
    if data.P is not None:
        out.append(check_pivotal(data))
    return out


def block_inverse(data: SkeletalData, a: int, b: int, c: int, d: int) -> list[list[Cyclo]]:
    _, _, M = data.block(a, b, c, d)
    return mat_inverse(M)


# -- JSON -------------------------------------------------------------------


def bundled_ring(name: str) -> FusionRing:
    path = resources.files("fusioncensus") / "data" / "rings" / f"{name}.json"
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"no bundled ring named {name!r}") from None
    return ring_from_json(json.loads(text), name=name)


def bundled_ring_names() -> list[str]:
    root = resources.files("fusioncensus") / "data" / "rings"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def ring_from_ref(obj) -> FusionRing:
    if isinstance(obj, str):
        return bundled_ring(obj)
    return ring_from_json(obj)


def _int_list(value, n: int, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or len(value) != n or not all(isinstance(x, int) for x in value):
        raise DataError(f"{what} index must be a list of {n} integers, got {value!r}")
    return tuple(value)


def _literal(entry: dict, what: str) -> Cyclo:
    v = entry.get("v")
    if isinstance(v, int):
        return Cyclo(v)
    if not isinstance(v, str):
        raise DataError(f"{what} value must be a string literal, got {v!r}")
    return parse_cyclo(v)


def data_from_json(obj: dict, name: str = "") -> SkeletalData:
    """Inverse of :func:`data_to_json`; literal errors raise ``ParseError``."""
    if not isinstance(obj, dict) or "ring" not in obj or "F" not in obj:
        raise DataError("skeletal data needs 'ring' and 'F'")
    ring = ring_from_ref(obj["ring"])
    F = {}
    for entry in obj["F"]:
        idx = _int_list(entry.get("i"), 6, "F")
        if idx in F:
            raise DataError(f"F-symbol {list(idx)} given twice")
        F[idx] = _literal(entry, "F")
    R = None
    if obj.get("R") is not None:
        R = {}
        for entry in obj["R"]:
            idx = _int_list(entry.get("i"), 3, "R")
            if idx in R:
                raise DataError(f"R-symbol {list(idx)} given twice")
            R[idx] = _literal(entry, "R")
    P = None
    if obj.get("P") is not None:
        P = {}
        for entry in obj["P"]:
            a = entry.get("a")
            if not isinstance(a, int):
                raise DataError(f"pivotal label must be an integer, got {a!r}")
            P[a] = _literal(entry, "P")
    return SkeletalData(ring, F, R, P, name=obj.get("name", name))


def data_to_json(data: SkeletalData, ring_name: Optional[str] = None) -> dict:
    out: dict = {"ring": ring_name if ring_name else ring_to_json(data.ring)}
    if data.name:
        out["name"] = data.name
    out["F"] = [{"i": list(k), "v": format_cyclo(v)} for k, v in sorted(data.F.items())]
    if data.R is not None:
        out["R"] = [{"i": list(k), "v": format_cyclo(v)} for k, v in sorted(data.R.items())]
    if data.P is not None:
        out["P"] = [{"a": k, "v": format_cyclo(v)} for k, v in sorted(data.P.items())]
    return out


def load_data(path: str) -> SkeletalData:
    with open(path, encoding="utf-8") as fh:
        return data_from_json(json.load(fh))
