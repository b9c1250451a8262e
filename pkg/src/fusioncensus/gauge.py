"""Gauge transforms, relabelings and formal monomials in F/R/d symbols."""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .cyclo import ONE, Cyclo, from_root, inv
from .ring import FusionRing, Permutation, automorphisms, inverse
from .skeleton import (
    NotApplicableError,
    SkeletalData,
    is_f_admissible,
    quantum_dims,
)

Slot = tuple[int, int, int]  # (a, b, c) for g_c^{ab}


class UndefinedValueError(ZeroDivisionError):
    """A monomial divides by a symbol whose value is 0."""


# -- gauge transforms -------------------------------------------------------


def is_vacuum_slot(slot: Slot) -> bool:
    return slot[0] == 1 or slot[1] == 1


class GaugeTransform:
    """Values ``g_c^{ab}`` on every vertex; vacuum slots are pinned to 1."""

    def __init__(self, ring: FusionRing, values: Mapping[Slot, Cyclo] | None = None) -> None:
        self.ring = ring
        vals: dict[Slot, Cyclo] = {}
        given = dict(values or {})
        for slot in ring.vertices():
            v = Cyclo(given.pop(slot, ONE))
            if is_vacuum_slot(slot) and v != ONE:
                raise ValueError(f"gauge slot {slot} is a vacuum slot and must be 1")
            if v.is_zero():
                raise ValueError(f"gauge slot {slot} is zero")
            vals[slot] = v
        if given:
            raise ValueError(f"not a vertex of the ring: {sorted(given)[0]}")
        self.values = vals

    def __getitem__(self, slot: Slot) -> Cyclo:
        return self.values[slot]

    def __mul__(self, other: GaugeTransform) -> GaugeTransform:
        if other.ring != self.ring:
            raise ValueError("gauge transforms on different rings")
        return GaugeTransform(self.ring, {s: v * other.values[s] for s, v in self.values.items()})

    def inverse(self) -> GaugeTransform:
        return GaugeTransform(self.ring, {s: inv(v) for s, v in self.values.items()})


def f_weight(idx: tuple[int, ...]) -> Counter:
    a, b, c, d, e, f = idx
    w: Counter = Counter()
    w[(a, b, e)] += 1
    w[(e, c, d)] += 1
    w[(a, f, d)] -= 1
    w[(b, c, f)] -= 1
    return w


def r_weight(idx: tuple[int, ...]) -> Counter:
    a, b, c = idx
    w: Counter = Counter()
    w[(a, b, c)] += 1
    w[(b, a, c)] -= 1
    return w


def p_weight(ring: FusionRing, a: int) -> Counter:
    # chosen so that d_a = p_a / [F_{a*}^{a* a a*}]_1^1 is invariant
    ad = ring.dual(a)
    w: Counter = Counter()
    w[(ad, a, 1)] += 1
    w[(a, ad, 1)] -= 1
    return w


def _factor(g: GaugeTransform, w: Counter) -> Cyclo:
    out = ONE
    for slot, e in w.items():
        if e and not is_vacuum_slot(slot):
            out = out * g.values[slot] ** e
    return out


def apply_gauge(data: SkeletalData, g: GaugeTransform) -> SkeletalData:
    if g.ring != data.ring:
        raise ValueError("gauge transform and data live on different rings")
    F = {k: (v * _factor(g, f_weight(k)) if v else v) for k, v in data.F.items()}
    R = None
    if data.R is not None:
        R = {k: v * _factor(g, r_weight(k)) for k, v in data.R.items()}
    P = None
    if data.P is not None:
        P = {a: v * _factor(g, p_weight(data.ring, a)) for a, v in data.P.items()}
    return SkeletalData(data.ring, F, R, P, name=data.name)


def random_gauge(ring: FusionRing, seed: int, max_order: int = 24) -> GaugeTransform:
    """Roots of unity of order dividing ``max_order`` on every non-vacuum slot."""
    rng = random.Random(seed)
    vals = {}
    for slot in sorted(ring.vertices()):
        if is_vacuum_slot(slot):
            continue
        vals[slot] = from_root(max_order, rng.randrange(max_order))
    return GaugeTransform(ring, vals)


def _check_automorphism(ring: FusionRing, sigma: Permutation) -> None:
    if len(sigma) != ring.rank or sigma not in set(automorphisms(ring)):
        raise ValueError(f"{sigma} is not an automorphism of the ring")


def apply_permutation(data: SkeletalData, sigma: Permutation) -> SkeletalData:
    """Relabel: the new value at slot ``sigma(x)`` is the old value at ``x``."""
    _check_automorphism(data.ring, sigma)
    s = lambda x: sigma[x - 1]  # noqa: E731
    F = {tuple(map(s, k)): v for k, v in data.F.items()}
    R = None if data.R is None else {tuple(map(s, k)): v for k, v in data.R.items()}
    P = None if data.P is None else {s(a): v for a, v in data.P.items()}
    return SkeletalData(data.ring, F, R, P, name=data.name)


# -- formal monomials -------------------------------------------------------


@dataclass(frozen=True, order=True)
class FSym:
    idx: tuple[int, int, int, int, int, int]

    def __str__(self) -> str:
        return "F[" + ",".join(map(str, self.idx)) + "]"


@dataclass(frozen=True, order=True)
class RSym:
    idx: tuple[int, int, int]

    def __str__(self) -> str:
        return "R[" + ",".join(map(str, self.idx)) + "]"


@dataclass(frozen=True, order=True)
class QDim:
    a: int

    def __str__(self) -> str:
        return f"d[{self.a}]"


FormalSymbol = Union[FSym, RSym, QDim]


def _sym_key(s: FormalSymbol) -> tuple:
    order = {FSym: 0, RSym: 1, QDim: 2}[type(s)]
    idx = s.idx if not isinstance(s, QDim) else (s.a,)
    return (order, idx)


class FormalMonomial:
    """A product of formal symbols with nonzero integer exponents."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Mapping[FormalSymbol, int] | Iterable[tuple[FormalSymbol, int]] = ()) -> None:
        acc: Counter = Counter()
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        for sym, e in items:
            acc[sym] += e
        self.exponents: tuple[tuple[FormalSymbol, int], ...] = tuple(
            sorted(((s, e) for s, e in acc.items() if e), key=lambda t: _sym_key(t[0]))
        )

    @classmethod
    def of(cls, sym: FormalSymbol, e: int = 1) -> FormalMonomial:
        return cls({sym: e})

    def __mul__(self, other: FormalMonomial) -> FormalMonomial:
        return FormalMonomial(list(self.exponents) + list(other.exponents))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormalMonomial) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __lt__(self, other: FormalMonomial) -> bool:
        key = lambda m: [(_sym_key(s), e) for s, e in m.exponents]  # noqa: E731
        return key(self) < key(other)

    def __str__(self) -> str:
        return format_monomial(self)

    def __repr__(self) -> str:
        return f"FormalMonomial({format_monomial(self)!r})"

    def symbols(self) -> list[FormalSymbol]:
        return [s for s, _ in self.exponents]

    def mentions_r(self) -> bool:
        return any(isinstance(s, RSym) for s, _ in self.exponents)

    def mentions_d(self) -> bool:
        return any(isinstance(s, QDim) for s, _ in self.exponents)


class MonomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        self.offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset} in {text!r}")


_FACTOR = re.compile(r"\s*([FRd])\s*\[\s*([-\d\s,]*?)\s*\]\s*(?:\^\s*([-+]?\d+))?\s*")


def parse_monomial(text: str) -> FormalMonomial:
    """Parse ``F[a,b,c,d,e,f]^k * R[a,b,c] * d[a]``; ``1`` is the empty product."""
    if text.strip() == "1":
        return FormalMonomial()
    pos = 0
    items = []
    while True:
        m = _FACTOR.match(text, pos)
        if not m:
            raise MonomialSyntaxError("expected F[...], R[...] or d[...]", text, pos)
        kind, body, exp = m.group(1), m.group(2), m.group(3)
        try:
            idx = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise MonomialSyntaxError("bad index list", text, m.start(2)) from None
        want = {"F": 6, "R": 3, "d": 1}[kind]
        if len(idx) != want:
            raise MonomialSyntaxError(f"{kind} takes {want} indices", text, m.start(2))
        sym = FSym(idx) if kind == "F" else RSym(idx) if kind == "R" else QDim(idx[0])
        items.append((sym, int(exp) if exp else 1))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "*":
            raise MonomialSyntaxError("expected '*'", text, pos)
        pos += 1
    return FormalMonomial(items)


def format_monomial(m: FormalMonomial) -> str:
    if not m.exponents:
        return "1"
    return " * ".join(str(s) + ("" if e == 1 else f"^{e}") for s, e in m.exponents)


def check_admissible(m: FormalMonomial, ring: FusionRing) -> None:
    for s in m.symbols():
        if isinstance(s, FSym):
            ok = is_f_admissible(ring, s.idx)
        elif isinstance(s, RSym):
            a, b, c = s.idx
            ok = all(1 <= x <= ring.rank for x in s.idx) and bool(ring.N(a, b, c))
        else:
            ok = 1 <= s.a <= ring.rank
        if not ok:
            raise ValueError(f"{s} is not admissible for this ring")


GaugeWeight = dict[Slot, int]


def gauge_weight(m: FormalMonomial) -> GaugeWeight:
    """Net exponent of each non-vacuum ``g_c^{ab}`` picked up by ``m``."""
    total: Counter = Counter()
    for s, e in m.exponents:
        if isinstance(s, FSym):
            w = f_weight(s.idx)
        elif isinstance(s, RSym):
            w = r_weight(s.idx)
        else:
            continue
        for slot, k in w.items():
            total[slot] += k * e
    return {slot: k for slot, k in sorted(total.items()) if k and not is_vacuum_slot(slot)}


def is_de_jure_invariant(m: FormalMonomial) -> bool:
    return not gauge_weight(m)


def _symbol_value(s: FormalSymbol, data: SkeletalData, dims: Optional[dict[int, Cyclo]]) -> Cyclo:
    if isinstance(s, FSym):
        return data.f(*s.idx)
    if isinstance(s, RSym):
        if data.R is None:
            raise NotApplicableError(f"{s} needs R-symbols")
        return data.R[s.idx]
    if dims is None:
        raise NotApplicableError(f"{s} needs pivotal coefficients")
    return dims[s.a]


def evaluate_monomial(m: FormalMonomial, data: SkeletalData) -> Cyclo:
    dims = quantum_dims(data) if m.mentions_d() and data.P is not None else None
    vals = [(s, _symbol_value(s, data, dims), e) for s, e in m.exponents]
    for s, v, e in vals:
        if e < 0 and v.is_zero():
            raise UndefinedValueError(f"{s} is 0 but appears with exponent {e}")
    out = ONE
    for _, v, e in vals:
        out = out * v**e
    return out


def is_de_facto_invariant(m: FormalMonomial, data: SkeletalData) -> bool:
    """De jure, or forced to 0 by a vanishing numerator symbol."""
    if is_de_jure_invariant(m):
        return True
    dims = quantum_dims(data) if m.mentions_d() and data.P is not None else None
    vals = [(_symbol_value(s, data, dims), e) for s, e in m.exponents]
    if any(e < 0 and v.is_zero() for v, e in vals):
        raise UndefinedValueError(f"{format_monomial(m)} divides by zero")
    return any(e > 0 and v.is_zero() for v, e in vals)


def permute_symbol(sigma: Permutation, s: FormalSymbol) -> FormalSymbol:
    p = lambda x: sigma[x - 1]  # noqa: E731
    if isinstance(s, FSym):
        return FSym(tuple(map(p, s.idx)))
    if isinstance(s, RSym):
        return RSym(tuple(map(p, s.idx)))
    return QDim(p(s.a))


def permute_monomial(sigma: Permutation, m: FormalMonomial, ring: Optional[FusionRing] = None) -> FormalMonomial:
    if ring is not None:
        _check_automorphism(ring, sigma)
    return FormalMonomial([(permute_symbol(sigma, s), e) for s, e in m.exponents])


def inverse_permutation(sigma: Permutation) -> Permutation:
    return inverse(sigma)
