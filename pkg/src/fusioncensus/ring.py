"""Multiplicity-free fusion rings."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "FusionRing",
    "RingError",
    "validate_ring",
    "fp_dims",
    "automorphisms",
    "Permutation",
    "format_permutation",
    "load_ring",
    "ring_from_json",
    "ring_to_json",
]


class RingError(ValueError):
    """A fusion-ring axiom is violated; ``where`` names the offending indices."""

    def __init__(self, axiom: str, where: tuple[int, ...], detail: str = "") -> None:
        self.axiom = axiom
        self.where = where
        msg = f"{axiom} violated at {where}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Validated ring; labels are 1-based and ``1`` is the unit.

    ``products[a-1][b-1]`` lists the labels ``c`` with ``N_{a,b}^c = 1``.
    Build instances through :func:`validate_ring`.
    """

    rank: int
    products: tuple[tuple[tuple[int, ...], ...], ...]
    dual_map: tuple[int, ...]  # dual_map[a-1] = a*
    name: str = field(default="", compare=False)

    @property
    def labels(self) -> range:
        return range(1, self.rank + 1)

    def fuse(self, a: int, b: int) -> tuple[int, ...]:
        return self.products[a - 1][b - 1]

    def N(self, a: int, b: int, c: int) -> int:
        return 1 if c in self._sets[a - 1][b - 1] else 0

    def dual(self, a: int) -> int:
        return self.dual_map[a - 1]

    @cached_property
    def _sets(self) -> tuple[tuple[frozenset[int], ...], ...]:
        return tuple(tuple(frozenset(cs) for cs in row) for row in self.products)

    @cached_property
    def is_commutative(self) -> bool:
        return all(
            self._sets[a][b] == self._sets[b][a]
            for a in range(self.rank)
            for b in range(a)
        )

    @cached_property
    def key(self) -> tuple:
        return (self.rank, self.products)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def vertices(self) -> Iterator[tuple[int, int, int]]:
        """All ``(a, b, c)`` with ``N_{a,b}^c = 1``."""
        for a in self.labels:
            for b in self.labels:
                for c in self.fuse(a, b):
                    yield a, b, c

    def n_table(self) -> np.ndarray:
        t = np.zeros((self.rank, self.rank, self.rank), dtype=np.int64)
        for a, b, c in self.vertices():
            t[a - 1, b - 1, c - 1] = 1
        return t


def validate_ring(table: Sequence[Sequence[Sequence[int]]] | np.ndarray, name: str = "") -> FusionRing:
    """Check the ring axioms exhaustively and derive the dual map.

    ``table`` is either an r x r x r array of bits ``N[a][b][c]`` (0-based)
    or the file layout: ``table[a-1][b-1]`` is the list of 1-based ``c``.
    """
    bits = _as_bits(table)
    r = bits.shape[0]
    if bits.shape != (r, r, r) or r < 1:
        raise RingError("shape", (), f"table must be cubical, got {bits.shape}")
    for a, b, c in zip(*np.nonzero(bits > 1)):
        raise RingError("multiplicity-free", (a + 1, b + 1, c + 1), f"N = {bits[a, b, c]}")
    if (bits < 0).any():
        a, b, c = (int(x) for x in np.argwhere(bits < 0)[0])
        raise RingError("nonnegativity", (a + 1, b + 1, c + 1))

    eye = np.eye(r, dtype=np.int64)
    for a in range(r):
        if not (bits[0, a] == eye[a]).all():
            raise RingError("unit", (1, a + 1), "1 x a must equal a")
        if not (bits[a, 0] == eye[a]).all():
            raise RingError("unit", (a + 1, 1), "a x 1 must equal a")

    dual = []
    for a in range(r):
        ones = np.nonzero(bits[a, :, 0])[0]
        if len(ones) != 1:
            raise RingError("dual", (a + 1,), f"{len(ones)} candidates b with 1 in a x b")
        dual.append(int(ones[0]))
    for a in range(r):
        if dual[dual[a]] != a:
            raise RingError("dual", (a + 1,), "dual is not an involution")
        if bits[dual[a], a, 0] != 1:
            raise RingError("dual", (a + 1,), "1 not in a* x a")
    if dual[0] != 0:
        raise RingError("dual", (1,), "1* must be 1")

    # (a b) c versus a (b c), coefficient of d
    left = np.einsum("abe,ecd->abcd", bits, bits)
    right = np.einsum("afd,bcf->abcd", bits, bits)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c, d = (int(x) + 1 for x in bad[0])
        raise RingError("associativity", (a, b, c, d))

    products = tuple(
        tuple(tuple(int(c) + 1 for c in np.nonzero(bits[a, b])[0]) for b in range(r))
        for a in range(r)
    )
    return FusionRing(r, products, tuple(d + 1 for d in dual), name)


def _as_bits(table) -> np.ndarray:
    if isinstance(table, np.ndarray):
        return table.astype(np.int64)
    r = len(table)
    rows = list(table)
    if rows and rows[0] and isinstance(rows[0][0], (list, tuple)):
        bits = np.zeros((r, r, r), dtype=np.int64)
        for a, row in enumerate(rows):
            if len(row) != r:
                raise RingError("shape", (a + 1,), f"row has {len(row)} entries, expected {r}")
            for b, cs in enumerate(row):
                for c in cs:
                    if not 1 <= c <= r:
                        raise RingError("shape", (a + 1, b + 1), f"label {c} out of range")
                    bits[a, b, c - 1] += 1
        return bits
    return np.asarray(table, dtype=np.int64)


def fp_dims(ring: FusionRing, tol: float = 1e-12) -> list[float]:
    """Frobenius-Perron dimensions, by power iteration.

    Iterates on ``1 + sum_a N_a``, which is primitive for a fusion ring and
    shares its Perron eigenvector with every ``N_a``.
    """
    t = ring.n_table().astype(float)
    # L_a[c, b] = N_{a,b}^c
    mats = [t[a].T for a in range(ring.rank)]
    m = np.eye(ring.rank) + sum(mats)
    v = np.ones(ring.rank)
    for _ in range(100000):
        w = m @ v
        w /= w[0]
        if np.max(np.abs(w - v)) < tol * 1e-2:
            v = w
            break
        v = w
    return [float(x) for x in v]


Permutation = tuple[int, ...]  # perm[a-1] = sigma(a)


def _classes(ring: FusionRing) -> list[tuple]:
    dims = fp_dims(ring, 1e-9)
    return [
        (ring.dual(a) == a, round(dims[a - 1], 6), len(ring.fuse(a, ring.dual(a))))
        for a in ring.labels
    ]


def _is_automorphism(ring: FusionRing, perm: Permutation) -> bool:
    for a in ring.labels:
        sa = perm[a - 1]
        for b in ring.labels:
            sb = perm[b - 1]
            img = sorted(perm[c - 1] for c in ring.fuse(a, b))
            if tuple(img) != ring.fuse(sa, sb):
                return False
    return True


def automorphisms(ring: FusionRing) -> list[Permutation]:
    """All table-preserving permutations fixing 1, identity first."""
    cls = _classes(ring)
    r = ring.rank
    out: list[Permutation] = []
    perm = [0] * r
    perm[0] = 1
    used = [False] * (r + 1)
    used[1] = True

    def extend(i: int) -> None:
        if i == r:
            p = tuple(perm)
            if _is_automorphism(ring, p):
                out.append(p)
            return
        for img in range(2, r + 1):
            if used[img] or cls[img - 1] != cls[i]:
                continue
            # partial consistency: products among already placed labels
            perm[i] = img
            if _partial_ok(ring, perm, i):
                used[img] = True
                extend(i + 1)
                used[img] = False
        perm[i] = 0

    extend(1)
    out.sort()
    return out


def _partial_ok(ring: FusionRing, perm: list[int], i: int) -> bool:
    a = i + 1
    sa = perm[i]
    for b in range(1, a + 1):
        sb = perm[b - 1]
        for x, y, sx, sy in ((a, b, sa, sb), (b, a, sb, sa)):
            target = set(ring.fuse(sx, sy))
            for c in ring.fuse(x, y):
                if c <= a and perm[c - 1] not in target:
                    return False
    return True


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p after q``."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, img in enumerate(p):
        out[img - 1] = i + 1
    return tuple(out)


def format_permutation(p: Permutation) -> str:
    """Cycle notation, e.g. ``(2 4 3 5)``; the identity is ``()``."""
    seen = set()
    cycles = []
    for start in range(1, len(p) + 1):
        if start in seen or p[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = p[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = p[nxt - 1]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def parse_permutation(text: str, rank: int) -> Permutation:
    perm = list(range(1, rank + 1))
    text = text.replace(" ", ",").strip()
    for chunk in text.split(")"):
        chunk = chunk.strip().lstrip("(").strip(",")
        if not chunk:
            continue
        items = [int(x) for x in chunk.split(",") if x]
        for x, y in zip(items, items[1:] + items[:1]):
            if not (1 <= x <= rank and 1 <= y <= rank):
                raise ValueError(f"label out of range in {text!r}")
            perm[x - 1] = y
    if sorted(perm) != list(range(1, rank + 1)):
        raise ValueError(f"not a permutation: {text!r}")
    return tuple(perm)


def ring_to_json(ring: FusionRing) -> dict:
    return {"rank": ring.rank, "table": [[list(cs) for cs in row] for row in ring.products]}


def ring_from_json(obj: dict, name: str = "") -> FusionRing:
    if not isinstance(obj, dict) or "rank" not in obj or "table" not in obj:
        raise ValueError("ring JSON needs 'rank' and 'table'")
    ring = validate_ring(obj["table"], name=obj.get("name", name))
    if ring.rank != obj["rank"]:
        raise RingError("shape", (), f"rank {obj['rank']} does not match table size {ring.rank}")
    return ring


def load_ring(path: str) -> FusionRing:
    with open(path, encoding="utf-8") as fh:
        return ring_from_json(json.load(fh))


def permutations_fixing_one(rank: int) -> Iterator[Permutation]:
    for rest in itertools.permutations(range(2, rank + 1)):
        yield (1,) + rest
