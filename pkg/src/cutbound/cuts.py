"""Cuts, weighted cut collections, and their l1 pseudometrics.

A nonnegative weighting of vertex subsets defines the pseudometric

    dist(x, y) = sum over atoms of weight * |1_S(x) - 1_S(y)|,

which embeds isometrically in l1 (one coordinate per atom).  Every embedding
this package produces is such a measure, so distances stay exact rationals
end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .rationals import format_rational, parse_rational


@dataclass(frozen=True)
class Cut:
    members: frozenset[int]
    universe_size: int

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for v in self.members:
            if not 0 <= v < self.universe_size:
                raise InputError(f"cut member {v} outside universe of size {self.universe_size}")

    def indicator(self, v: int) -> int:
        return 1 if v in self.members else 0

    def separates(self, x: int, y: int) -> bool:
        return (x in self.members) != (y in self.members)

    @property
    def is_nontrivial(self) -> bool:
        return 0 < len(self.members) < self.universe_size

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


@dataclass(frozen=True)
class CutMeasure:
    """Finite list of (cut, nonnegative weight) atoms over one universe.

    Duplicate cuts are legal in storage; `normalized()` merges them.  Atom
    order is part of the value so constructions stay deterministic.
    """

    universe_size: int
    atoms: tuple[tuple[Cut, Fraction], ...]

    def __post_init__(self):
        checked = []
        for cut, weight in self.atoms:
            if cut.universe_size != self.universe_size:
                raise InputError("all cuts of a measure must share its universe size")
            weight = Fraction(weight)
            if weight < 0:
                raise InputError("cut weights must be nonnegative")
            checked.append((cut, weight))
        object.__setattr__(self, "atoms", tuple(checked))

    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    def scaled(self, factor: Fraction) -> "CutMeasure":
        factor = Fraction(factor)
        if factor < 0:
            raise InputError("measure scale factor must be nonnegative")
        return CutMeasure(
            self.universe_size,
            tuple((cut, w * factor) for cut, w in self.atoms),
        )

    def normalized(self, drop_trivial: bool = False) -> "CutMeasure":
        """Merge duplicate cuts and drop zero-weight atoms.

        With drop_trivial=True, empty and full cuts are removed as well;
        they never contribute to any distance.
        """
        merged: dict[frozenset[int], Fraction] = {}
        order: list[frozenset[int]] = []
        for cut, w in self.atoms:
            if w == 0:
                continue
            if drop_trivial and not cut.is_nontrivial:
                continue
            if cut.members not in merged:
                merged[cut.members] = Fraction(0)
                order.append(cut.members)
            merged[cut.members] += w
        return CutMeasure(
            self.universe_size,
            tuple((Cut(m, self.universe_size), merged[m]) for m in order),
        )

    def to_json(self) -> dict:
        return {
            "universe_size": self.universe_size,
            "atoms": [
                {"cut": cut.sorted_members(), "weight": format_rational(w)}
                for cut, w in self.atoms
            ],
        }


def measure_from_json(doc: dict) -> CutMeasure:
    if not isinstance(doc, dict) or "universe_size" not in doc or "atoms" not in doc:
        raise InputError("cut measure document needs 'universe_size' and 'atoms'")
    size = doc["universe_size"]
    if not isinstance(size, int) or size < 1:
        raise InputError("'universe_size' must be a positive integer")
    atoms = []
    for entry in doc["atoms"]:
        cut = Cut(frozenset(entry["cut"]), size)
        weight = parse_rational(entry["weight"])
        if weight < 0:
            raise InputError("cut weights must be nonnegative")
        atoms.append((cut, weight))
    return CutMeasure(size, tuple(atoms))


def cut_pseudometric(m: CutMeasure, x: int, y: int) -> Fraction:
    """sum of weight * |1_S(x) - 1_S(y)| over the atoms of `m`."""
    for v in (x, y):
        if not 0 <= v < m.universe_size:
            raise InputError(f"vertex {v} outside universe of size {m.universe_size}")
    if x == y:
        return Fraction(0)
    total = Fraction(0)
    for cut, w in m.atoms:
        if cut.separates(x, y):
            total += w
    return total


def materialize_coordinates(m: CutMeasure) -> list[list[Fraction]]:
    """One l1 coordinate per atom: vertex v gets weight * 1_S(v).

    The l1 distance between the vectors of x and y is exactly
    cut_pseudometric(m, x, y), making the embedding isometric on the measure's
    pseudometric.
    """
    vectors = [[Fraction(0)] * len(m.atoms) for _ in range(m.universe_size)]
    for idx, (cut, w) in enumerate(m.atoms):
        for v in cut.members:
            vectors[v][idx] = w
    return vectors


def l1_distance(a: list[Fraction], b: list[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise InputError("l1 distance requires equal-length vectors")
    return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0))
