"""Binary codes describing 2-divisible sets of disjoint (-2)-curves.

Positions are numbered 1..m in the public interface.  Internally a word is
an ``int`` bitmask whose bit ``i - 1`` marks position ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, ResourceError, ShapeError, UnknownIdentifierError
from .exactlin import IntMatrix
from . import lattice as lt

MAX_DIMENSION = 20


def weight(w: int) -> int:
    return w.bit_count()


def word_from_positions(positions: Iterable[int]) -> int:
    w = 0
    for p in positions:
        w |= 1 << (p - 1)
    return w


def positions_of(w: int) -> tuple[int, ...]:
    out, i = [], 1
    while w:
        if w & 1:
            out.append(i)
        w >>= 1
        i += 1
    return tuple(out)


def word_to_bits(w: int, m: int) -> list[int]:
    return [(w >> i) & 1 for i in range(m)]


def gf2_rank(words: Iterable[int]) -> int:
    basis: list[int] = []
    for w in words:
        for b in basis:
            w = min(w, w ^ b)
        if w:
            basis.append(w)
    return len(basis)


@dataclass(frozen=True)
class BinaryCode:
    m: int
    generators: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(int(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if any(g < 0 or g >> self.m for g in gens):
            raise ShapeError(f"generator does not fit in {self.m} positions")
        if gf2_rank(gens) != len(gens):
            raise ShapeError("generators are linearly dependent over GF(2)")

    @classmethod
    def from_positions(cls, m: int, rows: Iterable[Iterable[int]]) -> "BinaryCode":
        return cls(m, tuple(word_from_positions(r) for r in rows))

    @classmethod
    def from_bits(cls, m: int, rows: Iterable[Sequence[int]]) -> "BinaryCode":
        rows = [list(r) for r in rows]
        if any(len(r) != m for r in rows):
            raise ShapeError("bit row length differs from m")
        return cls(m, tuple(sum(int(b) << i for i, b in enumerate(r)) for r in rows))

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def extend(self, w: int) -> "BinaryCode":
        return BinaryCode(self.m, self.generators + (w,))

    def to_json(self) -> dict:
        return {"m": self.m, "generators": [word_to_bits(g, self.m) for g in self.generators]}

    @classmethod
    def from_json(cls, obj: dict) -> "BinaryCode":
        return cls.from_bits(obj["m"], obj["generators"])


def codewords(code: BinaryCode) -> list[int]:
    """All ``2**dim`` codewords, starting with the zero word."""
    if code.dimension > MAX_DIMENSION:
        raise ResourceError(f"code dimension {code.dimension} exceeds {MAX_DIMENSION}")
    words = [0]
    for g in code.generators:
        words += [w ^ g for w in words]
    return words


@dataclass(frozen=True)
class Violation:
    words: tuple[int, ...]
    rule: str

    def describe(self) -> str:
        parts = ["{" + ",".join(map(str, positions_of(w))) + "}" for w in self.words]
        return f"{self.rule}: {' & '.join(parts)}"


@dataclass(frozen=True)
class EvenSetVerdict:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def validate_even_code(code: BinaryCode) -> EvenSetVerdict:
    """Weight law (8 or 16) and the 0-or-4 intersection law for weight-8 words."""
    words = codewords(code)[1:]
    bad: list[Violation] = []
    for w in words:
        if weight(w) not in (8, 16):
            bad.append(Violation((w,), f"weight {weight(w)} not in {{8,16}}"))
    eights = [w for w in words if weight(w) == 8]
    for a, b in combinations(eights, 2):
        k = weight(a & b)
        if k not in (0, 4):
            bad.append(Violation((a, b), f"intersection {k} not in {{0,4}}"))
    return EvenSetVerdict(tuple(bad))


# the five codes, with positions exactly as in the definitions of the lattices
_GLUE_ROWS = (
    tuple(range(1, 9)),
    tuple(range(5, 13)),
    (1, 2, 5, 6, 9, 10, 13, 14),
    (1, 3, 5, 7, 9, 11, 13, 15),
)

CODE_IDS = ("M_2e1", "M_2e2", "M_2e3", "M_2e4", "K")
_CODE_LENGTH = {"M_2e1": 8, "M_2e2": 12, "M_2e3": 14, "M_2e4": 15, "K": 16}


def glue_rows(j: int) -> tuple[tuple[int, ...], ...]:
    """First ``j`` of the cumulative half-sum patterns (1-based positions)."""
    if not 0 <= j <= 4:
        raise DomainError("j must be in 0..4")
    return _GLUE_ROWS[:j]


def code_of(code_id: str) -> BinaryCode:
    if code_id not in _CODE_LENGTH:
        raise UnknownIdentifierError(code_id)
    m = _CODE_LENGTH[code_id]
    if code_id == "K":
        return BinaryCode.from_positions(16, _GLUE_ROWS + (tuple(range(1, 17)),))
    return BinaryCode.from_positions(m, _GLUE_ROWS[: CODE_IDS.index(code_id) + 1])


def lattice_from_code(code: BinaryCode, name: str = "") -> lt.Lattice:
    """``<-2>^m`` glued by the half sums of the code generators."""
    base = lt.from_gram(IntMatrix.diagonal([-2] * code.m), [f"R{i}" for i in range(1, code.m + 1)], name)
    glue = [lt.GlueVector.half_sum(code.m, [p - 1 for p in positions_of(g)]) for g in code.generators]
    return lt.glue_overlattice(base, glue, name=name)


@dataclass(frozen=True)
class LatticeDescriptor:
    """Direct sum of an even-set lattice (or nothing) and copies of <-2>."""

    code_id: str | None
    extra: int

    @property
    def rank(self) -> int:
        return (_CODE_LENGTH[self.code_id] if self.code_id else 0) + self.extra

    @property
    def name(self) -> str:
        parts = [self.code_id] if self.code_id else []
        if self.extra:
            parts.append(f"<-2>^{self.extra}")
        return "+".join(parts)

    def build(self) -> lt.Lattice:
        base = lattice_from_code(code_of(self.code_id), self.code_id) if self.code_id else None
        if self.extra:
            tail = lt.from_gram(IntMatrix.diagonal([-2] * self.extra),
                                [f"R{i}" for i in range(self.rank - self.extra + 1, self.rank + 1)])
            base = tail if base is None else lt.direct_sum(base, tail)
        return lt.Lattice(base.gram, base.labels, base.ambient, base.ambient_labels, base.basis,
                          base.glue, self.name, base.glue_index)


def minimal_primitive_options(m: int) -> list[LatticeDescriptor]:
    """Possible minimal primitive lattices containing ``m`` disjoint (-2)-curves.

    Overlapping ranges are kept, so e.g. m = 12 has two options.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    out = []
    if m <= 11:
        out.append(LatticeDescriptor(None, m))
    if 8 <= m <= 12:
        out.append(LatticeDescriptor("M_2e1", m - 8))
    if 12 <= m <= 13:
        out.append(LatticeDescriptor("M_2e2", m - 12))
    if m == 14:
        out.append(LatticeDescriptor("M_2e3", 0))
    if m == 15:
        out.append(LatticeDescriptor("M_2e4", 0))
    if m == 16:
        out.append(LatticeDescriptor("K", 0))
    return out


def minimal_code_dimension(m: int) -> int | None:
    """Smallest code dimension among the options for ``m`` curves; None if impossible."""
    opts = minimal_primitive_options(m)
    if not opts:
        return None
    return min(CODE_IDS.index(o.code_id) + 1 if o.code_id else 0 for o in opts)


# -- equivalence up to coordinate permutation -------------------------------

def invariant_signature(code: BinaryCode) -> tuple:
    """Cheap permutation invariant: weight distribution and column weights."""
    words = codewords(code)
    cols = []
    for p in range(code.m):
        cols.append(tuple(sorted(weight(w) for w in words if w >> p & 1)))
    return (code.m, len(words), tuple(sorted(weight(w) for w in words)), tuple(sorted(cols)))


def _columns(m: int, basis: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(tuple(b >> p & 1 for b in basis) for p in range(m))


def equivalent(a: BinaryCode, b: BinaryCode) -> bool:
    """Whether two codes agree up to a permutation of positions.

    Searches for a basis of ``b`` whose subset sums have the same weights
    as those of the generators of ``a``; the column multisets are then
    compared, so this is an exact test.
    """
    if invariant_signature(a) != invariant_signature(b):
        return False
    gens, k = a.generators, a.dimension
    target = _columns(a.m, gens)
    pool = codewords(b)[1:]

    def search(chosen: list[int], sums_a: list[int], sums_b: list[int]) -> bool:
        i = len(chosen)
        if i == k:
            return _columns(b.m, chosen) == target
        g = gens[i]
        new_a = [s ^ g for s in sums_a]
        for w in pool:
            if weight(w) != weight(g) or w in sums_b:
                continue
            new_b = [s ^ w for s in sums_b]
            if all(weight(x) == weight(y) for x, y in zip(new_a, new_b)):
                if search(chosen + [w], sums_a + new_a, sums_b + new_b):
                    return True
        return False

    return search([], [0], [0])


def canonical_columns(code: BinaryCode) -> tuple[tuple[int, ...], ...]:
    """Columns sorted by incidence pattern, as a quick display normal form."""
    cols = sorted(tuple(g >> p & 1 for g in code.generators) for p in range(code.m))
    return tuple(cols)
