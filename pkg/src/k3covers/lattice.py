"""Even integral lattices given by Gram matrices.

A :class:`Lattice` remembers how it was built: an *ambient* Gram matrix on
a fixed set of generators (``ambient_labels``) together with the rational
coordinates of its current Z-basis inside that ambient space.  Glue
vectors are always written in ambient coordinates, so a chain of
overlattices can be described with the original labels (``d``, ``r1``,
...) no matter how the Hermite saturation rearranged the basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, prod
from typing import Iterable, Sequence

from . import exactlin as xl
from .errors import DegenerateLatticeError, DomainError, InvalidGlueError, ShapeError
from .exactlin import IntMatrix


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mod2(x: Fraction) -> Fraction:
    """Reduce a rational into [0, 2)."""
    x = Fraction(x)
    return x - 2 * (x.numerator // (2 * x.denominator))


def mod1(x: Fraction) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class DualVector:
    """Element of the dual lattice, in coordinates of the lattice basis."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))


@dataclass(frozen=True)
class GlueVector:
    """Rational vector in ambient coordinates proposed for gluing."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in self.coords))

    @classmethod
    def half_sum(cls, size: int, positions: Iterable[int]) -> "GlueVector":
        v = [Fraction(0)] * size
        for p in positions:
            v[p] += Fraction(1, 2)
        return cls(tuple(v))


@dataclass(frozen=True)
class TwoElementaryInvariants:
    r: int
    a: int
    delta: int

    def __iter__(self):
        return iter((self.r, self.a, self.delta))


@dataclass(frozen=True)
class Lattice:
    gram: IntMatrix
    labels: tuple[str, ...]
    ambient: IntMatrix
    ambient_labels: tuple[str, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    glue: tuple[GlueVector, ...] = ()
    name: str = ""
    glue_index: int = 1
    # derived, filled in __post_init__
    det: int = field(init=False, compare=False)
    even: bool = field(init=False, compare=False)
    signature: tuple[int, int, int] = field(init=False, compare=False)

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ShapeError("Gram matrix must be symmetric")
        if len(self.labels) != self.gram.nrows:
            raise ShapeError("one label per basis vector required")
        object.__setattr__(self, "det", xl.determinant(self.gram))
        object.__setattr__(self, "even", all(self.gram[i, i] % 2 == 0 for i in range(self.rank)))
        object.__setattr__(self, "signature", xl.inertia(self.gram))

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @property
    def degenerate(self) -> bool:
        return self.det == 0

    def _basis_inverse(self):
        cached = self.__dict__.get("_binv")
        if cached is None:
            cached = xl.rational_inverse(self.basis)
            object.__setattr__(self, "_binv", cached)
        return cached

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coordinates of an ambient vector with respect to the lattice basis."""
        if len(v) != self.ambient.nrows:
            raise ShapeError("vector length does not match ambient dimension")
        return xl.vec_mat([_frac(x) for x in v], self._basis_inverse())

    def contains(self, v: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def pairing(self, u: Sequence, v: Sequence) -> Fraction:
        """Bilinear form of two ambient vectors."""
        return xl.bilinear([_frac(x) for x in u], self.ambient, [_frac(x) for x in v])

    def to_ambient(self, coords: Sequence) -> list[Fraction]:
        return xl.vec_mat([_frac(c) for c in coords], self.basis)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "labels": list(self.ambient_labels),
            "gram": self.ambient.tolist(),
            "glue": [[format_rational(c) for c in g.coords] for g in self.glue],
        }


def _identity_basis(n: int):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def from_gram(gram, labels: Sequence[str] | None = None, name: str = "") -> Lattice:
    gram = xl.as_matrix(gram)
    if not gram.is_symmetric():
        raise ShapeError("Gram matrix must be symmetric")
    labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(gram.nrows))
    return Lattice(gram, labels, gram, labels, _identity_basis(gram.nrows), name=name)


def from_json(obj: dict) -> Lattice:
    """Build a lattice from ``{"name", "labels", "gram", "glue"}``."""
    gram = IntMatrix(obj["gram"])
    L = from_gram(gram, obj.get("labels"), obj.get("name", ""))
    glue = [GlueVector(tuple(_frac(x) for x in g)) for g in obj.get("glue", [])]
    if glue:
        L = glue_overlattice(L, glue)
    return L


def direct_sum(L1: Lattice, L2: Lattice, name: str = "") -> Lattice:
    n1, n2 = L1.ambient.nrows, L2.ambient.nrows
    zero1, zero2 = (Fraction(0),) * n2, (Fraction(0),) * n1
    basis = tuple(tuple(b) + zero1 for b in L1.basis) + tuple(zero2 + tuple(b) for b in L2.basis)
    glue = tuple(GlueVector(g.coords + zero1) for g in L1.glue) + tuple(
        GlueVector(zero2 + g.coords) for g in L2.glue
    )
    return Lattice(
        IntMatrix.block_diagonal(L1.gram, L2.gram),
        L1.labels + L2.labels,
        IntMatrix.block_diagonal(L1.ambient, L2.ambient),
        L1.ambient_labels + L2.ambient_labels,
        basis,
        glue,
        name or (f"{L1.name}+{L2.name}" if L1.name and L2.name else ""),
        L1.glue_index * L2.glue_index,
    )


def rescale(L: Lattice, k: int, name: str = "") -> Lattice:
    if k == 0:
        raise DomainError("rescaling factor must be nonzero")
    return Lattice(
        L.gram.scale(k), L.labels, L.ambient.scale(k), L.ambient_labels, L.basis, L.glue,
        name or (f"{L.name}({k})" if L.name else ""), L.glue_index,
    )


def _require_nondegenerate(L: Lattice):
    if L.degenerate:
        raise DegenerateLatticeError(f"lattice {L.name or ''} is degenerate (det 0)".replace("  ", " "))


def discriminant(L: Lattice) -> int:
    _require_nondegenerate(L)
    return L.det


@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite quadratic module ``L^vee / L``."""

    elementary_divisors: tuple[int, ...]
    generators: tuple[DualVector, ...]
    qvalues: tuple[Fraction, ...]
    gram: IntMatrix = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.elementary_divisors)

    @property
    def length(self) -> int:
        return len(self.elementary_divisors)

    def q(self, x: DualVector | Sequence) -> Fraction:
        c = x.coords if isinstance(x, DualVector) else [Fraction(t) for t in x]
        return mod2(xl.bilinear(c, self.gram, c))

    def b(self, x: DualVector | Sequence, y: DualVector | Sequence) -> Fraction:
        cx = x.coords if isinstance(x, DualVector) else [Fraction(t) for t in x]
        cy = y.coords if isinstance(y, DualVector) else [Fraction(t) for t in y]
        return mod1(xl.bilinear(cx, self.gram, cy))

    def is_two_elementary(self) -> bool:
        return all(d == 2 for d in self.elementary_divisors)


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    _require_nondegenerate(L)
    snf = xl.smith_normal_form(L.gram)
    n = L.rank
    divs, gens, qs = [], [], []
    for i, d in enumerate(snf.diagonal):
        if d <= 1:
            continue
        # column i of V over d_i; see U G V = D  =>  G^{-1} U^{-1} e_i = V e_i / d_i
        g = DualVector(tuple(Fraction(snf.V[k, i], d) for k in range(n)))
        divs.append(d)
        gens.append(g)
        qs.append(mod2(xl.bilinear(g.coords, L.gram, g.coords)))
    return DiscriminantGroup(tuple(divs), tuple(gens), tuple(qs), L.gram)


def length(L: Lattice) -> int:
    return discriminant_group(L).length


def two_elementary_invariants(L: Lattice) -> TwoElementaryInvariants | None:
    """``(r, a, delta)`` or ``None`` when the discriminant group is not 2-elementary."""
    A = discriminant_group(L)
    if not A.is_two_elementary():
        return None
    # for 2-elementary groups 2b(x, y) is integral, so checking generators suffices
    delta = 0 if all(q.denominator == 1 for q in A.qvalues) else 1
    return TwoElementaryInvariants(L.rank, A.length, delta)


def _admit(current: Lattice, g: GlueVector) -> None:
    for b in current.basis:
        p = current.pairing(g.coords, b)
        if p.denominator != 1:
            raise InvalidGlueError(
                f"glue vector {[format_rational(c) for c in g.coords]} has non-integral pairing {format_rational(p)}"
            )
    norm = current.pairing(g.coords, g.coords)
    if norm.denominator != 1 or norm.numerator % 2:
        raise InvalidGlueError(
            f"glue vector {[format_rational(c) for c in g.coords]} has norm {format_rational(norm)}, not an even integer"
        )


def _saturate(L: Lattice, extra: Sequence[GlueVector]) -> tuple[tuple[Fraction, ...], ...]:
    rows = [list(b) for b in L.basis] + [list(g.coords) for g in extra]
    D = xl.common_denominator(x for r in rows for x in r)
    H = xl.hermite_rows([[int(x * D) for x in r] for r in rows])
    return tuple(tuple(Fraction(x, D) for x in r) for r in H)


def glue_overlattice(L: Lattice, glue: Sequence[GlueVector | Sequence], name: str = "") -> Lattice:
    """Overlattice generated by ``L`` and the glue vectors (ambient coordinates).

    Glue vectors are absorbed one at a time; each must pair integrally
    with the lattice built so far and have even norm.  A vector already
    in the lattice contributes index 1.
    """
    current = L
    for g in glue:
        if not isinstance(g, GlueVector):
            g = GlueVector(tuple(g))
        if len(g.coords) != L.ambient.nrows:
            raise ShapeError("glue vector length does not match ambient dimension")
        _admit(current, g)
        if current.contains(g.coords):
            current = Lattice(current.gram, current.labels, current.ambient, current.ambient_labels,
                              current.basis, current.glue + (g,), current.name, current.glue_index)
            continue
        basis = _saturate(current, [g])
        gram_rows = [[current.pairing(u, v) for v in basis] for u in basis]
        if any(x.denominator != 1 for r in gram_rows for x in r):
            raise InvalidGlueError("saturated span is not integral")
        gram = IntMatrix([[int(x) for x in r] for r in gram_rows])
        new = Lattice(
            gram, tuple(f"b{i + 1}" for i in range(len(basis))), current.ambient,
            current.ambient_labels, basis, current.glue + (g,), current.name,
        )
        idx2 = Fraction(current.det, new.det)
        idx = isqrt(int(idx2))
        if idx * idx != idx2:
            raise InvalidGlueError("index is not an integer")
        object.__setattr__(new, "glue_index", current.glue_index * idx)
        if not new.even:
            raise InvalidGlueError("overlattice is not even")
        current = new
    if name:
        object.__setattr__(current, "name", name)
    return current


def index_over(big: Lattice, small: Lattice) -> int:
    """Index ``[big : small]`` for nested nondegenerate lattices of equal rank."""
    ratio = Fraction(small.det, big.det)
    idx = isqrt(int(ratio))
    if ratio.denominator != 1 or idx * idx != ratio:
        raise DomainError("lattices are not nested of finite index")
    return idx


def abelian_invariants(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors (divisibility chain, 1s dropped) of a product of cyclic groups."""
    prime_powers: dict[int, list[int]] = {}
    for n in orders:
        n = abs(n)
        p = 2
        while n > 1:
            if p * p > n:
                p = n
            if n % p == 0:
                e = 1
                n //= p
                while n % p == 0:
                    n //= p
                    e += 1
                prime_powers.setdefault(p, []).append(p ** e)
            p += 1
    if not prime_powers:
        return ()
    width = max(len(v) for v in prime_powers.values())
    factors = [1] * width
    for powers in prime_powers.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[width - 1 - i] *= q
    return tuple(f for f in factors if f > 1)
