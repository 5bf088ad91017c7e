"""Invariants of smooth double covers of K3 surfaces.

A branch configuration is the multiset of genera of the ``n`` disjoint
smooth branch curves.  ``L`` is the class with ``2L`` equal to the branch
locus, so ``L^2 = (sum of C_i^2) / 4`` and each curve contributes
``C_i^2 = 2 g_i - 2``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import k3lattices as k3
from . import lattice as lt
from .errors import DomainError, InadmissibleError, InvalidGlueError


# -- data types ----------------------------------------------------------------

@dataclass(frozen=True)
class BranchConfig:
    genera: tuple[int, ...]

    def __post_init__(self):
        g = tuple(sorted((int(x) for x in self.genera), reverse=True))
        if not g:
            raise DomainError("a branch configuration needs at least one curve")
        if g[-1] < 0:
            raise DomainError("genera must be non-negative")
        object.__setattr__(self, "genera", g)

    @classmethod
    def of(cls, genera: Iterable[int]) -> "BranchConfig":
        return cls(tuple(genera))

    @classmethod
    def parse(cls, text: str) -> "BranchConfig":
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError as exc:
            raise DomainError(f"cannot parse genera {text!r}") from exc

    @property
    def n(self) -> int:
        return len(self.genera)

    @property
    def gC(self) -> int:
        return self.genera[0]


@dataclass(frozen=True)
class Invariants:
    chi: int
    c1sq: int
    c2: int
    pg: int | None = None
    q: int | None = None

    def noether_ok(self) -> bool:
        return self.c1sq + self.c2 == 12 * self.chi

    def hodge_ok(self) -> bool:
        if self.pg is None or self.q is None:
            return True
        return self.pg - self.q + 1 == self.chi

    def to_json(self) -> dict:
        return {"chi": self.chi, "pg": self.pg, "q": self.q, "c1sq": self.c1sq, "c2": self.c2}


INADMISSIBLE_REASONS = ("genus-zero-count", "congruence", "bound", "parity", "genus", "h-bound")


@dataclass(frozen=True)
class Inadmissible:
    reason: str
    text: str

    def __post_init__(self):
        if self.reason not in INADMISSIBLE_REASONS:
            raise ValueError(f"unknown reason {self.reason}")

    def to_json(self) -> dict:
        return {"admissible": False, "reason": self.reason, "text": self.text}


@dataclass
class CoverReport:
    case: str  # GenusZero | GenusOne | GeneralType
    n: int
    k: int
    h: int
    gC: int
    L2: int
    h0: int | None
    X: Invariants
    Xmin: Invariants
    kodaira: str
    gA: int | None = None
    notes: list[str] = field(default_factory=list)
    printed_X: Invariants | None = None

    def to_json(self) -> dict:
        out = {
            "case": self.case, "n": self.n, "k": self.k, "h": self.h, "gC": self.gC,
            "L2": self.L2, "X": self.X.to_json(), "Xmin": self.Xmin.to_json(),
            "kodaira": self.kodaira, "gA": self.gA, "notes": list(self.notes),
        }
        if self.printed_X is not None:
            out["X_printed"] = self.printed_X.to_json()
        return out


# -- formulas ------------------------------------------------------------------

def invariants_of_X(L2: int, h0: int | None) -> Invariants:
    """Invariants of X from L^2 and h^0(L); p_g and q are None if h0 is None."""
    if L2 % 2:
        raise DomainError(f"L^2 = {L2} is odd; classes on a K3 surface have even square")
    pg = None if h0 is None else 1 + h0
    q = None if h0 is None else -2 - L2 // 2 + h0
    return Invariants(4 + L2 // 2, 2 * L2, 48 + 4 * L2, pg, q)


def genus1_branch_points(n: int, k: int) -> tuple[int, int]:
    """Number ``b`` of branch points of A -> P^1 and the genus of A."""
    if k < 1 or n < k:
        raise DomainError("need 1 <= k <= n")
    if (n - k) % 4:
        raise InadmissibleError(Inadmissible("congruence", f"n - k = {n - k} is not divisible by 4"))
    if (n - k) // 4 > 4:
        raise InadmissibleError(Inadmissible("bound", f"(n - k)/4 = {(n - k) // 4} exceeds 4 unstable fibres"))
    b = k + (n - k) // 4
    if b % 2:
        raise InadmissibleError(Inadmissible("parity", f"b = k + (n - k)/4 = {b} is odd"))
    return b, b // 2 - 1


def _genus_zero(cfg: BranchConfig) -> CoverReport | Inadmissible:
    n = cfg.n
    if n not in (8, 16):
        return Inadmissible("genus-zero-count", f"{n} disjoint rational curves are 2-divisible only for n = 8 or 16")
    L2 = -n // 2
    # h^0(L) = 0: L.R_i = -1 for every branch curve, so L is not effective
    X = invariants_of_X(L2, 0)
    Xmin = Invariants(X.chi, X.c1sq + n, X.c2 - n, X.pg, X.q)
    kind = "K3" if n == 8 else "Abelian"
    notes = [f"minimal model is a{'n' if kind == 'Abelian' else ''} {kind} surface after contracting {n} (-1)-curves"]
    notes.append(f"moduli dimension {11 if n == 8 else 3} (recorded)")
    return CoverReport("GenusZero", n, 0, L2 // 2, 0, L2, 0, X, Xmin, f"0 ({kind})", None, notes)


def _genus_one(cfg: BranchConfig) -> CoverReport | Inadmissible:
    n = cfg.n
    k = sum(1 for g in cfg.genera if g == 1)
    try:
        b, gA = genus1_branch_points(n, k)
    except InadmissibleError as exc:
        return exc.verdict
    L2 = (k - n) // 2
    notes: list[str] = []
    if n == k:
        h0 = 1 + k // 2
        notes.append("all branch curves are fibres: h^0(L) = 1 + k/2")
    elif (n, k) in ((5, 1), (10, 2)):
        h0 = 1
        notes.append("h^0(L) = 1 from the worked fibration with these (n, k)")
    else:
        h0 = None
        notes.append("h^0(L) unspecified: p_g and q not reported")
    X = invariants_of_X(L2, h0)
    Xmin = Invariants(4 - (n - k) // 4, 0, 48 + 3 * k - 3 * n, X.pg, X.q)
    exclusion = {
        0: "c2(X_min) = 0 would need n - k = 16, then b >= 6 and g(A) >= 2: Kodaira dimension 0 excluded",
        24: "c2(X_min) = 24 would make X_min a K3 with n - k = 8, but b >= 4 gives g(A) >= 1: excluded",
        12: "c2(X_min) = 12 would make X_min an Enriques surface with n - k = 12, but b >= 4 gives g(A) >= 1: excluded",
    }
    if Xmin.c2 in exclusion:
        notes.append(exclusion[Xmin.c2])
    notes.append(f"X -> A is a genus 1 fibration, A a double cover of P^1 branched in {b} points")
    return CoverReport("GenusOne", n, k, L2 // 2, 1, L2, h0, X, Xmin, "1", gA, notes)


def _general_type(cfg: BranchConfig) -> CoverReport | Inadmissible:
    n, g = cfg.n, cfg.gC
    if any(x != 0 for x in cfg.genera[1:]):
        return Inadmissible("genus", "all branch curves other than C must be rational when g(C) > 1")
    if n > 17:
        return Inadmissible("bound", f"n = {n} > 17: at most 16 disjoint rational curves on a K3 surface")
    if (g - n) % 4:
        return Inadmissible("congruence", f"g(C) - n = {g - n} is not divisible by 4")
    h = (g - n) // 4
    if h < -3:
        return Inadmissible("h-bound", f"h = {h} < -3")
    L2 = 2 * h
    notes: list[str] = []
    printed = None
    if n == 1:
        h0 = 2 + h
        X = invariants_of_X(L2, h0)
        printed = Invariants(X.chi, X.c1sq, X.c2, 3 + 4 * h, 3 * h)
        notes.append(
            f"n = 1: Riemann-Roch gives h^0(L) = 2 + h, so (p_g, q) = ({X.pg}, {X.q}); "
            f"printed values are (h^{{2,0}}, h^{{1,0}}) = ({printed.pg}, {printed.q}); both give chi = {X.chi}"
        )
    elif h == -1:
        h0 = 1
        X = invariants_of_X(L2, h0)
        notes.append("L^2 = -2 and h^0(L) = 1")
    else:
        h0 = None
        X = invariants_of_X(L2, None)
        notes.append("h^0(L) unspecified: p_g and q not reported")
    Xmin = Invariants(4 + h, g - 1, 48 + 8 * h - (n - 1), X.pg, X.q)
    if h == -1 and 6 <= n <= 16:
        notes.append("possible Neron-Severi lattices: " + ", ".join(k3.ns_candidates(n).ids()))
    return CoverReport("GeneralType", n, 0, h, g, L2, h0, X, Xmin, "2", None, notes, printed)


def classify_branch(cfg: BranchConfig | Sequence[int]) -> CoverReport | Inadmissible:
    if not isinstance(cfg, BranchConfig):
        cfg = BranchConfig.of(cfg)
    if cfg.gC == 0:
        return _genus_zero(cfg)
    if cfg.gC == 1:
        return _genus_one(cfg)
    return _general_type(cfg)


def admissible_configs(max_n: int = 17, max_genus: int = 20):
    """Every admissible configuration with n <= max_n and genera <= max_genus.

    Genus-1 configurations only differ by k, and general type ones must
    have all other curves rational, so the enumeration is exhaustive.
    """
    for n in range(1, max_n + 1):
        candidates = [(0,) * n]
        candidates += [(1,) * k + (0,) * (n - k) for k in range(1, n + 1)]
        candidates += [(g,) + (0,) * (n - 1) for g in range(2, max_genus + 1)]
        for genera in candidates:
            rep = classify_branch(genera)
            if isinstance(rep, CoverReport):
                yield rep


# -- Kodaira fibres ----------------------------------------------------------

@dataclass(frozen=True)
class KodairaFiberType:
    name: str
    multiplicities: tuple[int, ...]
    euler: int

    @property
    def odd_mult_components(self) -> int:
        return sum(1 for m in self.multiplicities if m % 2)

    @property
    def components(self) -> int:
        return len(self.multiplicities)


def i_m_star(m: int) -> KodairaFiberType:
    if m < 0:
        raise DomainError("m must be >= 0")
    return KodairaFiberType(f"I{m}*", (1, 1, 1, 1) + (2,) * (m + 1), 6 + m)


def unstable_fiber_types(max_m: int = 4) -> list[KodairaFiberType]:
    """I_0^*..I_{max_m}^*, IV^*, III^*, II^*."""
    out = [i_m_star(m) for m in range(max_m + 1)]
    out.append(KodairaFiberType("IV*", (1, 1, 1, 2, 2, 2, 3), 8))
    out.append(KodairaFiberType("III*", (1, 1, 2, 2, 2, 3, 3, 4), 9))
    out.append(KodairaFiberType("II*", (1, 2, 2, 3, 3, 4, 4, 5, 6), 10))
    return out


# -- existence for h != -1 -------------------------------------------------------

@dataclass(frozen=True)
class ExistenceVerdict:
    n: int
    h: int
    exists: bool
    note: str
    d: int | None = None

    def to_json(self) -> dict:
        return {"n": self.n, "h": self.h, "exists": self.exists, "d": self.d, "note": self.note}


def sixteen_curve_lattice(h: int) -> lt.Lattice:
    """<2d> + M_2e4 with d = 15 + 4h, glued by (c + r_1 + ... + r_15)/2."""
    d = 15 + 4 * h
    base = lt.direct_sum(k3.build_standard("R2d", d=d), k3.build_even_set_lattice(4))
    glue = lt.GlueVector((Fraction(1, 2),) * 16)
    return lt.glue_overlattice(base, [glue], name=f"R2d:{2 * d}+M_2e4 glued")


def existence(n: int, h: int) -> ExistenceVerdict:
    if n not in (1, 16, 17):
        raise DomainError(f"no existence criterion for n = {n}; supported n are 1, 16, 17")
    if h < -3 or n + 4 * h < 2:
        raise DomainError(f"(n, h) = ({n}, {h}) violates h >= -3 and g(C) = n + 4h >= 2")
    if n == 17:
        deg = 8 + 2 * h
        if h % 2:
            return ExistenceVerdict(n, h, False, f"(C/2)^2 = {deg} is not divisible by 4, so h must be even")
        return ExistenceVerdict(
            n, h, True, f"Kummer surface of an abelian surface with a polarization of degree {4 + h}; (C/2)^2 = {deg}"
        )
    if n == 16:
        d = 15 + 4 * h
        if d % 4 != 3:
            raise AssertionError("d = 15 + 4h must be 3 mod 4")
        try:
            L = sixteen_curve_lattice(h)
        except InvalidGlueError as exc:
            return ExistenceVerdict(n, h, False, f"glue fails: {exc}", d)
        return ExistenceVerdict(
            n, h, True,
            f"overlattice of <{2 * d}> + M_2e4 with d = {d} = 3 mod 4 (rank {L.rank}, det {L.det})", d,
        )
    return ExistenceVerdict(n, h, True, f"NS = ZD with D^2 = {2 * h} and C = 2D")


# -- bidouble covers and projections ------------------------------------------

def bidouble_pg(d1: int, d2: int, d3: int) -> int:
    """p_g of the bidouble cover of P^2 branched on curves of degrees d1, d2, d3."""
    ds = (d1, d2, d3)
    if any(d < 1 for d in ds):
        raise DomainError("branch degrees must be positive")
    total = 0
    for i in range(3):
        s = ds[(i + 1) % 3] + ds[(i + 2) % 3]
        if s % 2:
            raise DomainError(f"L_{i + 1} = {s}/2 is not integral")
        Li = s // 2
        total += comb(Li - 1, 2) if Li >= 3 else 0
    return total


def projection_residual(n: int) -> int:
    if n <= 6:
        raise DomainError("projection residual is defined for n > 6")
    return (2 * n - 10) - 2 * (n - 6)


# -- alternative even sets --------------------------------------------------------

@dataclass(frozen=True)
class EvenSetDescriptor:
    genus: int
    rationals: tuple[int, ...]  # indices i of the r_i in the set
    expression: str
    curve: tuple[Fraction, ...]  # (d, r1, ...) coordinates
    verified: bool

    @property
    def size(self) -> int:
        return len(self.rationals)

    def to_json(self) -> dict:
        return {
            "genus": self.genus, "rationals": list(self.rationals), "class": self.expression,
            "coords": [lt.format_rational(x) for x in self.curve], "verified": self.verified,
        }


def _expr(minus: Sequence[int]) -> str:
    """``c`` minus runs of r_i, e.g. ``c - (r1 + ... + r6) - r11``."""
    runs: list[list[int]] = []
    for i in minus:
        if runs and runs[-1][-1] == i - 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    parts = ["c"]
    for run in runs:
        if len(run) == 1:
            parts.append(f"r{run[0]}")
        elif len(run) == 2:
            parts.append(f"(r{run[0]} + r{run[1]})")
        else:
            parts.append(f"(r{run[0]} + ... + r{run[-1]})")
    return " - ".join(parts)


def _descriptor(L: lt.Lattice, n: int, minus: Sequence[int], rationals: Sequence[int],
                must_halve: bool = False) -> EvenSetDescriptor:
    curve = k3.class_vector(n, Fraction(1), {i: Fraction(-1) for i in minus})
    sq = L.pairing(curve, curve)
    genus = int(sq) // 2 + 1
    half = [x / 2 for x in curve]
    for i in rationals:
        half[i] += Fraction(1, 2)
    ok = L.contains(curve) and L.contains(half) and sq.denominator == 1 and sq >= 0
    ok = ok and all(L.pairing(curve, k3.class_vector(n, 0, {i: 1})) == 0 for i in rationals)
    if must_halve:
        ok = ok and L.contains([x / 2 for x in curve])
    return EvenSetDescriptor(genus, tuple(rationals), _expr(list(minus)), tuple(curve), ok)


def alternative_even_sets(n: int, r: int) -> list[EvenSetDescriptor]:
    """2-divisible sets {curve of genus g, rational curves} on a surface with NS = L_n^(r)."""
    if (n, r) not in set(k3.candidate_family()):
        raise DomainError(f"L_{n}^({r}) is not in the list")
    L = k3.build_Ln(n, r)
    out = [
        _descriptor(L, n, [], range(1, n)),
        _descriptor(L, n, range(1, n - 5), range(n - 5, n)),
        _descriptor(L, n, list(range(1, n - 5)) + [n - 1], range(n - 5, n - 1)),
    ]
    if r >= 2:
        out.append(_descriptor(L, n, range(9, n), range(1, 9), must_halve=True))
    seen, unique = set(), []
    for dsc in out:
        key = (dsc.curve, dsc.rationals)
        if key not in seen:
            seen.add(key)
            unique.append(dsc)
    return unique


def genus_counts(descriptors: Iterable[EvenSetDescriptor]) -> Counter:
    return Counter((d.genus, d.size) for d in descriptors)
