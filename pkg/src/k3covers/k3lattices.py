"""The lattices L_n^(r), their relatives, and the list of admissible ones.

Basis convention for L_n^(1): ``d, r1, ..., r_{n-1}`` with
``d^2 = r_i^2 = -2``, ``d.r_i = 1`` and ``r_i.r_j = 0``.  The class of the
big branch curve is ``c = 2d + r1 + ... + r_{n-1}`` and ``c^2 = 2n - 10``.
Glue vectors for L_n^(2), L_n^(4), ... are half sums of the r_i over the
same index patterns that define the even-set codes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Sequence

from . import evensets as es
from . import exactlin as xl
from . import lattice as lt
from .errors import DomainError, InvalidGlueError, UnknownIdentifierError
from .exactlin import IntMatrix

R_VALUES = (1, 2, 4, 8, 16)
_MIN_N = {1: 6, 2: 9, 4: 13, 8: 15, 16: 16}


def log2(r: int) -> int:
    return r.bit_length() - 1


# -- identifiers -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class NamedLatticeId:
    family: str
    params: tuple[int, ...] = ()

    @property
    def id(self) -> str:
        if self.family == "Ln":
            return f"L_{self.params[0]}_{self.params[1]}"
        if self.family == "M_even":
            return f"M_2e{self.params[0]}"
        if self.family == "Kummer":
            return "K"
        if self.family == "RankOne":
            return f"R2d:{self.params[0]}"
        return self.family

    def __str__(self) -> str:
        return self.id


def parse_id(text: str) -> NamedLatticeId:
    text = text.strip()
    if m := re.fullmatch(r"L_(\d+)_(\d+)", text):
        n, r = int(m[1]), int(m[2])
        _check_ln(n, r)
        return NamedLatticeId("Ln", (n, r))
    if m := re.fullmatch(r"M_2e([1-4])", text):
        return NamedLatticeId("M_even", (int(m[1]),))
    if text == "K":
        return NamedLatticeId("Kummer")
    if text in ("U", "U2", "D4"):
        return NamedLatticeId(text)
    if m := re.fullmatch(r"R2d:(-?\d+)", text):
        v = int(m[1])
        if v == 0 or v % 2:
            raise DomainError("R2d:<v> needs a nonzero even norm v = 2d")
        return NamedLatticeId("RankOne", (v,))
    raise UnknownIdentifierError(text)


def build(ident: NamedLatticeId | str) -> lt.Lattice:
    if isinstance(ident, str):
        ident = parse_id(ident)
    f, p = ident.family, ident.params
    if f == "Ln":
        return build_Ln(*p)
    if f == "M_even":
        return build_even_set_lattice(p[0])
    if f == "Kummer":
        return build_even_set_lattice("K")
    return build_standard(ident.id)


# -- constructors ------------------------------------------------------------

def _check_ln(n: int, r: int) -> None:
    if r not in _MIN_N:
        raise DomainError(f"r must be one of {R_VALUES}, got {r}")
    if n < _MIN_N[r]:
        raise DomainError(f"L_n^({r}) needs n >= {_MIN_N[r]}, got n={n}")


def ln1_gram(n: int) -> IntMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -2
    for i in range(1, n):
        rows[0][i] = rows[i][0] = 1
    return IntMatrix(rows)


def ln_labels(n: int) -> tuple[str, ...]:
    return ("d",) + tuple(f"r{i}" for i in range(1, n))


def c_vector(n: int) -> list[Fraction]:
    """``c = 2d + sum r_i`` in (d, r1, ...) coordinates."""
    return [Fraction(2)] + [Fraction(1)] * (n - 1)


def class_vector(n: int, alpha: Fraction, betas: dict[int, Fraction] | None = None) -> list[Fraction]:
    """Coordinates of ``alpha*c + sum beta_i r_i`` in the basis (d, r1, ...)."""
    v = [Fraction(alpha) * x for x in c_vector(n)]
    for i, b in (betas or {}).items():
        v[i] += Fraction(b)
    return v


def ln_glue(n: int, r: int) -> list[lt.GlueVector]:
    return [lt.GlueVector.half_sum(n, rows) for rows in es.glue_rows(log2(r))]


@lru_cache(maxsize=None)
def build_Ln(n: int, r: int = 1) -> lt.Lattice:
    _check_ln(n, r)
    base = lt.from_gram(ln1_gram(n), ln_labels(n), f"L_{n}_1")
    if r == 1:
        return base
    return lt.glue_overlattice(base, ln_glue(n, r), name=f"L_{n}_{r}")


@lru_cache(maxsize=None)
def build_even_set_lattice(j: int | str) -> lt.Lattice:
    code_id = "K" if j in ("K", "Kummer") else f"M_2e{j}"
    if code_id not in es.CODE_IDS:
        raise UnknownIdentifierError(str(j))
    return es.lattice_from_code(es.code_of(code_id), code_id)


def build_standard(ident: str, d: int | None = None) -> lt.Lattice:
    """U, U2, D4, or the rank one lattice <2d> (``R2d:<2d>`` or ``d=...``)."""
    if ident == "U":
        return lt.from_gram([[0, 1], [1, 0]], ["e", "f"], "U")
    if ident == "U2":
        return lt.rescale(build_standard("U"), 2, "U2")
    if ident == "D4":
        cartan = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
        return lt.from_gram(IntMatrix(cartan).scale(-1), ["a1", "a2", "a3", "a4"], "D4")
    if ident.startswith("R2d:") or ident == "R2d":
        v = int(ident[4:]) if d is None else 2 * d
        if v == 0 or v % 2:
            raise DomainError("<2d> needs d != 0")
        return lt.from_gram([[v]], ["h"], f"R2d:{v}")
    raise UnknownIdentifierError(ident)


# -- closed forms ------------------------------------------------------------

def closed_form_det(n: int, r: int) -> int:
    """``(-1)^(n-1) 2^(n-2-2 log2 r) (n-5)`` as printed for L_n^(r)."""
    _check_ln(n, r)
    return (-1) ** (n - 1) * 2 ** (n - 2 - 2 * log2(r)) * (n - 5)


def closed_form_group(n: int, r: int) -> tuple[int, ...]:
    """Invariant factors of the printed discriminant group of L_n^(r)."""
    _check_ln(n, r)
    if (n, r) == (9, 2):
        return (2,) * 7
    twos = n - 3 - 2 * log2(r)
    return lt.abelian_invariants([2 * n - 10] + [2] * twos)


def closed_form_length(n: int, r: int) -> int:
    _check_ln(n, r)
    if (n, r) == (9, 2):
        return 7
    return n - 2 - 2 * log2(r)


def group_invariants(L: lt.Lattice) -> tuple[int, ...]:
    return lt.abelian_invariants(lt.discriminant_group(L).elementary_divisors)


# -- the list ------------------------------------------------------------------

@dataclass(frozen=True)
class CandidateList:
    n: int
    entries: tuple[NamedLatticeId, ...]

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(e.params for e in self.entries)

    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CandidateList):
            return NotImplemented
        return self.n == other.n and set(self.entries) == set(other.entries)

    def __hash__(self):
        return hash((self.n, frozenset(self.entries)))


def _clist(n: int, rs: Sequence[int]) -> CandidateList:
    return CandidateList(n, tuple(NamedLatticeId("Ln", (n, r)) for r in sorted(rs)))


def ns_candidates(n: int) -> CandidateList:
    if 6 <= n <= 8:
        rs = [1]
    elif 9 <= n <= 12:
        rs = [1, 2]
    else:
        rs = {13: [2, 4], 14: [4], 15: [8], 16: [16]}.get(n, [])
    return _clist(n, rs)


def candidate_family() -> list[tuple[int, int]]:
    """All 16 pairs (n, r) in the list, ordered by r then n."""
    return sorted({p for n in range(6, 17) for p in ns_candidates(n).pairs}, key=lambda p: (p[1], p[0]))


# -- embeddings ----------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingStatus:
    verdict: str  # Embeddable | NotEmbeddable | Undetermined
    reason: str


def _l12_witnesses() -> list[list[Fraction]]:
    n = 12
    h = Fraction(1, 2)

    def half(*idx):
        return class_vector(n, 0, {i: h for i in idx})

    d1 = class_vector(n, Fraction(1, 14), {1: h})
    return [
        d1, half(1, 2), half(2, 3), half(3, 4, 7, 8), half(4, 5), half(5, 6),
        half(8, 9), half(9, 10), half(7, 8, 9, 10), half(4, 5, 6, 7),
    ]


def _rational_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    D = xl.common_denominator(x for r in rows for x in r)
    return Fraction(xl.determinant([[int(x * D) for x in r] for r in rows]), D ** len(rows))


def l12_refined_check(L: lt.Lattice) -> tuple[bool, list[str]]:
    """Check the U(2)-splitting of the discriminant form of L_12^(1).

    Returns ``(ok, findings)``; ``ok`` requires that the ten witness
    vectors lie in the dual, generate the whole discriminant group, and
    that <d9, d10> is orthogonal to d1..d8 with the form of U(2) on it.
    """
    notes: list[str] = []
    ref = build_Ln(12, 1)
    if L.ambient != ref.ambient or abs(L.det) != abs(ref.det):
        return False, ["not L_12^(1)"]
    W = _l12_witnesses()
    basis = L.basis
    in_dual = all(L.pairing(w, b).denominator == 1 for w in W for b in basis)
    notes.append(f"witnesses in dual: {in_dual}")
    # span of basis + witnesses, via Hermite saturation; index over L must be |det|
    span = lt._saturate(L, [lt.GlueVector(tuple(w)) for w in W])
    index = abs(_rational_det(basis) / _rational_det(span))
    generates = index == abs(L.det)
    notes.append(f"index of span over L: {index} (|det| = {abs(L.det)})")
    b = lambda u, v: lt.mod1(L.pairing(u, v))
    q = lambda u: lt.mod2(L.pairing(u, u))
    orth = all(b(W[k], W[i]) == 0 for k in (8, 9) for i in range(8))
    u2 = q(W[8]) == 0 and q(W[9]) == 0 and b(W[8], W[9]) == Fraction(1, 2)
    notes.append(f"<d9,d10> orthogonal to d1..d8: {orth}; form of U(2) on <d9,d10>: {u2}")
    return in_dual and generates and orth and u2, notes


def embedding_status(L: lt.Lattice) -> EmbeddingStatus:
    """Primitive embeddability of a hyperbolic even lattice in the K3 lattice."""
    rk = L.rank
    if L.signature != (1, rk - 1, 0):
        raise DomainError(f"expected signature (1, {rk - 1}), got {L.signature[:2]}")
    ell = lt.length(L)
    if ell > min(rk, 22 - rk):
        return EmbeddingStatus("NotEmbeddable", f"length {ell} > min({rk}, {22 - rk})")
    if ell <= 20 - rk:
        return EmbeddingStatus("Embeddable", f"length {ell} <= 20 - {rk}")
    if rk == 12:
        ok, notes = l12_refined_check(L)
        if ok:
            return EmbeddingStatus(
                "Embeddable",
                "discriminant form splits off the form of U(2) (recorded refined criterion); " + "; ".join(notes),
            )
    return EmbeddingStatus("Undetermined", f"length {ell} between {20 - rk} and {min(rk, 22 - rk)}")


# -- fixed loci of nonsymplectic involutions ----------------------------------

@dataclass(frozen=True)
class FixedLocus:
    curves: tuple[int, ...]  # genera, largest first
    note: str = ""

    @property
    def rational_curves(self) -> int:
        return sum(1 for g in self.curves if g == 0)

    def describe(self) -> str:
        big = [g for g in self.curves if g > 0]
        parts = [f"genus-{g} curve" for g in big]
        if self.rational_curves:
            parts.append(f"{self.rational_curves} rational curve{'s' if self.rational_curves > 1 else ''}")
        return " + ".join(parts) or "no curves"


def fixed_locus_nonsymplectic(inv: lt.TwoElementaryInvariants | tuple) -> FixedLocus:
    r, a, delta = inv
    if not (1 <= r <= 20) or a < 0 or a > r:
        raise DomainError(f"({r}, {a}, {delta}) is not a valid 2-elementary triple of rank <= 20")
    if (r, a) == (10, 10):
        raise DomainError("(10, 10) has an empty or special fixed locus; not covered")
    if (r, a, delta) == (10, 8, 0):
        return FixedLocus((1, 1), "exceptional case: two genus-1 curves")
    s = 22 - r - a
    if s < 0 or s % 2:
        raise DomainError(f"22 - r - a = {s} must be even and non-negative")
    g, k = s // 2, (r - a) // 2
    return FixedLocus((g,) + (0,) * k)


# -- brute-force derivation of the list ---------------------------------------

@dataclass(frozen=True)
class WordCensus:
    classes: int  # 2^n vectors beta
    distinct: int  # after w ~ d - w
    valid_glue: int
    admissible: int  # valid glue and weight 8 or 16


@dataclass
class CandidateRecord:
    code: es.BinaryCode
    c_divisor: int = 1
    lattice: lt.Lattice | None = None
    length: int | None = None
    reasons: list[str] = field(default_factory=list)
    identified: tuple[int, int] | None = None

    @property
    def survives(self) -> bool:
        return not self.reasons

    def describe(self) -> str:
        gens = ["{" + ",".join(map(str, es.positions_of(g))) + "}" for g in self.code.generators]
        extra = f" + c/{self.c_divisor}" if self.c_divisor > 1 else ""
        return f"code dim {self.code.dimension} [{' '.join(gens)}]{extra}"


@dataclass
class DerivationTrace:
    n: int
    census: WordCensus
    c_divisors: list[tuple[int, str]]
    records: list[CandidateRecord]

    def survivors(self) -> list[CandidateRecord]:
        return [r for r in self.records if r.survives]


def _sparse_rows(G: IntMatrix):
    return [[(j, x) for j, x in enumerate(row) if x] for row in G.rows]


def _glue_ok_twice(v2: Sequence[int], sparse) -> bool:
    """Admission test for w = v2/2 on an integral lattice, in integers only."""
    Gv = [sum(x * v2[j] for j, x in row) for row in sparse]
    if any(t % 2 for t in Gv):
        return False
    return sum(a * b for a, b in zip(v2, Gv)) % 8 == 0


def _census(n: int) -> tuple[WordCensus, list[int]]:
    """Enumerate every beta in GF(2)^n and reduce to half sums of r_i."""
    m = n - 1
    full = (1 << m) - 1
    sparse = _sparse_rows(ln1_gram(n))
    seen: set[int] = set()
    for b0, rest in product((0, 1), range(1 << m)):
        # beta_0 = 1 is traded for d - w, which flips every r-coefficient
        seen.add(rest ^ full if b0 else rest)
    valid, admissible = 0, []
    for w in sorted(seen):
        if not w:
            continue
        v2 = [0] + es.word_to_bits(w, m)
        if _glue_ok_twice(v2, sparse):
            valid += 1
            if es.weight(w) in (8, 16):
                admissible.append(w)
    return WordCensus(2 ** n, len(seen), valid, len(admissible)), admissible


def _atoms(code: es.BinaryCode) -> list[list[int]]:
    """Positions grouped by their column over the current generators."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for p in range(code.m):
        groups.setdefault(tuple(g >> p & 1 for g in code.generators), []).append(p)
    return [groups[k] for k in sorted(groups)]


def _extensions(code: es.BinaryCode, admissible_weights: set[int]) -> list[int]:
    """One representative word per orbit of the column-stabilizer."""
    atoms = _atoms(code)
    span = set(es.codewords(code))
    out = []
    for counts in product(*(range(len(a) + 1) for a in atoms)):
        if sum(counts) not in admissible_weights:
            continue
        w = 0
        for a, k in zip(atoms, counts):
            for p in a[:k]:
                w |= 1 << p
        if w not in span:
            out.append(w)
    return out


def even_codes(m: int, admissible: set[int] | None = None) -> list[es.BinaryCode]:
    """All valid even codes on m positions, one per permutation class.

    ``admissible`` restricts the allowed words (as bitmasks); by default
    every word of weight 8 or 16 is allowed.
    """
    weights = {8, 16}
    level = [es.BinaryCode(m, ())]
    found = list(level)
    while level:
        nxt: list[es.BinaryCode] = []
        buckets: dict[tuple, list[es.BinaryCode]] = {}
        for code in level:
            span = es.codewords(code)
            for w in _extensions(code, weights):
                if admissible is not None and w not in admissible:
                    continue
                coset = [w ^ x for x in span]
                if any(es.weight(x) not in weights for x in coset):
                    continue
                new = code.extend(w)
                if not es.validate_even_code(new).valid:
                    continue
                key = es.invariant_signature(new)
                bucket = buckets.setdefault(key, [])
                if any(es.equivalent(new, old) for old in bucket):
                    continue
                bucket.append(new)
                nxt.append(new)
        found += nxt
        level = nxt
    return found


def _c_divisors(n: int) -> list[tuple[int, str]]:
    """Integers a >= 2 with 2a^2 | c^2, each with what the proof does with it."""
    c2 = 2 * n - 10
    out = []
    for a in range(2, isqrt(max(c2, 0) // 2) + 1):
        if c2 % (2 * a * a):
            continue
        if a % 2 == 0:
            # c/2 = d + (r_1 + ... + r_{n-1})/2, so this is the all-ones word
            out.append((a, f"c/{a} is equivalent to the all-ones word of weight {n - 1}; handled by the codes"))
        else:
            out.append((a, f"c/{a} adjoined as an extra glue vector"))
    return out


def _standard_code(m: int, dim: int) -> es.BinaryCode:
    return es.BinaryCode.from_positions(m, es.glue_rows(dim))


# the 2-elementary triple that the proof rules out by an external table
EXCLUDED_TWO_ELEMENTARY = {(14, 3): (14, 8, 0)}


@lru_cache(maxsize=None)
def derive_candidate_trace(n: int) -> DerivationTrace:
    if not 6 <= n <= 17:
        raise DomainError("derivation is implemented for 6 <= n <= 17")
    m = n - 1
    census, admissible = _census(n)
    codes = even_codes(m, set(admissible))
    divisors = _c_divisors(n)
    need = es.minimal_code_dimension(m)
    base = build_Ln(n, 1)
    c = c_vector(n)
    records: list[CandidateRecord] = []
    for code in codes:
        for a in [1] + [a for a, _ in divisors if a % 2]:
            rec = CandidateRecord(code, a)
            glue = [lt.GlueVector.half_sum(n, es.positions_of(g)) for g in code.generators]
            if a > 1:
                glue.append(lt.GlueVector(tuple(x / a for x in c)))
            try:
                L = lt.glue_overlattice(base, glue)
            except InvalidGlueError as exc:
                rec.reasons.append(f"invalid glue: {exc}")
                records.append(rec)
                continue
            rec.lattice = L
            rec.length = lt.length(L)
            if rec.length > min(n, 22 - n):
                rec.reasons.append(f"length {rec.length} > min({n}, {22 - n})")
            if a > 1:
                inv = lt.two_elementary_invariants(L)
                if (n, a) in EXCLUDED_TWO_ELEMENTARY and inv is not None and tuple(inv) == EXCLUDED_TWO_ELEMENTARY[(n, a)]:
                    rec.reasons.append(f"2-elementary {tuple(inv)}: no K3 surface has this Neron-Severi lattice")
            if need is None or code.dimension < need:
                rec.reasons.append(f"{m} disjoint rational curves force a code of dimension >= {need}")
            if rec.survives and a == 1:
                dim = code.dimension
                if dim <= 4 and es.equivalent(code, _standard_code(m, dim)):
                    rec.identified = (n, 2 ** dim)
            records.append(rec)
    return DerivationTrace(n, census, divisors, records)


def derive_candidate_list(n: int) -> CandidateList:
    """Re-derive the admissible lattices for n from scratch.

    Survivors that cannot be matched to a standard L_n^(r) are reported as
    family ``"Unidentified"`` so that a mismatch with the list is visible.
    """
    trace = derive_candidate_trace(n)
    entries = []
    for rec in trace.survivors():
        if rec.identified:
            entries.append(NamedLatticeId("Ln", rec.identified))
        else:
            entries.append(NamedLatticeId("Unidentified", (n, rec.code.dimension, rec.c_divisor)))
    return CandidateList(n, tuple(sorted(set(entries), key=lambda e: e.params)))
