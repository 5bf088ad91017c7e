from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3covers import k3lattices as k3
from k3covers import lattice as lt
from k3covers.errors import DomainError, UnknownIdentifierError
from oracles import cofactor_det, naive_snf_diagonal

FAMILY = k3.candidate_family()


def oracle_group(L):
    """Invariant factors by naive row/column reduction, 1s dropped."""
    return tuple(d for d in naive_snf_diagonal(L.gram.tolist()) if d > 1)


def test_family_has_sixteen_members():
    assert len(FAMILY) == 16
    assert sum(len(k3.ns_candidates(n).pairs) for n in range(6, 18)) == 16
    assert k3.ns_candidates(17).ids() == []
    assert k3.ns_candidates(13).ids() == ["L_13_2", "L_13_4"]


@pytest.mark.parametrize("n", range(6, 18))
def test_ln1_basis_relations(n):
    L = k3.build_Ln(n)
    d = [1] + [0] * (n - 1)
    c = k3.c_vector(n)
    assert L.pairing(c, c) == 2 * n - 10
    assert L.pairing(d, d) == -2
    for i in range(1, n):
        r = [0] * n
        r[i] = 1
        assert L.pairing(d, r) == 1 and L.pairing(r, r) == -2
        assert L.pairing(c, r) == 0
    assert L.signature == (1, n - 1, 0)


@pytest.mark.parametrize("n", range(6, 18))
def test_ln1_det_schur_complement(n):
    # Schur complement on d gives (-2)^(n-1) (n-5)/2 independently
    assert k3.build_Ln(n).det == (-2) ** (n - 1) * (n - 5) // 2
    if n <= 8:
        assert cofactor_det(k3.ln1_gram(n).tolist()) == k3.build_Ln(n).det


@pytest.mark.parametrize("n,r", FAMILY)
def test_closed_forms(n, r):
    L = k3.build_Ln(n, r)
    assert L.det == k3.closed_form_det(n, r)
    assert k3.group_invariants(L) == k3.closed_form_group(n, r)
    assert lt.abelian_invariants(oracle_group(L)) == k3.closed_form_group(n, r)
    assert lt.length(L) == k3.closed_form_length(n, r)
    assert L.glue_index == r
    assert L.even and L.signature == (1, n - 1, 0)


def test_special_case_nine_two():
    L = k3.build_Ln(9, 2)
    assert lt.discriminant_group(L).elementary_divisors == (2,) * 7
    assert tuple(lt.two_elementary_invariants(L)) == (9, 7, 1)


def test_ln6_two_elementary():
    assert tuple(lt.two_elementary_invariants(k3.build_Ln(6))) == (6, 4, 0)


def test_embedding_verdicts():
    assert k3.embedding_status(k3.build_Ln(13)).verdict == "NotEmbeddable"
    assert k3.embedding_status(k3.build_Ln(10)).verdict == "Embeddable"
    st12 = k3.embedding_status(k3.build_Ln(12))
    assert st12.verdict == "Embeddable" and "U(2)" in st12.reason
    kum = lt.direct_sum(k3.build_standard("R2d:6"), k3.build("K"))
    st6 = k3.embedding_status(kum)
    assert st6.verdict == "NotEmbeddable" and "length 7" in st6.reason


def test_embedding_needs_hyperbolic():
    with pytest.raises(DomainError):
        k3.embedding_status(k3.build("K"))


def test_listed_members_never_rejected():
    verdicts = {p: k3.embedding_status(k3.build_Ln(*p)).verdict for p in FAMILY}
    assert "NotEmbeddable" not in verdicts.values()
    # length strictly between 20 - n and min(n, 22 - n): the length criteria are silent
    assert {p for p, v in verdicts.items() if v == "Undetermined"} == {(13, 2), (14, 4), (15, 8), (16, 16)}


def test_l12_check_rejects_other_lattices():
    ok, notes = k3.l12_refined_check(k3.build_Ln(11))
    assert not ok and notes == ["not L_12^(1)"]


def test_fixed_loci():
    assert k3.fixed_locus_nonsymplectic(lt.two_elementary_invariants(k3.build_Ln(6))).describe() == \
        "genus-6 curve + 1 rational curve"
    assert k3.fixed_locus_nonsymplectic((9, 7, 1)).curves == (3, 0)
    assert k3.fixed_locus_nonsymplectic((10, 8, 0)).curves == (1, 1)
    with pytest.raises(DomainError):
        k3.fixed_locus_nonsymplectic((10, 10, 0))
    with pytest.raises(DomainError):
        k3.fixed_locus_nonsymplectic((21, 1, 1))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 20), st.integers(0, 20), st.integers(0, 1))
def test_fixed_locus_counts(r, a, delta):
    s = 22 - r - a
    if a > r or s < 0 or s % 2 or (r, a) == (10, 10):
        return
    if (r, a, delta) == (10, 8, 0):
        return
    F = k3.fixed_locus_nonsymplectic((r, a, delta))
    assert F.curves[0] == s // 2
    assert F.rational_curves == (r - a) // 2 + (1 if s == 0 else 0)


def test_identifiers():
    assert k3.parse_id("L_9_2").id == "L_9_2"
    assert k3.build("R2d:-4").det == -4
    assert k3.build("U2").det == -4
    assert k3.build("D4").det == 4
    for bad in ("L_5_1", "L_8_2", "L_13_3", "R2d:3"):
        with pytest.raises(DomainError):
            k3.parse_id(bad)
    with pytest.raises(UnknownIdentifierError):
        k3.parse_id("NO_SUCH")


def test_glue_vectors_are_half_sums():
    L = k3.build_Ln(16, 16)
    assert [sum(x != 0 for x in g.coords) for g in L.glue] == [8, 8, 8, 8]
    assert all(x in (0, Fraction(1, 2)) for g in L.glue for x in g.coords)


def test_derivation_trace_shape():
    t = k3.derive_candidate_trace(14)
    assert t.census.classes == 2 ** 14 and t.census.distinct == 2 ** 13
    assert [a for a, _ in t.c_divisors] == [3]
    excluded = [r for r in t.records if r.c_divisor == 3]
    assert excluded and all(not r.survives for r in excluded)
    assert any("(14, 8, 0)" in reason for r in excluded for reason in r.reasons)
    assert k3.derive_candidate_list(17).ids() == []
    with pytest.raises(DomainError):
        k3.derive_candidate_trace(5)


@pytest.mark.parametrize("n", range(6, 18))
def test_derived_list_matches(n):
    assert k3.derive_candidate_list(n) == k3.ns_candidates(n)
