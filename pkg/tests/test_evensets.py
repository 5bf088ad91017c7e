from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3covers import evensets as es
from k3covers.errors import DomainError, ResourceError, ShapeError, UnknownIdentifierError

LENGTHS = {"M_2e1": 8, "M_2e2": 12, "M_2e3": 14, "M_2e4": 15, "K": 16}


def span(gens):
    """All XOR combinations, computed independently of the package."""
    out = set()
    for bits in product((0, 1), repeat=len(gens)):
        w = 0
        for b, g in zip(bits, gens):
            if b:
                w ^= g
        out.add(w)
    return out


def permute(word, perm):
    return sum(1 << perm[p] for p in range(len(perm)) if word >> p & 1)


@pytest.mark.parametrize("cid", es.CODE_IDS)
def test_named_codes_obey_laws(cid):
    code = es.code_of(cid)
    assert code.m == LENGTHS[cid]
    assert code.dimension == es.CODE_IDS.index(cid) + 1
    words = span(code.generators)
    assert words == set(es.codewords(code))
    nonzero = [w for w in words if w]
    assert all(bin(w).count("1") in (8, 16) for w in nonzero)
    eights = [w for w in nonzero if bin(w).count("1") == 8]
    assert all(bin(a & b).count("1") in (0, 4) for a, b in combinations(eights, 2))
    assert es.validate_even_code(code).valid


@pytest.mark.parametrize("cid", es.CODE_IDS)
def test_code_lattice_determinant(cid):
    code = es.code_of(cid)
    L = es.lattice_from_code(code, cid)
    m, k = code.m, code.dimension
    assert L.det == (-1) ** m * 2 ** (m - 2 * k)
    assert L.glue_index == 2 ** k
    assert L.even and L.signature == (0, m, 0)


def test_kummer_code_weights():
    weights = sorted(es.weight(w) for w in es.codewords(es.code_of("K")))
    assert weights == [0] + [8] * 30 + [16]


def test_violations_reported():
    bad = es.BinaryCode.from_positions(8, [(1, 2, 3, 4)])
    v = es.validate_even_code(bad)
    assert not v.valid and "weight 4" in v.violations[0].describe()
    bad2 = es.BinaryCode.from_positions(14, [range(1, 9), range(7, 15)])
    v2 = es.validate_even_code(bad2)
    assert any("intersection 2" in x.describe() for x in v2.violations)


def test_dependent_generators_rejected():
    with pytest.raises(ShapeError):
        es.BinaryCode.from_positions(8, [range(1, 9), range(1, 9)])


def test_resource_limit():
    code = es.BinaryCode(21, tuple(1 << i for i in range(21)))
    with pytest.raises(ResourceError):
        es.codewords(code)


def test_unknown_code():
    with pytest.raises(UnknownIdentifierError) as exc:
        es.code_of("NOPE")
    assert "NOPE" in str(exc.value)


def test_json_roundtrip():
    code = es.code_of("M_2e3")
    assert es.BinaryCode.from_json(code.to_json()) == code


def test_minimal_primitive_options():
    assert [o.name for o in es.minimal_primitive_options(3)] == ["<-2>^3"]
    assert [o.name for o in es.minimal_primitive_options(12)] == ["M_2e1+<-2>^4", "M_2e2"]
    assert [o.name for o in es.minimal_primitive_options(16)] == ["K"]
    assert es.minimal_primitive_options(17) == []
    assert es.minimal_code_dimension(17) is None
    assert [es.minimal_code_dimension(m) for m in range(11, 17)] == [0, 1, 2, 3, 4, 5]
    with pytest.raises(DomainError):
        es.minimal_primitive_options(0)
    for m in range(1, 17):
        for o in es.minimal_primitive_options(m):
            assert o.rank == m
            assert o.build().rank == m


def test_equivalence_distinguishes():
    a = es.code_of("M_2e2")
    b = es.BinaryCode.from_positions(12, [range(1, 9), (1, 2, 3, 4, 9, 10, 11, 12)])
    assert es.equivalent(a, b)
    c = es.BinaryCode.from_positions(16, [range(1, 9), range(9, 17)])
    d = es.BinaryCode.from_positions(16, [range(1, 9), range(5, 13)])
    assert not es.equivalent(c, d)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(es.CODE_IDS), st.randoms(use_true_random=False))
def test_equivalence_under_permutation(cid, rnd):
    code = es.code_of(cid)
    perm = list(range(code.m))
    rnd.shuffle(perm)
    moved = es.BinaryCode(code.m, tuple(permute(g, perm) for g in code.generators))
    assert es.equivalent(code, moved)
    assert es.validate_even_code(moved).valid
    assert es.invariant_signature(moved) == es.invariant_signature(code)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 2 ** 5 - 1), min_size=1, max_size=4))
def test_subcodes_of_kummer_code_are_even(selectors):
    K = es.code_of("K")
    words = es.codewords(K)
    chosen = [words[s] for s in selectors]
    gens = []
    for w in chosen:
        if es.gf2_rank(gens + [w]) > len(gens):
            gens.append(w)
    sub = es.BinaryCode(16, tuple(gens))
    assert es.validate_even_code(sub).valid


def brute_equivalent(a, b):
    from itertools import permutations
    target = set(es.codewords(b))
    words = es.codewords(a)
    return any({permute(w, perm) for w in words} == target for perm in permutations(range(a.m)))


def small_code(m):
    return st.lists(st.integers(1, 2 ** m - 1), min_size=1, max_size=3).map(
        lambda ws: es.BinaryCode(m, tuple(_independent(ws)))
    )


def _independent(ws):
    gens = []
    for w in ws:
        if es.gf2_rank(gens + [w]) > len(gens):
            gens.append(w)
    return gens


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6).flatmap(lambda m: st.tuples(small_code(m), small_code(m))))
def test_equivalence_matches_permutation_search(pair):
    a, b = pair
    assert es.equivalent(a, b) == brute_equivalent(a, b)
