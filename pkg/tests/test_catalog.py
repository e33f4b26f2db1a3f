import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from psisum import catalog
from psisum.arith import is_squarefree
from psisum.catalog import (
    Cyclic,
    DescriptorError,
    Named,
    Product,
    SplitAbelian,
    SplitCyclic,
    Tier,
    build,
    enumerate_supported,
    parse,
)
from psisum.groups import CapExceeded, is_isomorphic, psi


@pytest.mark.parametrize(
    "text",
    ["C21", "C3xC3xC5", "C7:C3@2", "[9,3]:C2@[1,0;0,2]", "S3", "D18", "Q8", "M27", "G1@3",
     "A1@m1=5", "A2@q=5,m1=1", "T9@q=3,k=5", "(C7:C3@2)xC5", "S3xC5", "C1"],
)
def test_parse_round_trip(text):
    d = parse(text)
    assert str(d) == text
    assert parse(str(d)) == d
    assert build(d).order == d.order


@pytest.mark.parametrize("bad", ["", "C", "Cx", "C7:C3", "C7:C3@", "[3,3]:C3@[1,1]", "Z5", "C3xx", "A2@q=5", "(C3"])
def test_parse_errors(bad):
    with pytest.raises(DescriptorError):
        parse(bad)


def _descriptors():
    leaf = st.one_of(
        st.integers(1, 30).map(Cyclic),
        st.sampled_from([SplitCyclic(7, 3, 2), SplitCyclic(9, 2, 8), SplitCyclic(13, 4, 5)]),
        st.sampled_from([Named("S3", ()), Named("Q8", ()), catalog.M(27), catalog.D(10)]),
        st.just(SplitAbelian((3, 3), 3, ((1, 1), (0, 1)))),
    )
    return st.lists(leaf, min_size=1, max_size=3).map(lambda fs: fs[0] if len(fs) == 1 else Product(tuple(fs)))


@given(_descriptors())
def test_generated_round_trip(d):
    assert parse(str(d)) == d


def test_named_expansions():
    assert psi(build("S3")) == 13
    assert build("D18").order == 18
    assert psi(build("M27")) == 187
    assert build("G1@4").order == 48
    assert build("A1@m1=5").order == 105
    assert build("A2@q=5,m1=1").order == 245
    assert build("T9@q=3,k=5").order == 45
    assert is_isomorphic(build("A1@m1=5"), build("(C7:C3@2)xC5"))
    assert is_isomorphic(build("T9@q=3,k=7"), build("C3xC21"))


def test_extremal_parameter_checks():
    assert catalog.validate_extremal_A1_params(5)
    assert catalog.validate_extremal_A1_params(1)
    assert not catalog.validate_extremal_A1_params(7)
    assert not catalog.validate_extremal_A1_params(3)
    assert catalog.validate_extremal_A2_params(5, 11)
    assert not catalog.validate_extremal_A2_params(5, 7)
    assert not catalog.validate_extremal_A2_params(5, 3)


# class counts from the known classification of small groups
KNOWN_COUNTS = {
    9: 2, 15: 1, 21: 2, 25: 2, 27: 5, 45: 2, 55: 2, 57: 2, 63: 4, 75: 3, 99: 2, 117: 4,
    125: 5, 147: 6, 171: 5, 175: 2, 245: 2, 343: 5, 363: 3, 1155: 4,
}


@pytest.mark.parametrize("n,count", sorted(KNOWN_COUNTS.items()))
def test_known_class_counts(n, count):
    res = enumerate_supported(n)
    assert res.tier is Tier.EXHAUSTIVE
    assert len(res.classes) == count


def test_squarefree_counts_match_formula():
    for n in range(3, 800, 2):
        if is_squarefree(n):
            assert len(enumerate_supported(n).classes) == catalog.squarefree_class_count(n), n


def _naive_classes(descs):
    groups = [build(d) for d in descs]
    reps = []
    for G in groups:
        if not any(is_isomorphic(G, H) for H in reps):
            reps.append(G)
    return len(reps)


@pytest.mark.parametrize("n", [21, 39, 57, 93, 105, 147 // 7 * 11, 195, 273])
def test_reduced_candidates_cover_all_actions(n):
    raw = catalog.squarefree_candidates_raw(n)
    assert _naive_classes(raw) == len(enumerate_supported(n).classes)


def test_classes_pairwise_distinct():
    for n in (63, 75, 147, 171, 1155):
        gs = [G for _, G in enumerate_supported(n).classes]
        for G, H in itertools.combinations(gs, 2):
            assert not is_isomorphic(G, H)


def test_enumeration_examples():
    assert [str(d) for d in enumerate_supported(21).descriptors] == ["C21", "C7:C3@2"]
    assert [str(d) for d in enumerate_supported(45).descriptors] == ["C45", "C3xC15"]
    assert len(enumerate_supported(15).classes) == 1


def test_enumeration_contains_one_cyclic_class():
    for n in range(3, 400, 2):
        res = enumerate_supported(n)
        assert sum(int(G.elem_order.max()) == n for _, G in res.classes) == 1


def test_family_tier():
    res = enumerate_supported(3**2 * 5 * 7)  # 315: shape p^2 q r
    assert res.tier is Tier.FAMILY
    assert "T9@q=3,k=35" in {str(d) for d in res.descriptors} or any(
        is_isomorphic(G, build("C3xC105")) for _, G in res.classes
    )


def test_enumeration_guards():
    with pytest.raises(ValueError):
        enumerate_supported(14)
    with pytest.raises(CapExceeded):
        enumerate_supported(4001)


def test_cyclic_subgroup_reps():
    reps = catalog.cyclic_subgroup_reps(7, 3)
    assert len(reps) == 1
    assert catalog.cyclic_subgroup_reps(31, 5) and len(catalog.cyclic_subgroup_reps(31, 5)) == 1
    assert catalog.cyclic_subgroup_reps(7, 5) == []


@settings(max_examples=25)
@given(st.sampled_from([n for n in range(3, 600, 2) if catalog.classify_shape(n) == "p2q"]))
def test_p2q_classes_distinct(n):
    res = enumerate_supported(n)
    # every class is a group of order n and no two are isomorphic
    for (_, G), (_, H) in itertools.combinations(res.classes, 2):
        assert not is_isomorphic(G, H)
    assert all(G.order == n for _, G in res.classes)
