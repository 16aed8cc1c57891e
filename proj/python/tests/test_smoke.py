import pytest
from hypothesis import given, settings, strategies as st

import rigidity


def test_arithmetic():
    assert rigidity.val2(12) == 2
    assert rigidity.derive_k(5, 1) == 3
    assert rigidity.derive_k_checked(17, 0) == {"k": 4, "closed_form": 2, "agrees": False}


@settings(max_examples=40, deadline=None)
@given(q0=st.sampled_from([5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]), l=st.integers(min_value=1, max_value=20))
def test_derive_k_lifts_by_one(q0, l):
    assert rigidity.derive_k(q0, l) == rigidity.derive_k(q0, l - 1) + 1


def test_root_system():
    g2 = rigidity.root_system("G2")
    assert g2["rank"] == 2
    assert len(g2["roots"]) == 12
    assert sorted(set(g2["length_sq"])) == [2, 6]
    assert rigidity.weyl_order("B3") == 48


def test_expand_labels():
    assert rigidity.expand_labels("A..D", "3") == ["A3", "B3", "C3"]
    assert rigidity.expand_labels("2A", "3") == ["2D3"]


def test_twisted_setup():
    ts = rigidity.twisted_setup("2A5")
    assert sorted(map(tuple, ts["hat_coroots"])) == [(0, 0, 1, 0, 0), (0, 1, 0, 1, 0), (1, 0, 0, 0, 1)]
    assert ts["hat_system"] == "C3"


def test_torus():
    d4 = rigidity.torus("2D4", 2)
    assert d4["model"]["orders"] == [4, 4, 8]
    assert d4["center"]["generators"] == [[0, 0, 4]]
    assert d4["quotient"]["orders"] == [4, 4, 4]


def test_verify_and_classify():
    row = rigidity.verify("C3", 2, with_oracle=True)
    assert row["match"] and row["oracle"] == "agree"
    assert rigidity.classify("A1", 3)["outcome"] == "ExceptionalA1"
    v = rigidity.classify_setup(5, 0, "2D4")
    assert v["outcome"] == "Exceptional2Dn"
    assert v["kernel_order"] == 2


def test_witnesses():
    assert rigidity.witness_a1(3)["verified"]
    assert not rigidity.witness_a1(3, 3)["verified"]
    assert rigidity.witness_2dn(4, 2)["verified"]


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        rigidity.root_system("Q9")
    with pytest.raises(rigidity.CapExceeded):
        rigidity.weyl_order("E6", cap=100)
