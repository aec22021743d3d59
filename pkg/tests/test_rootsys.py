from fractions import Fraction

import pytest

from qstab import (
    CartanDatum,
    Root,
    Weight,
    build_root_system,
    builtin_cartan,
    cartan_from_file,
    root_system,
)
from qstab.errors import (
    InputError,
    InvalidCartanError,
    NonFiniteTypeError,
    RankMismatchError,
)


def test_builtin_matrices():
    assert builtin_cartan("A2").entries == ((2, -1), (-1, 2))
    assert builtin_cartan("B2").entries == ((2, -1), (-2, 2))
    assert builtin_cartan("C2").entries == ((2, -2), (-1, 2))
    assert builtin_cartan("B3").entries == ((2, -1, 0), (-1, 2, -1), (0, -2, 2))
    assert builtin_cartan("C3").entries == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert builtin_cartan("G2").entries == ((2, -1), (-3, 2))
    assert builtin_cartan("D4").entries == (
        (2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2))
    with pytest.raises(InputError):
        builtin_cartan("E8")
    with pytest.raises(InputError):
        builtin_cartan("D2")


# positive root count and group order per type, closed under hand formulas
SIZES = {
    "A1": (1, 2),
    "A2": (3, 6),
    "A3": (6, 24),
    "A4": (10, 120),
    "B2": (4, 8),
    "B3": (9, 48),
    "C3": (9, 48),
    "D4": (12, 192),
    "G2": (6, 12),
}


@pytest.mark.parametrize("name", sorted(SIZES))
def test_counts_and_orders(name):
    rs = root_system(name)
    nroots, order = SIZES[name]
    assert len(rs.positive_roots) == nroots
    assert rs.weyl_order() == order
    assert len(list(rs.weyl_elements())) == order


def test_b2_roots_and_coroots():
    rs = root_system("B2")
    have = {g.coords: rs.coroot_coords(g) for g in rs.positive_roots}
    assert have == {
        (1, 0): (1, 0),
        (0, 1): (0, 1),
        (1, 1): (2, 1),
        (1, 2): (1, 1),
    }


def test_g2_roots():
    rs = root_system("G2")
    have = {g.coords for g in rs.positive_roots}
    assert have == {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}


def test_negative_root_coroot():
    rs = root_system("B2")
    long_root = Root((1, 1))
    assert rs.coroot_coords(-long_root) == (-2, -1)
    assert rs.is_root(Root((-1, -2)))
    assert not rs.is_root(Root((2, 1)))


def test_simple_reflection_action():
    rs = root_system("A2")
    s1, s2 = rs.simple_reflection(1), rs.simple_reflection(2)
    a1, a2 = rs.simple_root(1), rs.simple_root(2)
    assert rs.act_root(s1, a1).coords == (-1, 0)
    assert rs.act_root(s1, a2).coords == (1, 1)
    assert rs.act_root(s2, a1).coords == (1, 1)
    assert s1 * s1 == rs.identity
    assert (s1 * s2) * s1 == s1 * (s2 * s1)


def test_words_and_lengths():
    rs = root_system("A2")
    w0 = rs.longest_element()
    assert w0.length == 3
    assert w0.word == (1, 2, 1)
    assert rs.from_word((1, 2, 1)) == rs.from_word((2, 1, 2))
    assert rs.from_word((1, 1)) == rs.identity
    for w in rs.weyl_elements():
        assert rs.from_word(w.word) == w
        assert len(w.word) == w.length
        assert w.inverse() * w == rs.identity


def test_longest_lengths():
    for name, length in [("A3", 6), ("B2", 4), ("G2", 6), ("D4", 12)]:
        assert root_system(name).longest_element().length == length


def test_descents():
    rs = root_system("B2")
    w = rs.from_word((1, 2))
    assert w.left_descents() == {1}
    assert w.right_descents() == {2}
    assert rs.longest_element().left_descents() == {1, 2}


def test_inversions():
    rs = root_system("A2")
    w = rs.from_word((1, 2))
    inv = {g.coords for g in rs.inversions(w)}
    # w^{-1} sends exactly these positive roots to negatives
    assert len(inv) == w.length
    w0 = rs.longest_element()
    assert {g.coords for g in rs.inversions(w0)} == {
        g.coords for g in rs.positive_roots}


def test_bruhat_order():
    rs = root_system("A2")
    e = rs.identity
    s1 = rs.simple_reflection(1)
    w0 = rs.longest_element()
    assert rs.bruhat_leq(e, s1)
    assert rs.bruhat_leq(s1, w0)
    assert not rs.bruhat_leq(w0, s1)
    assert not rs.bruhat_leq(rs.from_word((1, 2)), rs.from_word((2, 1)))
    # comparability respects length
    for u in rs.weyl_elements():
        for v in rs.weyl_elements():
            if rs.bruhat_leq(u, v):
                assert u.length <= v.length
                if u.length == v.length:
                    assert u == v


def test_bruhat_b2_chain():
    rs = root_system("B2")
    chain = [(), (1,), (1, 2), (1, 2, 1), (1, 2, 1, 2)]
    for a, b in zip(chain, chain[1:]):
        assert rs.bruhat_leq(rs.from_word(a), rs.from_word(b))


def test_weight_conversion_and_pairing():
    rs = root_system("A2")
    w1 = rs.fundamental_weight(1)
    assert rs.weight_to_root_coords(w1) == (Fraction(2, 3), Fraction(1, 3))
    for i in (1, 2):
        for j in (1, 2):
            assert rs.pairing(rs.fundamental_weight(i), rs.simple_root(j)) \
                == (i == j)
    # pairing against a long coroot in B2
    rsb = root_system("B2")
    assert rsb.pairing(rsb.fundamental_weight(1), Root((1, 1))) == 2


def test_act_weight():
    rs = root_system("A2")
    s1 = rs.simple_reflection(1)
    w1 = rs.fundamental_weight(1)
    img = rs.act_weight(s1, w1)
    # s1(omega1) = omega1 - alpha1, so fundamental coordinates (-1, 1)
    assert img.coords == (-1, 1)


def test_reflection_of_nonsimple_root():
    rs = root_system("A2")
    theta = Root((1, 1))
    r = rs.reflection(theta)
    assert r.length == 3
    assert rs.act_root(r, theta).coords == (-1, -1)
    assert r * r == rs.identity


def test_weyl_enumeration_sorted():
    rs = root_system("A2")
    els = list(rs.weyl_elements())
    keys = [(w.length, w.word) for w in els]
    assert keys == sorted(keys)
    assert els[0] == rs.identity


def test_cartan_validation():
    with pytest.raises(InvalidCartanError):
        CartanDatum(2, ((2, 1), (-1, 2)))  # positive off-diagonal
    with pytest.raises(InvalidCartanError):
        CartanDatum(2, ((2, -1), (0, 2)))  # broken zero symmetry
    with pytest.raises(InvalidCartanError):
        CartanDatum(2, ((1, -1), (-1, 2)))  # diagonal not 2
    with pytest.raises(InvalidCartanError):
        CartanDatum(2, ((2, -1),))


def test_non_finite_rejected():
    affine = CartanDatum(2, ((2, -2), (-2, 2)))
    with pytest.raises(NonFiniteTypeError):
        root_system(affine)
    with pytest.raises(InputError):
        root_system("A9")  # beyond the rank bound


def test_cartan_file(tmp_path):
    path = tmp_path / "cartan.txt"
    path.write_text("# comment line\n2\n2 -1\n-1 2\n")
    datum = cartan_from_file(path)
    assert datum.entries == ((2, -1), (-1, 2))
    assert root_system(datum) is root_system("A2")
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n2 -1\n")
    with pytest.raises(InvalidCartanError):
        cartan_from_file(bad)


def test_build_root_system_interning():
    rs1 = build_root_system([[2, -1], [-1, 2]])
    assert rs1 is root_system("A2")


def test_root_weight_round_trip():
    rs = root_system("B2")
    for g in rs.positive_roots:
        lam = rs.root_to_weight(g)
        assert rs.weight_to_root_coords(lam) == tuple(
            Fraction(c) for c in g.coords)


def test_weight_length_mismatch():
    rs = root_system("A2")
    with pytest.raises(RankMismatchError):
        rs.weight_to_root_coords(Weight((1, 0, 0)))
