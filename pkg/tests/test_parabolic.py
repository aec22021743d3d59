from fractions import Fraction

import pytest

from qstab import DegreeVector, Root, parabolic, root_system
from qstab.errors import DomainError, InputError, OrthogonalityError


def test_subset_validation():
    rs = root_system("A2")
    with pytest.raises(InputError):
        parabolic(rs, (0,))
    with pytest.raises(InputError):
        parabolic(rs, (3,))
    assert parabolic(rs, ()) is parabolic(rs, ())
    assert parabolic(rs, (1, 2)).free_indices == ()


def test_levi_and_complement_split():
    P = parabolic(root_system("A3"), (1, 3))
    assert {g.coords for g in P.levi_roots} == {(1, 0, 0), (0, 0, 1)}
    assert {g.coords for g in P.complement_roots} == {
        (0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)}
    assert P.m == 4
    assert P.free_indices == (2,)


def test_levi_weyl_group():
    P = parabolic(root_system("A3"), (1, 3))
    levi = P.levi_weyl_elements()
    assert len(levi) == 4
    assert all(set(w.word) <= {1, 3} for w in levi)


def test_minimal_representatives_counts():
    cases = [
        ("A2", (), 6),
        ("A2", (2,), 3),
        ("A3", (1, 3), 6),
        ("A3", (2,), 12),
        ("B2", (1,), 4),
    ]
    for name, subset, count in cases:
        P = parabolic(root_system(name), subset)
        reps = P.minimal_representatives()
        assert len(reps) == count
        assert len({P.minimal_rep(w) for w in P.system.weyl_elements()}) \
            == count


def test_gr24_minimal_words():
    P = parabolic(root_system("A3"), (1, 3))
    words = ["".join(map(str, w.word)) or "e"
             for w in P.minimal_representatives()]
    assert words == ["e", "2", "12", "32", "132", "2132"]


def test_minimal_rep_properties():
    rs = root_system("A3")
    P = parabolic(rs, (1, 3))
    for w in rs.weyl_elements():
        rep = P.minimal_rep(w)
        assert P.is_minimal(rep)
        assert rep.length <= w.length
        # rep differs from w by a Levi element on the right
        assert rep.inverse() * w in set(P.levi_weyl_elements())
        # minimal representatives keep the Levi simple roots positive
        for i in P.subset:
            assert rs.act_root(rep, rs.simple_root(i)).is_positive


def test_coset_members_partition():
    P = parabolic(root_system("A2"), (2,))
    seen = set()
    for rep in P.minimal_representatives():
        members = P.coset_members(rep)
        assert len(members) == 2
        assert not (seen & set(members))
        seen.update(members)
    assert len(seen) == 6


def test_degrees():
    P = parabolic(root_system("A3"), (1, 3))
    assert P.degree(Root((0, 1, 0))) == DegreeVector((1,))
    assert P.degree(Root((1, 1, 1))) == DegreeVector((1,))
    with pytest.raises(DomainError):
        P.degree(Root((1, 0, 0)))
    # B2 with I = {1}: degrees read off the coroot coordinate at index 2
    PB = parabolic(root_system("B2"), (1,))
    assert PB.degree(Root((0, 1))) == DegreeVector((1,))
    assert PB.degree(Root((1, 1))) == DegreeVector((1,))
    assert PB.degree(Root((1, 2))) == DegreeVector((1,))


def test_degree_classes():
    P = parabolic(root_system("A3"), (1, 3))
    classes = P.degree_classes()
    assert len(classes) == 1
    d, members = classes[0]
    assert d == DegreeVector((1,))
    assert len(members) == 4
    # A2 with I = {1}: both complement roots fall in one class
    PA = parabolic(root_system("A2"), (1,))
    (d, members), = PA.degree_classes()
    assert {g.coords for g in members} == {(0, 1), (1, 1)}
    # Borel: every positive root is alone in its class iff coroots differ
    PB = parabolic(root_system("A2"), ())
    assert len(PB.degree_classes()) == 3


def test_degree_vector_arithmetic():
    a = DegreeVector((1, 0))
    b = DegreeVector((0, 2))
    assert (a + b).exps == (1, 2)
    assert not a.is_zero
    assert DegreeVector((0, 0)).is_zero


def test_reflection_cosets_distinct():
    P = parabolic(root_system("A3"), (1, 3))
    cosets = P.reflection_cosets()
    assert len(cosets) == len(P.complement_roots)
    ident = P.minimal_rep(P.system.identity)
    assert ident not in cosets.values()


def test_orthogonality_check():
    rs = root_system("A3")
    P = parabolic(rs, (1, 3))
    P.check_orthogonal(rs.fundamental_weight(2))
    with pytest.raises(OrthogonalityError):
        P.check_orthogonal(rs.fundamental_weight(1))


def test_degree_pairing():
    rs = root_system("A3")
    P = parabolic(rs, (1, 3))
    lam = rs.fundamental_weight(2)
    for g in P.complement_roots:
        assert P.degree_pairing(lam, g) == rs.pairing(lam, g)
    with pytest.raises(OrthogonalityError):
        P.degree_pairing(rs.fundamental_weight(1), Root((0, 1, 0)))


def test_parabolic_bruhat():
    rs = root_system("A3")
    P = parabolic(rs, (1, 3))
    reps = P.minimal_representatives()
    e, top = reps[0], reps[-1]
    assert all(P.bruhat_leq(e, r) for r in reps)
    assert all(P.bruhat_leq(r, top) for r in reps)
    assert not P.bruhat_leq(top, e)


def test_full_subset_single_coset():
    P = parabolic(root_system("A2"), (1, 2))
    assert len(P.minimal_representatives()) == 1
    assert P.m == 0
    assert P.complement_roots == ()
