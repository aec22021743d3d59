"""Graded affine Hecke operators and the conjugated quantum connection.

The Demazure-Lusztig operator of a simple root acts on polynomials by
f -> (h f + (alpha - h) s(f)) / alpha; the division is exact.  Nonsimple
roots get the composite along a reduced word of their reflection, which is
word independent.  Out of these we build the divisor shift operator for the
full flag case and its parabolic conjugation, whose action on Levi-invariant
polynomials matches quantum multiplication in the stable basis.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import InputError, InternalCheckError
from .rootsys import Root, RootSystem, Weight, WeylElement
from .stable import MINUS, PLUS, StableTables, alternative_word
from .symfield import RatFunc, SymField, sum_fractions
from .quantum import novikov_factor, quantum_matrix


def demazure_lusztig(field: SymField, rs: RootSystem, i: int, f):
    """Simple operator: (h f + (alpha_i - h) s_i(f)) / alpha_i."""
    alpha = field.aform(rs.simple_root(i).coords)
    num = field.h * f + (alpha - field.h) * field.act(
        rs.simple_reflection(i).mat, f
    )
    quo, rem = num.div(alpha)
    if rem:
        raise InternalCheckError("twisted reflection left a remainder")
    return quo


def demazure_lusztig_root(field: SymField, rs: RootSystem, root: Root, f,
                          word=None):
    """Composite operator of an arbitrary positive root, along a reduced
    word of its reflection (rightmost letter acts first)."""
    if not root.is_positive:
        raise InputError("operators are indexed by positive roots")
    if word is None:
        word = rs.reflection(root).word
    for i in reversed(word):
        f = demazure_lusztig(field, rs, i, f)
    return f


def weight_form(field: SymField, rs: RootSystem, lam: Weight):
    return field.aform(rs.weight_to_root_coords(lam))


def twisted_commutation_defect(field: SymField, rs: RootSystem, root: Root,
                               lam: Weight, f):
    """sigma~(x_lam f) - x_{sigma lam} sigma~(f).  For a simple root this
    collapses to h (lam, root^vee) f; composites pick up lower terms."""
    xlam = weight_form(field, rs, lam)
    xslam = weight_form(field, rs, rs.act_weight(rs.reflection(root), lam))
    return (
        demazure_lusztig_root(field, rs, root, xlam * f)
        - xslam * demazure_lusztig_root(field, rs, root, f)
    )


def bmo_operator(tables: StableTables, lam: Weight, f) -> RatFunc:
    """Full flag shift operator
    x_lam f + h sum_{alpha > 0} (lam, alpha^vee) Q_alpha (sigma~_alpha - 1) f
    with Q_alpha = q^{alpha^vee} / (1 - q^{alpha^vee})."""
    P = tables.parabolic
    if P.subset:
        raise InputError("the shift operator lives on the full flag variety")
    rs = tables.system
    field = tables.field
    terms = [field.rat(weight_form(field, rs, lam) * f)]
    for alpha in rs.positive_roots:
        coeff = Fraction(rs.pairing(lam, alpha))
        if not coeff:
            continue
        moved = demazure_lusztig_root(field, rs, alpha, f)
        terms.append(
            field.rat(coeff) * field.h
            * novikov_factor(tables, P.degree(alpha))
            * field.rat(moved - f)
        )
    return sum_fractions(terms, field)


def _levi_shift(tables: StableTables):
    """prod over Levi positive roots of (beta - h), as poly and factor data."""
    field = tables.field
    poly = field.one
    unit = field.ring.domain.one
    facs = {}
    for beta in tables.parabolic.levi_roots:
        form = field.aform(beta.coords) - field.h
        poly = poly * form
        u, fac = field.canon_factor(form)
        unit *= u
        facs[fac] = facs.get(fac, 0) + 1
    return poly, unit, facs


def levi_invariant(tables: StableTables, f) -> bool:
    field = tables.field
    rs = tables.system
    return all(
        field.act(rs.simple_reflection(i).mat, f) == f
        for i in tables.parabolic.subset
    )


def pcon_operator(tables: StableTables, lam: Weight, f) -> RatFunc:
    """Conjugated connection on Levi-invariant polynomials:

    x_lam f + h sum over non-Levi alpha of (lam, alpha^vee) Q_{d(alpha)}
    ( sigma~_alpha(f Pi) / Pi - (prod sigma_alpha beta / prod beta) f )

    where Pi is the product of (beta - h) over the Levi positive roots.
    The single terms are honestly rational; only the assembled sum drops
    back to Novikov denominators."""
    P = tables.parabolic
    P.check_orthogonal(lam)
    rs = tables.system
    field = tables.field
    if not levi_invariant(tables, f):
        raise InputError("the conjugated connection needs invariant input")
    pi, pi_unit, pi_facs = _levi_shift(tables)
    terms = [field.rat(weight_form(field, rs, lam) * f)]
    for alpha in P.complement_roots:
        coeff = Fraction(rs.pairing(lam, alpha))
        if not coeff:
            continue
        moved = demazure_lusztig_root(field, rs, alpha, f * pi)
        conj = RatFunc(field, moved.quo_ground(pi_unit), pi_facs)
        refl = rs.reflection(alpha)
        ratio_num = f
        ratio_den = {}
        unit = field.ring.domain.one
        for beta in P.levi_roots:
            ratio_num = ratio_num * field.aform(rs.act_root(refl, beta).coords)
            u, fac = field.canon_factor(field.aform(beta.coords))
            unit *= u
            ratio_den[fac] = ratio_den.get(fac, 0) + 1
        terms.append(
            field.rat(coeff) * field.h
            * novikov_factor(tables, P.degree(alpha))
            * (conj - RatFunc(field, ratio_num.quo_ground(unit), ratio_den))
        )
    out = sum_fractions(terms, field)
    if not all(field.a_free(fac) for fac in out.den):
        raise InternalCheckError("connection kept equivariant denominators")
    if not levi_invariant(tables, out.num):
        raise InternalCheckError("connection broke Levi invariance")
    return out


def _a_monomials(field: SymField, max_degree: int):
    rank = field.rank
    exps = sorted(
        (e for e in product(range(max_degree + 1), repeat=rank)
         if sum(e) <= max_degree),
        key=lambda e: (sum(e), e),
    )
    gens = field.gens[:rank]
    for e in exps:
        mono = field.one
        for g, k in zip(gens, e):
            mono = mono * g ** k
        yield mono


def orbit_sums(tables: StableTables, max_degree: int):
    """Levi-invariant polynomials: orbit sums of the a monomials up to the
    given total degree, deduplicated, constants first."""
    field = tables.field
    levi = tables.parabolic.levi_weyl_elements()
    seen = set()
    out = []
    for f in _a_monomials(field, max_degree):
        total = field.zero
        for mono in {field.act(w.mat, f) for w in levi}:
            total += mono
        if not total:
            continue
        key = tuple(sorted(total.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(total)
    return out


def class_from_polynomial(tables: StableTables, f) -> dict:
    """The equivariant class whose fixed point restrictions are z(f) for the
    minimal coset representatives z."""
    if not levi_invariant(tables, f):
        raise InputError("restriction classes need invariant input")
    field = tables.field
    return {p: field.act(p.rep.mat, f) for p in tables.points}


def stable_coords(tables: StableTables, gamma: dict) -> dict:
    """Coordinates in the plus stable basis by pairing with the minus one."""
    sign = (-1) ** tables.parabolic.m
    return {
        y: sign * tables.pairing(gamma, tables.restriction_vector(MINUS, y))
        for y in tables.points
    }


def crosscheck_conjugation(tables: StableTables, lam: Weight, f) -> tuple:
    """Both sides of the conjugation identity for one invariant polynomial:
    push the class of f through the divisor matrix and restrict at the base
    point, against the operator formula."""
    field = tables.field
    gamma = class_from_polynomial(tables, f)
    coords = stable_coords(tables, gamma)
    op = quantum_matrix(tables, lam)
    image = op.total.apply(coords)
    base = tables.point(tables.system.identity)
    terms = [
        val * tables.entry(PLUS, row, base)
        for row, val in image.items()
        if tables.entry(PLUS, row, base)
    ]
    lhs = sum_fractions(terms, field) if terms else field.rat(0)
    rhs = pcon_operator(tables, lam, f)
    return lhs, rhs
