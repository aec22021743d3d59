"""Quantum multiplication by divisors on T*(G/P), in the stable basis.

The operator splits into the classical cup product and the purely quantum
correction.  Both are matrices over the fixed points W/W_P: the classical
part has the translated weight on the diagonal and -h (lam, alpha^vee) at
the reflection cosets of the Bruhat descents; the purely quantum part pairs
each non-Levi positive root with a Novikov factor q^d/(1-q^d) and adds a
scalar diagonal that is forced by the vanishing of the purely quantum action
on the unit class.  An independent localization oracle recomputes the
classical matrix from the restriction tables alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalCheckError
from .parabolic import DegreeVector
from .rootsys import Weight
from .stable import MINUS, PLUS, FixedPoint, StableTables, stable_tables
from .symfield import RatFunc, _ground_to_fraction, sum_fractions


class PointMatrix:
    """Sparse square matrix over the fixed points of one table set."""

    def __init__(self, tables: StableTables, entries=None):
        self.tables = tables
        self.entries = {}
        if entries:
            for key, val in entries.items():
                self[key] = val

    def __getitem__(self, key):
        return self.entries.get(key, self.tables.field.rat(0))

    def __setitem__(self, key, val):
        val = self.tables.field.rat(val)
        if val.is_zero:
            self.entries.pop(key, None)
        else:
            self.entries[key] = val

    def add_to(self, row, col, val):
        self[(row, col)] = self[(row, col)] + val

    def __sub__(self, other):
        out = PointMatrix(self.tables, dict(self.entries))
        for key, val in other.entries.items():
            out[key] = out[key] - val
        return out

    def __matmul__(self, other):
        by_k = {}
        for (k, c), val in other.entries.items():
            by_k.setdefault(k, []).append((c, val))
        acc = {}
        for (r, k), left in self.entries.items():
            for c, right in by_k.get(k, ()):
                acc.setdefault((r, c), []).append(left * right)
        out = PointMatrix(self.tables)
        for key, terms in acc.items():
            out[key] = sum_fractions(terms, self.tables.field)
        return out

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector keyed by fixed points."""
        acc = {}
        for (r, c), val in self.entries.items():
            x = vec.get(c)
            if x is None:
                continue
            x = self.tables.field.rat(x)
            if x.is_zero:
                continue
            acc.setdefault(r, []).append(val * x)
        return {
            r: sum_fractions(terms, self.tables.field)
            for r, terms in acc.items()
        }

    @property
    def is_zero(self):
        return all(v.is_zero for v in self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, PointMatrix):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"PointMatrix({len(self.entries)} nonzero)"


@dataclass
class DivisorOperator:
    """Quantum multiplication by the divisor of a weight, assembled."""

    weight: Weight
    tables: StableTables
    classical: PointMatrix
    quantum: PointMatrix
    total: PointMatrix


def _weight_form(tables: StableTables, w, lam: Weight):
    """The linear form of w(lam) in the a variables."""
    rs = tables.system
    coords = rs.weight_to_root_coords(rs.act_weight(w, lam))
    return tables.field.aform(coords)


def novikov_factor(tables: StableTables, d: DegreeVector) -> RatFunc:
    """q^d / (1 - q^d) with the denominator kept factored."""
    field = tables.field
    unit, facs = field.q_binomial(d.exps)
    num = field.q_monomial(d.exps).quo_ground(unit)
    return RatFunc(field, num, facs, reduce=False)


def classical_matrix(tables: StableTables, lam: Weight) -> PointMatrix:
    """Cup product by the divisor class: diagonal y(lam), off-diagonal
    -h (lam, alpha^vee) at the reflection cosets of Bruhat descents of the
    minimal representative."""
    P = tables.parabolic
    P.check_orthogonal(lam)
    rs = tables.system
    field = tables.field
    out = PointMatrix(tables)
    for col in tables.points:
        y = col.rep
        out[(col, col)] = field.rat(_weight_form(tables, y, lam))
        for alpha in P.complement_roots:
            if rs.act_root(y, alpha).is_positive:
                continue
            row = tables.point(y * rs.reflection(alpha))
            coeff = -Fraction(rs.pairing(lam, alpha))
            out.add_to(row, col, field.rat(coeff) * field.h)
    return out


def classical_matrix_oracle(tables: StableTables, lam: Weight) -> PointMatrix:
    """Localization oracle: the same matrix recovered entry by entry as
    (-1)^m (D stab_+(col), stab_-(row)) with the divisor restricted to each
    fixed point.  Slower but independent of the descent combinatorics."""
    tables.parabolic.check_orthogonal(lam)
    sign = (-1) ** tables.parabolic.m
    out = PointMatrix(tables)
    weighted = {}
    for col in tables.points:
        vec = tables.restriction_vector(PLUS, col)
        weighted[col] = {
            p: _weight_form(tables, p.rep, lam) * v for p, v in vec.items()
        }
    minus_rows = {
        row: tables.restriction_vector(MINUS, row) for row in tables.points
    }
    for col in tables.points:
        for row in tables.points:
            val = tables.pairing(weighted[col], minus_rows[row])
            out[(row, col)] = sign * val
    return out


def cp_constant(tables: StableTables, alpha) -> Fraction:
    """The parabolic constant of a degree class: sum over the class of the
    translated Levi weight products divided by the untranslated one.  The
    ratio of polynomials collapses to a rational number."""
    P = tables.parabolic
    rs = tables.system
    field = tables.field
    d = P.degree(alpha)
    members = [g for dd, gs in P.degree_classes() if dd == d for g in gs]
    num = field.zero
    for g in members:
        refl = rs.reflection(g)
        prod = field.one
        for beta in P.levi_roots:
            prod = prod * field.aform(rs.act_root(refl, beta).coords)
        num += prod
    den = {}
    unit = field.ring.domain.one
    for beta in P.levi_roots:
        u, fac = field.canon_factor(field.aform(beta.coords))
        unit *= u
        den[fac] = den.get(fac, 0) + 1
    val = RatFunc(field, num.quo_ground(unit) if num else num, den)
    poly = val.as_poly("parabolic constant")
    if poly and sum(poly.LM):
        raise InternalCheckError("parabolic constant is not a scalar")
    if not poly:
        return Fraction(0)
    return _ground_to_fraction(poly.LC)


def scalar_term(tables: StableTables, lam: Weight) -> RatFunc:
    """The forced diagonal of the purely quantum part:
    h * sum over non-Levi positive roots of (lam, alpha^vee) q^d/(1-q^d)
    times the translated-over-plain Levi weight ratio.  Free of the a
    variables; checked here against the coarser sum over degree classes."""
    P = tables.parabolic
    P.check_orthogonal(lam)
    rs = tables.system
    field = tables.field
    terms = []
    for alpha in P.complement_roots:
        coeff = Fraction(rs.pairing(lam, alpha))
        if not coeff:
            continue
        refl = rs.reflection(alpha)
        num = field.h
        den = {}
        for beta in P.levi_roots:
            num = num * field.aform(rs.act_root(refl, beta).coords)
            u, fac = field.canon_factor(field.aform(beta.coords))
            num = num.quo_ground(u)
            den[fac] = den.get(fac, 0) + 1
        terms.append(
            field.rat(coeff) * novikov_factor(tables, P.degree(alpha))
            * RatFunc(field, num, den)
        )
    total = sum_fractions(terms, field) if terms else field.rat(0)
    if not field.a_free(total):
        raise InternalCheckError("scalar term kept equivariant variables")
    if total != scalar_term_by_classes(tables, lam):
        raise InternalCheckError("scalar term disagrees with its class form")
    return total


def scalar_term_by_classes(tables: StableTables, lam: Weight) -> RatFunc:
    """Same scalar through the degree classes: h sum_d (lam, d) C_P q^d/(1-q^d)."""
    P = tables.parabolic
    P.check_orthogonal(lam)
    field = tables.field
    terms = []
    for d, members in P.degree_classes():
        coeff = sum(
            (lam.coords[i - 1] * e for i, e in zip(P.free_indices, d.exps)),
            Fraction(0),
        )
        if not coeff:
            continue
        cp = cp_constant(tables, members[0])
        terms.append(
            field.rat(coeff * cp) * field.h * novikov_factor(tables, d)
        )
    return sum_fractions(terms, field) if terms else field.rat(0)


def naive_scalar(tables: StableTables, lam: Weight) -> RatFunc:
    """What the scalar would be without the Levi weight ratios, i.e. with
    every parabolic constant replaced by 1.  Wrong beyond the Borel case;
    kept to pin down that the correction matters."""
    P = tables.parabolic
    P.check_orthogonal(lam)
    rs = tables.system
    field = tables.field
    terms = [
        field.rat(Fraction(rs.pairing(lam, alpha))) * field.h
        * novikov_factor(tables, P.degree(alpha))
        for alpha in P.complement_roots
        if rs.pairing(lam, alpha)
    ]
    return sum_fractions(terms, field) if terms else field.rat(0)


def purely_quantum_matrix(tables: StableTables, lam: Weight) -> PointMatrix:
    """Novikov-weighted reflection moves plus the scalar diagonal."""
    P = tables.parabolic
    P.check_orthogonal(lam)
    rs = tables.system
    field = tables.field
    out = PointMatrix(tables)
    diag = -scalar_term(tables, lam)
    for col in tables.points:
        y = col.rep
        for alpha in P.complement_roots:
            coeff = Fraction(rs.pairing(lam, alpha))
            if not coeff:
                continue
            row = tables.point(y * rs.reflection(alpha))
            if row == col:
                raise InternalCheckError("reflection stayed in the coset")
            out.add_to(
                row, col,
                field.rat(-coeff) * field.h
                * novikov_factor(tables, P.degree(alpha)),
            )
        out[(col, col)] = diag
    return out


def quantum_matrix(tables: StableTables, lam: Weight) -> DivisorOperator:
    classical = classical_matrix(tables, lam)
    quantum = purely_quantum_matrix(tables, lam)
    total = PointMatrix(tables, dict(classical.entries))
    for key, val in quantum.entries.items():
        total[key] = total[key] + val
    return DivisorOperator(lam, tables, classical, quantum, total)


def scalar_antisymmetry_holds(tables: StableTables, lam: Weight,
                              i: int) -> bool:
    """The Levi simple reflection at index i negates the scalar numerator
    sum_alpha (lam, alpha^vee) q^d/(1-q^d) prod sigma_alpha beta; this is
    what makes the full expression divisible by the Levi weight product."""
    P = tables.parabolic
    if i not in P.subset:
        raise InputError("antisymmetry is about reflections inside the Levi")
    P.check_orthogonal(lam)
    rs = tables.system
    field = tables.field
    terms = []
    for alpha in P.complement_roots:
        coeff = Fraction(rs.pairing(lam, alpha))
        if not coeff:
            continue
        refl = rs.reflection(alpha)
        prod = field.one
        for beta in P.levi_roots:
            prod = prod * field.aform(rs.act_root(refl, beta).coords)
        terms.append(
            field.rat(coeff) * novikov_factor(tables, P.degree(alpha)) * prod
        )
    total = sum_fractions(terms, field) if terms else field.rat(0)
    flipped = field.act_rat(rs.simple_reflection(i).mat, total)
    return flipped == -total


def q_zero_limit(tables: StableTables, rf: RatFunc) -> RatFunc:
    """Specialize every Novikov variable to zero; denominators must stay
    invertible there."""
    field = tables.field
    qpos = tuple(range(field.rank + 1, field.nvars))
    num = field.subs_zero(rf.num, qpos)
    unit = field.ring.domain.one
    den = {}
    for fac, mult in rf.den.items():
        f0 = field.subs_zero(fac, qpos)
        if not f0:
            raise ZeroDivisionError("denominator factor vanishes at q = 0")
        if sum(f0.LM) == 0:
            unit *= f0.LC ** mult
        else:
            u, g = field.canon_factor(f0)
            unit *= u ** mult
            den[g] = den.get(g, 0) + mult
    return RatFunc(field, num.quo_ground(unit), den)


def annihilates_unit(tables: StableTables, matrix: PointMatrix) -> bool:
    """Whether the matrix kills the unit class coordinates; the purely
    quantum part must."""
    image = matrix.apply(tables.unit_coords())
    return all(v.is_zero for v in image.values())


def commutator(a: PointMatrix, b: PointMatrix) -> PointMatrix:
    return (a @ b) - (b @ a)
