"""Restriction tables for the stable basis of a cotangent bundle T*(G/P).

Fixed points are cosets in W/W_P, written through their minimal-length
representatives.  For a chamber (plus or minus) the table stores, for every
pair of fixed points, the polynomial restriction stab(class)|_point in the
equivariant parameters a_i and the dilation weight h.

The plus table over the full flag variety comes from the subword expansion
along a reduced word of the class element.  The minus table is then forced
by duality: against the plus table and the tangent Euler classes it must
produce (-1)^m times the identity, and that system is triangular with
invertible diagonal, so it is solved by induction up the Bruhat order.
Parabolic tables are coset sums of Borel tables divided by the Levi weights
at each member.  Every entry is asserted to reduce to a polynomial; a
residual denominator anywhere means a convention error upstream, so that
assertion is the first thing to look at when hacking on this file.

All tables are immutable after construction and safe to share between
threads; building is memoized per parabolic and optionally persisted to a
cache directory (env STABLE_CACHE_DIR) in a stable JSON layout.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import defaultdict
from dataclasses import dataclass

from .errors import InputError, InternalCheckError
from .parabolic import Parabolic, parabolic
from .rootsys import WeylElement
from .symfield import RatFunc, SymField, sum_factored_terms, sum_fractions

CACHE_ENV = "STABLE_CACHE_DIR"
CACHE_FORMAT = "qstab-table-v1"

PLUS = "plus"
MINUS = "minus"
CHAMBERS = (PLUS, MINUS)


@dataclass(frozen=True)
class FixedPoint:
    """Torus fixed point of T*(G/P): a coset, held by its minimal
    representative."""

    rep: WeylElement
    parabolic: Parabolic

    @property
    def key(self) -> str:
        """Stable string key: the reduced word digits, or 'e'."""
        return "".join(str(i) for i in self.rep.word) or "e"

    def __repr__(self):
        return f"FixedPoint({self.key})"


def word_key(w: WeylElement) -> str:
    return "".join(str(i) for i in w.word) or "e"


class StableTables:
    """Restriction tables and Euler data for one parabolic.

    Entries are plain ring polynomials; use :meth:`entry` for access with
    zero-filling.  Construction order: plus table (subword formula or coset
    reduction), then minus (duality solve or coset reduction).
    """

    def __init__(self, P: Parabolic, check_words: bool = False):
        self.parabolic = P
        self.system = P.system
        self.field = SymField(self.system.rank, len(P.free_indices))
        self.points = tuple(
            FixedPoint(rep, P) for rep in P.minimal_representatives()
        )
        self._by_rep = {fp.rep: fp for fp in self.points}
        self._euler = {}
        self._diag = {}
        self._tables = {}
        self._check_words = check_words
        self._leq = {}
        for a in self.points:
            for b in self.points:
                self._leq[(a, b)] = self.system.bruhat_leq(a.rep, b.rep)

    # -- fixed point helpers

    def point(self, w: WeylElement) -> FixedPoint:
        fp = self._by_rep.get(self.parabolic.minimal_rep(w))
        if fp is None:
            raise InternalCheckError("element escaped the coset table")
        return fp

    def leq(self, a: FixedPoint, b: FixedPoint) -> bool:
        return self._leq[(a, b)]

    # -- Euler classes at fixed points

    def tangent_euler_factors(self, fp: FixedPoint):
        """e(T_p X) for X = T*(G/P), as (unit, factor dict): the product of
        (-y gamma)(y gamma - h) over the non-Levi positive roots."""
        cached = self._euler.get(fp)
        if cached is not None:
            return cached
        field = self.field
        rs = self.system
        unit = field.ring.domain.one
        facs = {}
        for g in self.parabolic.complement_roots:
            img = rs.act_root(fp.rep, g)
            for form in (-field.aform(img.coords),
                         field.aform(img.coords) - field.h):
                u, fac = field.canon_factor(form)
                unit *= u
                facs[fac] = facs.get(fac, 0) + 1
        self._euler[fp] = (unit, facs)
        return unit, facs

    def tangent_euler(self, fp: FixedPoint):
        return self._expand(*self.tangent_euler_factors(fp))

    def cotangent_fibre_euler(self, fp: FixedPoint):
        """e of the cotangent fibre at the point: prod (y gamma - h)."""
        field = self.field
        out = field.one
        for g in self.parabolic.complement_roots:
            img = self.system.act_root(fp.rep, g)
            out = out * (field.aform(img.coords) - field.h)
        return out

    def a_weight_product(self, fp: FixedPoint):
        """prod of y gamma over non-Levi positive roots: the A-equivariant
        Euler class of the cotangent fibre, which pins the diagonal sign."""
        field = self.field
        out = field.one
        for g in self.parabolic.complement_roots:
            img = self.system.act_root(fp.rep, g)
            out = out * field.aform(img.coords)
        return out

    def signed_normal_minus(self, fp: FixedPoint, chamber: str):
        """The diagonal value of the stable basis: the Euler class of the
        chamber-negative half of the normal bundle, signed so that its h -> 0
        limit is the A-weight product of the cotangent fibre.

        Returns (unit, factor dict)."""
        field = self.field
        rs = self.system
        unit = field.ring.domain.one
        facs = {}
        flipped = 0
        for g in self.parabolic.complement_roots:
            img = rs.act_root(fp.rep, g)
            positive = img.is_positive
            if chamber == PLUS:
                # attracting directions lose their fibre twist
                form = -field.aform(img.coords) if positive \
                    else field.aform(img.coords) - field.h
                flipped += positive
            else:
                form = field.aform(img.coords) - field.h if positive \
                    else -field.aform(img.coords)
                flipped += not positive
            u, fac = field.canon_factor(form)
            unit *= u
            facs[fac] = facs.get(fac, 0) + 1
        if flipped % 2:
            unit = -unit
        return unit, facs

    def _expand(self, unit, facs):
        out = self.field.ring.ground_new(unit)
        for fac, mult in facs.items():
            for _ in range(mult):
                out = out * fac
        return out

    # -- tables

    def table(self, chamber: str) -> dict:
        if chamber not in CHAMBERS:
            raise InputError(f"chamber must be one of {CHAMBERS}")
        tab = self._tables.get(chamber)
        if tab is None:
            if self.parabolic.subset:
                tab = self._build_parabolic(chamber)
            elif chamber == PLUS:
                tab = self._build_borel_plus()
            else:
                tab = self._build_borel_minus()
            self._tables[chamber] = tab
        return tab

    def entry(self, chamber: str, cls, point):
        """Restriction stab_chamber(cls)|_point as a polynomial (zero when
        absent).  Accepts FixedPoint or WeylElement arguments."""
        if isinstance(cls, WeylElement):
            cls = self.point(cls)
        if isinstance(point, WeylElement):
            point = self.point(point)
        return self.table(chamber).get((cls, point), self.field.zero)

    def diagonal(self, chamber: str, fp: FixedPoint):
        key = (chamber, fp)
        if key not in self._diag:
            self._diag[key] = self._expand(*self.signed_normal_minus(fp, chamber))
        return self._diag[key]

    def _build_borel_plus(self):
        field = self.field
        tab = {}
        for fp in self.points:
            col = _subword_column(field, self.system, fp.rep.word)
            if self._check_words:
                alt = alternative_word(fp.rep)
                if alt != fp.rep.word:
                    other = _subword_column(field, self.system, alt)
                    if other != col:
                        raise InternalCheckError(
                            f"restriction column of {fp} depends on the "
                            "reduced word"
                        )
            for w, val in col.items():
                if val:
                    tab[(fp, self.point(w))] = val
        return tab

    def _build_borel_minus(self):
        """Solve the duality relations upward in Bruhat order.  For a class c
        the support is {p >= c}; the diagonal comes from the base relation and
        each higher entry from the single new unknown in its relation."""
        field = self.field
        plus = self.table(PLUS)
        m = self.parabolic.m
        sign_m = -1 if m % 2 else 1
        tab = {}
        for c in self.points:
            de_unit, de_facs = self.signed_normal_minus(c, PLUS)
            if self.entry(PLUS, c, c) != self._expand(de_unit, de_facs):
                raise InternalCheckError(
                    f"plus diagonal at {c} disagrees with the normal bundle"
                )
            e_unit, e_facs = self.tangent_euler_factors(c)
            # stab_-(c)|_c = (-1)^m e(T_c X) / stab_+(c)|_c, purely factored
            base_facs = dict(e_facs)
            for fac, mult in de_facs.items():
                if base_facs.get(fac, 0) < mult:
                    raise InternalCheckError("diagonal does not divide Euler")
                base_facs[fac] -= mult
                if not base_facs[fac]:
                    del base_facs[fac]
            base_unit = sign_m * e_unit / de_unit
            tab[(c, c)] = self._expand(base_unit, base_facs)
            for y in self.points:
                if y is c or not self.leq(c, y):
                    continue
                terms = []
                for p in self.points:
                    if (c, p) not in tab or not self.leq(p, y):
                        continue
                    val = plus.get((y, p))
                    if not val:
                        continue
                    unit, facs = self.tangent_euler_factors(p)
                    terms.append(RatFunc(
                        field, (val * tab[(c, p)]).quo_ground(unit),
                        dict(facs),
                    ))
                if not terms:
                    continue
                s = sum_fractions(terms, field)
                dy_unit, dy_facs = self.signed_normal_minus(y, PLUS)
                ey_unit, ey_facs = self.tangent_euler_factors(y)
                quo_facs = dict(ey_facs)
                for fac, mult in dy_facs.items():
                    if quo_facs.get(fac, 0) < mult:
                        raise InternalCheckError("diagonal does not divide Euler")
                    quo_facs[fac] -= mult
                    if not quo_facs[fac]:
                        del quo_facs[fac]
                ratio = self._expand(-ey_unit / dy_unit, quo_facs)
                val = (s * ratio).as_poly(
                    f"minus-chamber entry ({c}, {y})"
                )
                if val:
                    tab[(c, y)] = val
        return {k: v for k, v in tab.items() if v}

    def _build_parabolic(self, chamber: str):
        borel = stable_tables(parabolic(self.system, ()))
        bfield = borel.field
        field = self.field
        levi = self.parabolic.levi_roots
        tab = {}
        # every pair is computed; the support property is verified later,
        # not assumed
        for c in self.points:
            for p in self.points:
                terms = []
                for z in self.parabolic.coset_members(p.rep):
                    val = borel.entry(chamber, c.rep, z)
                    if not val:
                        continue
                    den = {}
                    unit = bfield.ring.domain.one
                    for beta in levi:
                        u, fac = bfield.canon_factor(
                            bfield.aform(self.system.act_root(z, beta).coords)
                        )
                        unit *= u
                        den[fac] = den.get(fac, 0) + 1
                    terms.append(RatFunc(
                        bfield, val.quo_ground(unit), den
                    ))
                if not terms:
                    continue
                total = sum_fractions(terms, bfield).as_poly(
                    f"coset reduction entry ({c}, {p})"
                )
                if total:
                    tab[(c, p)] = _transport(bfield, field, total)
        return tab

    # -- verification

    def verify_axioms(self, chamber: str):
        """Check support, diagonal normalization, and h-divisibility for
        every entry; returns a list of failure descriptions."""
        failures = []
        tab = self.table(chamber)
        field = self.field
        for (c, p), val in tab.items():
            inside = self.leq(p, c) if chamber == PLUS else self.leq(c, p)
            if not inside and val:
                failures.append(f"{chamber} support violated at ({c}, {p})")
        for c in self.points:
            diag = self.entry(chamber, c, c)
            if diag != self.diagonal(chamber, c):
                failures.append(f"{chamber} diagonal wrong at {c}")
            at_zero = field.subs_h_zero(diag)
            if at_zero != self.a_weight_product(c):
                failures.append(f"{chamber} diagonal sign wrong at {c}")
            for p in self.points:
                if p is c:
                    continue
                inside = self.leq(p, c) if chamber == PLUS else self.leq(c, p)
                val = self.entry(chamber, c, p)
                if inside and not field.h_divisible(val):
                    failures.append(
                        f"{chamber} entry at ({c}, {p}) not divisible by h"
                    )
        return failures

    def check_duality(self):
        """The two chambers must pair to (-1)^m times the identity under the
        localization form; returns failure descriptions."""
        failures = []
        field = self.field
        target = field.rat((-1) ** self.parabolic.m)
        for y in self.points:
            for w in self.points:
                terms = []
                for p in self.points:
                    a = self.entry(PLUS, y, p)
                    if not a:
                        continue
                    b = self.entry(MINUS, w, p)
                    if not b:
                        continue
                    unit, facs = self.tangent_euler_factors(p)
                    terms.append(RatFunc(
                        field, (a * b).quo_ground(unit), dict(facs)
                    ))
                val = sum_fractions(terms, field) if terms else field.rat(0)
                expect = target if y is w else field.rat(0)
                if val != expect:
                    failures.append(f"duality fails at ({y}, {w})")
        return failures

    def pairing(self, c1: dict, c2: dict) -> RatFunc:
        """Localized inner product sum_p c1[p] c2[p] / e(T_p X) for sparse
        vectors keyed by fixed points."""
        field = self.field
        terms = []
        for p, a in c1.items():
            b = c2.get(p)
            if b is None:
                continue
            ra = field.rat(a)
            rb = field.rat(b)
            if ra.is_zero or rb.is_zero:
                continue
            unit, facs = self.tangent_euler_factors(p)
            prod = ra * rb
            den = dict(prod.den)
            for fac, mult in facs.items():
                den[fac] = den.get(fac, 0) + mult
            terms.append(RatFunc(
                field, prod.num.quo_ground(unit), den
            ))
        return sum_fractions(terms, field) if terms else field.rat(0)

    def restriction_vector(self, chamber: str, cls) -> dict:
        if isinstance(cls, WeylElement):
            cls = self.point(cls)
        return {
            p: self.entry(chamber, cls, p)
            for p in self.points
            if self.table(chamber).get((cls, p))
        }

    def unit_coords(self) -> dict:
        """Coordinates of the unit class in the plus basis: pair against the
        minus chamber and twist by (-1)^m."""
        field = self.field
        sign = (-1) ** self.parabolic.m
        ones = {p: field.one for p in self.points}
        return {
            y: sign * self.pairing(ones, self.restriction_vector(MINUS, y))
            for y in self.points
        }

    def mod_hsq_closed_form(self, chamber: str, cls: FixedPoint,
                            point: FixedPoint):
        """Truncation mod h^2 of an off-diagonal entry, by the closed
        one-reflection formula.  Exactly one root can contribute; zero when
        none does.  The diagonal is excluded: there the entry keeps its
        h-free Euler term and no single reflection reproduces it."""
        if cls is point or cls == point:
            raise InputError("closed form is only defined off the diagonal")
        field = self.field
        rs = self.system
        P = self.parabolic
        # the moving element: class rep for the plus chamber, point rep for minus
        y = cls.rep if chamber == PLUS else point.rep
        other = point if chamber == PLUS else cls
        hits = []
        for beta in P.complement_roots:
            if rs.act_root(y, beta).is_positive:
                continue
            if self.point(y * rs.reflection(beta)) == other:
                hits.append(beta)
        if not hits:
            return field.zero
        if len(hits) > 1:
            raise InternalCheckError("two reflections hit the same coset")
        beta = hits[0]
        num = field.h
        for g in rs.positive_roots:
            num = num * field.aform(g.coords)
        den = {field.aform(rs.act_root(y, beta).coords): 1}
        tail = y * rs.reflection(beta) if chamber == PLUS else y
        for alpha in P.levi_roots:
            fac = field.aform(rs.act_root(tail, alpha).coords)
            den[fac] = den.get(fac, 0) + 1
        sign = -1 if (y.length + 1) % 2 else 1
        val = RatFunc(field, sign * num, den).as_poly("mod-h^2 closed form")
        return val


def _transport(src: SymField, dst: SymField, f):
    """Move a polynomial between fields that share the variable list prefix
    (the parabolic field has fewer q slots than the Borel one, but table
    entries never involve q)."""
    out = {}
    for monom, coeff in f.items():
        if any(monom[src.rank + 1:]):
            raise InternalCheckError("table entry unexpectedly involves q")
        out[monom[: src.rank + 1] + (0,) * dst.nq] = coeff
    return dst.ring(out)


def _subword_column(field: SymField, rs, word):
    """All restrictions of the plus-chamber class with the given reduced
    word, via the signed subword expansion.  Returns {element: polynomial}.

    Each branch keeps its numerator and denominator factored; per target
    element the branches are summed over a common denominator and the
    result, times the product of all positive roots, must be polynomial."""
    letters = [rs.simple_reflection(i) for i in word]
    simples = [rs.simple_root(i) for i in word]
    l = len(word)
    buckets = defaultdict(list)
    h = field.h
    sign = -1 if l % 2 else 1

    def descend(t, u, numfac, denfac, skipped):
        if t == l:
            nf = dict(numfac)
            if skipped:
                nf[h] = nf.get(h, 0) + skipped
            buckets[u].append((sign, nf, dict(denfac)))
            return
        # skip letter t: its root, moved by the product so far, divides
        gap = field.aform(rs.act_root(u, simples[t]).coords)
        denfac[gap] = denfac.get(gap, 0) + 1
        descend(t + 1, u, numfac, denfac, skipped + 1)
        denfac[gap] -= 1
        if not denfac[gap]:
            del denfac[gap]
        # take letter t
        u2 = u * letters[t]
        beta = field.aform(rs.act_root(u2, simples[t]).coords)
        numfac[beta - h] = numfac.get(beta - h, 0) + 1
        denfac[beta] = denfac.get(beta, 0) + 1
        descend(t + 1, u2, numfac, denfac, skipped)
        numfac[beta - h] -= 1
        if not numfac[beta - h]:
            del numfac[beta - h]
        denfac[beta] -= 1
        if not denfac[beta]:
            del denfac[beta]

    descend(0, rs.identity, {}, {}, 0)
    allroots = field.one
    for g in rs.positive_roots:
        allroots = allroots * field.aform(g.coords)
    out = {}
    for w, terms in buckets.items():
        total = sum_factored_terms(field, terms)
        val = (total * allroots).as_poly(
            f"restriction at {word_key(w)} of class {''.join(map(str, word))}"
        )
        if val:
            out[w] = val
    return out


def alternative_word(w: WeylElement):
    """A reduced word for w differing from the canonical one when the left
    descent set allows a different first letter; used to spot-check word
    independence of the subword expansion."""
    rs = w.system
    out = []
    cur = w
    first = True
    while cur.length > 0:
        descents = sorted(cur.left_descents())
        i = descents[1] if first and len(descents) > 1 else descents[0]
        first = False
        out.append(i)
        cur = rs.simple_reflection(i) * cur
    return tuple(out)


def cotangent_ratio_check(field: SymField, rs, word) -> bool:
    """Identity behind the Hecke conjugation: along any word (reduced or
    not) with product w, the telescoping ratio of shifted weights equals
    prod (gamma - h) / prod (w gamma - h) over positive roots."""
    u = rs.identity
    lhs = field.rat(1)
    for i in word:
        prev = rs.act_root(u, rs.simple_root(i))
        u = u * rs.simple_reflection(i)
        cur = rs.act_root(u, rs.simple_root(i))
        lhs = lhs * RatFunc(
            field,
            field.aform(prev.coords) - field.h,
            {field.aform(cur.coords) - field.h: 1},
        )
    num = field.one
    den = {}
    for g in rs.positive_roots:
        num = num * (field.aform(g.coords) - field.h)
        img = field.aform(rs.act_root(u, g).coords) - field.h
        unit, fac = field.canon_factor(img)
        den[fac] = den.get(fac, 0) + 1
        num = num.quo_ground(unit)
    rhs = RatFunc(field, num, den)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Shared table instances and the on-disk cache

_TABLES: dict = {}


def stable_tables(P: Parabolic, cache_dir=None, check_words=False) -> StableTables:
    """Tables for a parabolic, memoized in-process.  When a cache directory
    is given (or the STABLE_CACHE_DIR environment variable is set), built
    tables are persisted there and reloaded on later runs."""
    tables = _TABLES.get(P)
    if tables is None:
        tables = StableTables(P, check_words=check_words)
        _TABLES[P] = tables
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if cache_dir:
        for chamber in CHAMBERS:
            path = cache_path(cache_dir, P, chamber)
            if chamber in tables._tables:
                # built earlier in this process: persist if not on disk yet
                if not os.path.exists(path):
                    write_table_file(tables, chamber, path)
            elif not load_table_file(tables, chamber, path):
                tables.table(chamber)
                write_table_file(tables, chamber, path)
    return tables


def table_header(P: Parabolic, chamber: str) -> dict:
    return {
        "format": CACHE_FORMAT,
        "cartan": [list(row) for row in P.system.cartan.entries],
        "parabolic": sorted(P.subset),
        "chamber": chamber,
    }


def table_payload(tables: StableTables, chamber: str) -> dict:
    """JSON-ready dict with a header and rows keyed by minimal-rep words."""
    field = tables.field
    rows = {}
    for c in tables.points:
        row = {}
        for p in tables.points:
            val = tables.table(chamber).get((c, p))
            if val:
                row[p.key] = field.to_string(val)
        rows[c.key] = row
    return {"header": table_header(tables.parabolic, chamber), "data": rows}


def cache_path(cache_dir, P: Parabolic, chamber: str) -> str:
    header = table_header(P, chamber)
    digest = hashlib.sha256(
        json.dumps(header, sort_keys=True).encode()
    ).hexdigest()[:16]
    return os.path.join(cache_dir, f"stab_{digest}.json")

def load_table_file(tables: StableTables, chamber: str, path) -> bool:
    """Load a table from disk if present and compatible; returns success."""
    if not os.path.exists(path):
        return False
    with open(path) as fh:
        blob = json.load(fh)
    if blob.get("header") != table_header(tables.parabolic, chamber):
        return False
    by_key = {fp.key: fp for fp in tables.points}
    tab = {}
    for ckey, row in blob["data"].items():
        for pkey, text in row.items():
            tab[(by_key[ckey], by_key[pkey])] = tables.field.parse(text)
    tables._tables[chamber] = tab
    return True


def write_table_file(tables: StableTables, chamber: str, path):
    import filelock

    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    lock = filelock.FileLock(path + ".lock")
    with lock:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(table_payload(tables, chamber), fh, indent=1,
                      sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
