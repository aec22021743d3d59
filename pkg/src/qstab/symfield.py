"""Exact polynomial and rational-function arithmetic for equivariant data.

One :class:`SymField` instance fixes the ambient ring
``QQ[a1..ar, h, q1..qs]``: equivariant parameters ``a_i`` for the simple
roots, the dilation weight ``h``, and Novikov variables ``q_k`` for the free
simple indices of the parabolic at hand.  Polynomials are sympy sparse ring
elements over QQ with graded lex order, which is also the canonical term
order used for serialization.

Rational functions keep their denominators factored.  Every denominator this
package actually produces is a product of linear forms in the ``a_i`` and
``h`` (Euler weights) or of binomials ``q^d - 1``, so reduction is just
repeated exact division of the numerator by each stored factor; no general
gcd runs on hot paths.  Dividing by an arbitrary polynomial is still
supported through a full factorization fallback.

>>> F = SymField(2, 1)
>>> F.to_string(F.aform((1, 1)) - F.h)
'a1 + a2 - h'
>>> F.parse("a1 + a2 - h") == F.aform((1, 1)) - F.h
True
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce as _reduce

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring as _sympy_ring

from .errors import InputError, InternalCheckError, RankMismatchError


def _to_ground(x):
    """Coerce an int, Fraction, or ground element into the QQ domain."""
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return x


def _ground_to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


class SymField:
    """The coefficient field of a fixed rank and Novikov slot count."""

    def __init__(self, rank: int, nq: int = 0):
        if rank < 1:
            raise InputError("rank must be positive")
        if nq < 0:
            raise InputError("number of q variables cannot be negative")
        self.rank = rank
        self.nq = nq
        names = [f"a{i}" for i in range(1, rank + 1)] + ["h"]
        names += [f"q{k}" for k in range(1, nq + 1)]
        self.ring, *gens = _sympy_ring(",".join(names), QQ, grlex)
        self.gens = tuple(gens)
        self.nvars = rank + 1 + nq
        self.h = gens[rank]
        self.zero = self.ring.zero
        self.one = self.ring.one
        self._canon_cache = {}
        self._act_cache = {}
        self._name_to_gen = dict(zip(names, gens))

    # -- constructors

    def avar(self, i: int):
        if not 1 <= i <= self.rank:
            raise RankMismatchError(f"a-index {i} out of range 1..{self.rank}")
        return self.gens[i - 1]

    def qvar(self, k: int):
        if not 1 <= k <= self.nq:
            raise RankMismatchError(f"q-index {k} out of range 1..{self.nq}")
        return self.gens[self.rank + k]

    def const(self, c):
        return self.ring.ground_new(_to_ground(c))

    def aform(self, coeffs):
        """Linear form sum_i coeffs[i] * a_{i+1}; rational coefficients fine."""
        if len(coeffs) != self.rank:
            raise RankMismatchError("coefficient vector has wrong length")
        f = self.ring.zero
        for i, c in enumerate(coeffs):
            c = _to_ground(c)
            if c:
                f += self.ring.term_new(self._unit_monom(i), c)
        return f

    root_form = aform

    def q_monomial(self, exps):
        if len(exps) != self.nq:
            raise RankMismatchError("degree vector has wrong length")
        monom = (0,) * (self.rank + 1) + tuple(exps)
        return self.ring.term_new(monom, QQ(1))

    def _unit_monom(self, pos):
        return tuple(int(k == pos) for k in range(self.nvars))

    # -- canonical factors and factorization

    def canon_factor(self, p):
        """Normalize a nonconstant polynomial to a primitive factor with
        positive leading coefficient; returns (unit, factor) with
        ``p == unit * factor``."""
        cached = self._canon_cache.get(p)
        if cached is not None:
            return cached
        if not p or not sum(p.LM):
            raise InternalCheckError("constant cannot be a denominator factor")
        content, prim = p.primitive()
        if prim.LC < 0:
            content = -content
            prim = -prim
        self._canon_cache[p] = (content, prim)
        self._canon_cache[prim] = (QQ(1), prim)
        return content, prim

    def factor_poly(self, p):
        """Factor into canonical irreducibles: (unit, {factor: multiplicity})
        with ``p == unit * prod factor^mult``.  Linear forms and monomials are
        split off directly; anything else goes through sympy's factorizer."""
        if not p:
            raise ZeroDivisionError("cannot factor zero")
        factors = {}
        unit, p = self.canon_factor(p) if sum(p.LM) else (p.LC, None)
        if p is None:
            return unit, factors
        # peel off monomial content first
        mins = [min(m[i] for m in p.monoms()) for i in range(self.nvars)]
        if any(mins):
            strip = tuple(mins)
            p = self.ring({tuple(e - s for e, s in zip(m, strip)): c
                           for m, c in p.items()})
            for i, e in enumerate(mins):
                if e:
                    factors[self.gens[i]] = factors.get(self.gens[i], 0) + e
            if not sum(p.LM):
                unit *= p.LC
                return unit, factors
            u2, p = self.canon_factor(p)
            unit *= u2
        if sum(p.LM) == 1:
            factors[p] = factors.get(p, 0) + 1
            return unit, factors
        expr = p.as_expr()
        from sympy import factor_list

        coeff, parts = factor_list(expr)
        unit *= QQ(coeff.p, coeff.q)
        for base, mult in parts:
            fac = self.ring.from_expr(base)
            u, fac = self.canon_factor(fac)
            unit *= u ** mult
            factors[fac] = factors.get(fac, 0) + mult
        return unit, factors

    def q_binomial(self, exps):
        """Factored form of 1 - q^exps: returns (unit, {factor: mult})."""
        if not any(exps):
            raise InputError("curve degree must be nonzero")
        if any(e < 0 for e in exps):
            raise InputError("curve degree must be effective")
        return self.factor_poly(self.one - self.q_monomial(exps))

    # -- linear substitutions (Weyl action on the a variables)

    def act(self, mat, f):
        """Substitute a_j -> sum_i mat[i][j] a_i; h and q are untouched.
        ``mat`` is the integer action matrix on simple-root coordinates."""
        imgs, pows = self._act_tables(mat)
        ring = self.ring
        out = ring.zero
        rank = self.rank
        for monom, coeff in f.items():
            tail = (0,) * rank + monom[rank:]
            term = ring.term_new(tail, coeff)
            for i in range(rank):
                e = monom[i]
                if e:
                    pw = pows.get((i, e))
                    if pw is None:
                        pw = imgs[i] ** e
                        pows[(i, e)] = pw
                    term = term * pw
            out += term
        return out

    def _act_tables(self, mat):
        cache = self._act_cache.get(mat)
        if cache is None:
            imgs = []
            for j in range(self.rank):
                img = self.ring.zero
                for i in range(self.rank):
                    if mat[i][j]:
                        img += self.ring.term_new(
                            self._unit_monom(i), QQ(mat[i][j])
                        )
                imgs.append(img)
            cache = (imgs, {})
            self._act_cache[mat] = cache
        return cache

    def act_rat(self, mat, rf: "RatFunc") -> "RatFunc":
        """Weyl substitution on a rational function.  The map is a linear
        isomorphism, so the factored shape survives and no new reduction is
        required."""
        den = {}
        num = self.act(mat, rf.num)
        for fac, mult in rf.den.items():
            u, g = self.canon_factor(self.act(mat, fac))
            den[g] = den.get(g, 0) + mult
            if u != QQ(1):
                num = num.quo_ground(u ** mult)
        return RatFunc(self, num, den, reduce=False)

    # -- specializations and predicates

    def subs_zero(self, f, positions):
        """Set the variables at the given 0-based positions to zero."""
        keep = {}
        for monom, coeff in f.items():
            if all(monom[i] == 0 for i in positions):
                keep[monom] = coeff
        return self.ring(keep)

    def subs_h_zero(self, f):
        return self.subs_zero(f, (self.rank,))

    def truncate_h2(self, f):
        """Drop all terms divisible by h^2."""
        hpos = self.rank
        return self.ring({m: c for m, c in f.items() if m[hpos] < 2})

    def h_part(self, f):
        """Coefficient terms of h^1 exactly, with the h power kept."""
        hpos = self.rank
        return self.ring({m: c for m, c in f.items() if m[hpos] == 1})

    def h_divisible(self, f):
        hpos = self.rank
        return all(m[hpos] >= 1 for m in f.monoms())

    def a_free(self, x):
        """True when no a variable occurs (x may be a poly or RatFunc)."""
        if isinstance(x, RatFunc):
            return self.a_free(x.num) and all(
                self.a_free(fac) for fac in x.den
            )
        rank = self.rank
        return all(not any(m[:rank]) for m in x.monoms())

    def eval_poly(self, f, vals) -> Fraction:
        if len(vals) != self.nvars:
            raise RankMismatchError("evaluation point has wrong length")
        total = Fraction(0)
        for monom, coeff in f.items():
            term = _ground_to_fraction(coeff)
            for v, e in zip(vals, monom):
                if e:
                    term *= Fraction(v) ** e
            total += term
        return total

    def eval_rat(self, rf: "RatFunc", vals) -> Fraction:
        num = self.eval_poly(rf.num, vals)
        for fac, mult in rf.den.items():
            d = self.eval_poly(fac, vals)
            if d == 0:
                raise ZeroDivisionError("denominator vanishes at sample point")
            num /= d ** mult
        return num

    # -- coercion

    def rat(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.field is not self:
                raise InputError("rational function from a different field")
            return x
        if isinstance(x, (int, Fraction)):
            x = self.const(x)
        elif not hasattr(x, "ring"):
            if hasattr(x, "numerator") and hasattr(x, "denominator"):
                x = self.const(_ground_to_fraction(x))
            else:
                raise InputError(f"cannot coerce {x!r} into the field")
        return RatFunc(self, x, None, reduce=False)

    # -- canonical strings

    def to_string(self, x) -> str:
        if isinstance(x, RatFunc):
            if not x.den:
                return self.to_string(x.num)
            return f"({self.to_string(x.num)})/({self.to_string(x.den_poly())})"
        if not x:
            return "0"
        parts = []
        names = [str(g.as_expr()) for g in self.gens]
        for monom, coeff in x.terms():
            frac = _ground_to_fraction(coeff)
            body = "*".join(
                n if e == 1 else f"{n}^{e}"
                for n, e in zip(names, monom)
                if e
            )
            mag = abs(frac)
            if not body:
                coef = str(mag) if mag.denominator == 1 else f"({mag})"
                text = coef
            elif mag == 1:
                text = body
            else:
                coef = str(mag) if mag.denominator == 1 else f"({mag})"
                text = f"{coef}*{body}"
            parts.append((frac < 0, text))
        out = []
        for k, (neg, text) in enumerate(parts):
            if k == 0:
                out.append("-" + text if neg else text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)

    _TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")

    def _tokenize(self, s):
        tokens = []
        pos = 0
        while pos < len(s):
            m = self._TOKEN.match(s, pos)
            if not m or m.end() == m.start():
                if s[pos:].strip():
                    raise InputError(f"cannot tokenize {s[pos:]!r}")
                break
            pos = m.end()
            if m.lastgroup == "num":
                tokens.append(("num", int(m.group("num"))))
            elif m.lastgroup == "name":
                tokens.append(("name", m.group("name")))
            else:
                tokens.append(("op", m.group("op")))
        return tokens

    def parse(self, s: str):
        """Parse a canonical polynomial string back into a ring element."""
        tokens = self._tokenize(s)
        poly, pos = self._parse_expr(tokens, 0)
        if pos != len(tokens):
            raise InputError(f"trailing input in {s!r}")
        return poly

    def _parse_expr(self, tokens, pos):
        sign = 1
        if pos < len(tokens) and tokens[pos] == ("op", "-"):
            sign = -1
            pos += 1
        term, pos = self._parse_term(tokens, pos)
        total = term if sign > 0 else -term
        while pos < len(tokens) and tokens[pos] in (("op", "+"), ("op", "-")):
            neg = tokens[pos] == ("op", "-")
            term, pos = self._parse_term(tokens, pos + 1)
            total = total - term if neg else total + term
        return total, pos

    def _parse_term(self, tokens, pos):
        factor, pos = self._parse_atom(tokens, pos)
        while pos < len(tokens) and tokens[pos] == ("op", "*"):
            nxt, pos = self._parse_atom(tokens, pos + 1)
            factor = factor * nxt
        return factor, pos

    def _parse_atom(self, tokens, pos):
        if pos >= len(tokens):
            raise InputError("unexpected end of input")
        kind, val = tokens[pos]
        if kind == "num":
            pos += 1
            if pos + 1 < len(tokens) and tokens[pos] == ("op", "/") and \
                    tokens[pos + 1][0] == "num":
                return self.const(Fraction(val, tokens[pos + 1][1])), pos + 2
            return self.const(val), pos
        if kind == "name":
            gen = self._name_to_gen.get(val)
            if gen is None:
                raise InputError(f"unknown variable {val!r}")
            pos += 1
            if pos + 1 < len(tokens) and tokens[pos] == ("op", "^") and \
                    tokens[pos + 1][0] == "num":
                return gen ** tokens[pos + 1][1], pos + 2
            return gen, pos
        if (kind, val) == ("op", "("):
            inner, pos = self._parse_expr(tokens, pos + 1)
            if pos >= len(tokens) or tokens[pos] != ("op", ")"):
                raise InputError("unbalanced parentheses")
            return inner, pos + 1
        if (kind, val) == ("op", "-"):
            inner, pos = self._parse_atom(tokens, pos + 1)
            return -inner, pos
        raise InputError(f"unexpected token {val!r}")

    def parse_rat(self, s: str) -> "RatFunc":
        """Parse either a polynomial string or the form '(num)/(den)'."""
        s = s.strip()
        if s.startswith("("):
            depth = 0
            for k, ch in enumerate(s):
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                    if depth == 0:
                        break
            if k + 2 < len(s) and s[k + 1] == "/" and s[k + 2] == "(" \
                    and s.endswith(")"):
                num = self.parse(s[1:k])
                den = self.parse(s[k + 3:-1])
                return self.rat(num) / self.rat(den)
        return self.rat(self.parse(s))


class RatFunc:
    """Rational function with factored denominator.

    ``num`` is a ring polynomial; ``den`` maps canonical factors (primitive,
    positive leading coefficient) to positive multiplicities.  The pair is
    kept reduced by exact division of the numerator by denominator factors,
    which is complete whenever the stored factors are irreducible."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None, *, reduce=True):
        self.field = field
        if den:
            fixed = {}
            for fac, mult in den.items():
                if mult < 0:
                    raise InternalCheckError("negative denominator multiplicity")
                if mult == 0:
                    continue
                unit, g = field.canon_factor(fac)
                if unit != QQ(1):
                    num = num.quo_ground(unit ** mult)
                fixed[g] = fixed.get(g, 0) + mult
            den = fixed
        else:
            den = {}
        if num and den and reduce:
            num, den = _reduce_pair(num, den)
        self.num = num
        self.den = den if num else {}

    # -- structure

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_polynomial(self):
        return not self.den

    def as_poly(self, what="value"):
        if self.den:
            raise InternalCheckError(
                f"{what} failed to reduce to a polynomial; residual "
                f"denominator {self.field.to_string(self.den_poly())}"
            )
        return self.num

    def den_poly(self):
        out = self.field.one
        for fac, mult in self.den.items():
            for _ in range(mult):
                out = out * fac
        return out

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        try:
            return self.field.rat(other)
        except (InputError, TypeError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return sum_fractions((self, other), self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return sum_fractions((self, -other), self.field)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return sum_fractions((other, -self), self.field)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.field.rat(0)
        den = dict(self.den)
        for fac, mult in other.den.items():
            den[fac] = den.get(fac, 0) + mult
        return RatFunc(self.field, self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        unit, den = self.field.factor_poly(self.num)
        num = self.den_poly().quo_ground(unit)
        return RatFunc(self.field, num, den, reduce=False)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.rat(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return (
                self.field is other.field
                and self.num == other.num
                and self.den == other.den
            )
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return self == coerced

    def __hash__(self):
        return hash((self.num, frozenset(self.den.items())))

    def __repr__(self):
        text = self.field.to_string(self)
        if len(text) > 120:
            text = text[:117] + "..."
        return f"RatFunc({text})"


def _reduce_pair(num, den):
    """Cancel denominator factors into the numerator by exact division."""
    remaining = {}
    for fac, mult in den.items():
        while mult:
            quo, rem = num.div(fac)
            if rem:
                break
            num = quo
            mult -= 1
        if mult:
            remaining[fac] = mult
    return num, remaining


def sum_fractions(terms, field=None) -> RatFunc:
    """Sum rational functions over their factored common denominator.

    Avoids pairwise reduction churn: the common denominator takes the
    factor-wise maximum multiplicity, each numerator is padded by the missing
    cofactors, and a single reduction runs at the end."""
    terms = [t for t in terms if not t.is_zero]
    if not terms:
        if field is None:
            raise InputError("cannot sum an empty collection without a field")
        return field.rat(0)
    field = terms[0].field
    common = {}
    for t in terms:
        for fac, mult in t.den.items():
            if common.get(fac, 0) < mult:
                common[fac] = mult
    total = field.ring.zero
    for t in terms:
        num = t.num
        for fac, mult in common.items():
            need = mult - t.den.get(fac, 0)
            for _ in range(need):
                num = num * fac
        total += num
    return RatFunc(field, total, common)


def sum_factored_terms(field, terms) -> RatFunc:
    """Sum terms given as (ground unit, numerator factors, denominator
    factors), with factor dicts mapping polynomials to multiplicities.
    Used where products arrive naturally factored and expanding each term
    separately would be wasteful."""
    rats = []
    for unit, numfac, denfac in terms:
        num = field.ring.ground_new(_to_ground(unit))
        for fac, mult in numfac.items():
            for _ in range(mult):
                num = num * fac
        rats.append(RatFunc(field, num, dict(denfac)))
    return sum_fractions(rats, field)


def semantically_equal(field, x, y, samples=100, seed=20210521, lo=-61, hi=61):
    """Probabilistic equality by exact evaluation at pseudo-random rational
    points; deterministic seed so failures reproduce.  Points where any
    denominator vanishes are skipped and resampled."""
    import random

    rng = random.Random(seed)
    x = field.rat(x)
    y = field.rat(y)
    done = 0
    guard = 0
    while done < samples:
        vals = [Fraction(rng.randint(lo, hi)) for _ in range(field.nvars)]
        try:
            if field.eval_rat(x, vals) != field.eval_rat(y, vals):
                return False
        except ZeroDivisionError:
            guard += 1
            if guard > 50 * samples:
                raise InternalCheckError("cannot find valid sample points")
            continue
        done += 1
    return True
