"""Root systems, Weyl groups, and Bruhat order from Cartan matrix data.

Conventions.  A Cartan matrix has entries ``a[i][j] = <alpha_j, alpha_i^vee>``,
so row ``i`` records pairings against the ``i``-th simple coroot.  Roots are
stored by integer coordinates in the simple-root basis, weights by rational
coordinates in the fundamental-weight basis, and a Weyl group element by the
integer matrix of its action on root coordinates.  The simple reflection
``s_i`` sends root coordinates ``v`` to ``v - (Av)_i e_i`` and coroot
coordinates ``u`` to ``u - (A^T u)_i e_i``; tracking both during the positive
root closure yields the coroot of every root with no inner products needed.

Simple root indices are 1-based throughout the public interface.

>>> rs = root_system("A2")
>>> len(rs.positive_roots)
3
>>> rs.weyl_order()
6
>>> w = rs.from_word((1, 2))
>>> w.word
(1, 2)
>>> rs.act_root(w, rs.simple_root(1)).coords
(0, 1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    InvalidCartanError,
    NonFiniteTypeError,
    RankMismatchError,
    InputError,
)

DEFAULT_MAX_RANK = 8
DEFAULT_MAX_POSITIVE_ROOTS = 240


# ---------------------------------------------------------------------------
# Cartan data


@dataclass(frozen=True)
class CartanDatum:
    """Validated Cartan matrix with an optional display label.  The label is
    cosmetic: equal matrices intern to the same root system either way."""

    rank: int
    entries: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.rank
        a = self.entries
        if n < 1:
            raise InvalidCartanError("rank must be at least 1")
        if len(a) != n or any(len(row) != n for row in a):
            raise InvalidCartanError("Cartan matrix must be square of size rank")
        for i in range(n):
            for j in range(n):
                aij = a[i][j]
                if not isinstance(aij, int):
                    raise InvalidCartanError("Cartan entries must be integers")
                if i == j and aij != 2:
                    raise InvalidCartanError("diagonal Cartan entries must equal 2")
                if i != j:
                    if aij > 0:
                        raise InvalidCartanError(
                            "off-diagonal Cartan entries must be nonpositive"
                        )
                    if (aij == 0) != (a[j][i] == 0):
                        raise InvalidCartanError(
                            "zero pattern of a Cartan matrix must be symmetric"
                        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def _chain(n):
    # type A_n matrix; basis for the other classical families
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)]


def builtin_cartan(name: str) -> CartanDatum:
    """Cartan matrix for a classical family label such as ``A3``, ``B2``,
    ``C4``, ``D4``, or ``G2``."""
    m = re.fullmatch(r"([ABCDGabcdg])(\d+)", name.strip())
    if not m:
        raise InputError(f"unrecognized type name {name!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if family == "A":
        if n < 1:
            raise InputError("A_n needs n >= 1")
        a = _chain(n)
    elif family in ("B", "C"):
        if n < 2:
            raise InputError(f"{family}_n needs n >= 2")
        a = _chain(n)
        # B_n: last simple root short, so its row pairs the long neighbor to -2
        a[n - 1][n - 2] = -2
        if family == "C":
            a = [list(col) for col in zip(*a)]
    elif family == "D":
        if n < 3:
            raise InputError("D_n needs n >= 3")
        a = _chain(n)
        a[n - 1][n - 2] = a[n - 2][n - 1] = 0
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1
    else:
        if n != 2:
            raise InputError("only G2 exists in the G family")
        a = [[2, -1], [-3, 2]]
    return CartanDatum(n, tuple(tuple(row) for row in a), family + str(n))


def cartan_from_file(path) -> CartanDatum:
    """Read a Cartan matrix from a text file: first a line holding the rank,
    then rank lines of rank integers.  Lines starting with ``#`` are skipped."""
    with open(path) as fh:
        rows = []
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                rows.append(line.split())
    if not rows:
        raise InvalidCartanError(f"no data in {path}")
    try:
        if len(rows[0]) != 1:
            raise ValueError
        n = int(rows[0][0])
        body = [[int(x) for x in row] for row in rows[1:]]
    except ValueError:
        raise InvalidCartanError(f"malformed Cartan file {path}") from None
    if len(body) != n:
        raise InvalidCartanError(
            f"expected {n} matrix rows in {path}, found {len(body)}"
        )
    return CartanDatum(n, tuple(tuple(row) for row in body))


# ---------------------------------------------------------------------------
# Roots and weights


@dataclass(frozen=True)
class Root:
    """Root in simple-root coordinates (integer tuple)."""

    coords: tuple

    @property
    def is_positive(self):
        return any(c > 0 for c in self.coords)

    @property
    def height(self):
        return sum(self.coords)

    def __neg__(self):
        return Root(tuple(-c for c in self.coords))

    def __add__(self, other):
        return Root(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Root(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __repr__(self):
        return "Root" + repr(self.coords)


@dataclass(frozen=True)
class Weight:
    """Weight in fundamental-weight coordinates (rational tuple)."""

    coords: tuple

    def __add__(self, other):
        return Weight(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(tuple(-c for c in self.coords))

    def __repr__(self):
        return "Weight" + repr(self.coords)


# ---------------------------------------------------------------------------
# Weyl group elements


class WeylElement:
    """Weyl group element, canonically identified by its integer action
    matrix on root coordinates.  Two elements are equal exactly when their
    matrices agree.  Instances are interned per root system, so identity
    comparison works too."""

    __slots__ = ("system", "mat", "_length", "_word", "_inverse")

    def __init__(self, system, mat):
        self.system = system
        self.mat = mat
        self._length = None
        self._word = None
        self._inverse = None

    def __mul__(self, other):
        if other.system is not self.system:
            raise InputError("cannot multiply elements of different Weyl groups")
        return self.system.element(_mat_mul(self.mat, other.mat))

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.system is other.system
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash(self.mat)

    @property
    def length(self) -> int:
        """Coxeter length, computed as the number of inversions."""
        if self._length is None:
            self._length = sum(
                1
                for g in self.system.positive_roots
                if not self.system.act_root(self, g).is_positive
            )
        return self._length

    @property
    def word(self) -> tuple:
        """Canonical reduced word: repeatedly strip the smallest-index left
        descent.  Deterministic, so equal elements always report equal words."""
        if self._word is None:
            rs = self.system
            out = []
            cur = self
            while cur.length > 0:
                i = min(cur.left_descents())
                out.append(i)
                cur = rs.simple_reflection(i) * cur
            self._word = tuple(out)
        return self._word

    def left_descents(self):
        """Indices i with l(s_i w) < l(w), i.e. w^{-1}(alpha_i) negative."""
        rs = self.system
        # alpha_i = -w(g) for a positive g iff i is a left descent
        found = set()
        for g in rs.positive_roots:
            img = self.system.act_root(self, g)
            if not img.is_positive:
                c = (-img).coords
                if sum(c) == 1:
                    found.add(c.index(1) + 1)
        return found

    def right_descents(self):
        """Indices i with l(w s_i) < l(w), i.e. w(alpha_i) negative."""
        rs = self.system
        return {
            i
            for i in range(1, rs.rank + 1)
            if not rs.act_root(self, rs.simple_root(i)).is_positive
        }

    def inverse(self):
        if self._inverse is None:
            inv = self.system.from_word(tuple(reversed(self.word)))
            self._inverse = inv
            inv._inverse = self
        return self._inverse

    @property
    def is_identity(self):
        return self.mat == self.system.identity.mat

    def sort_key(self):
        return (self.length, self.word)

    def __repr__(self):
        if not self.word:
            return "WeylElement(e)"
        return "WeylElement(s" + " s".join(str(i) for i in self.word) + ")"


def _mat_mul(a, b):
    n = len(a)
    rng = range(n)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in rng) for j in rng) for i in rng
    )


def _mat_vec(m, v):
    rng = range(len(v))
    return tuple(sum(m[i][k] * v[k] for k in rng) for i in rng)


def _frac_inverse(mat):
    """Inverse of a square integer matrix, as a tuple of Fraction rows."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------------------
# The root system proper


class RootSystem:
    """Finite crystallographic root system generated from a Cartan matrix.

    The positive roots are produced by closing the simple roots under simple
    reflections, keeping whatever stays positive; coroot coordinates ride
    along through the dual reflections.  Construction fails with
    :class:`NonFiniteTypeError` once the closure exceeds ``max_positive_roots``,
    which is how infinite (affine or worse) inputs are rejected.
    """

    def __init__(self, cartan: CartanDatum, max_rank=DEFAULT_MAX_RANK,
                 max_positive_roots=DEFAULT_MAX_POSITIVE_ROOTS):
        if cartan.rank > max_rank:
            raise RankMismatchError(
                f"rank {cartan.rank} exceeds the configured bound {max_rank}"
            )
        self.cartan = cartan
        self.rank = cartan.rank
        self._elements = {}
        self._bruhat_memo = {}
        self._build_reflections()
        self._close_roots(max_positive_roots)
        self._weyl_cache = None
        self._w0 = None
        n = self.rank
        self._cartan_cols = tuple(
            tuple(cartan.entries[i][j] for i in range(n)) for j in range(n)
        )
        self._inv_cartan = _frac_inverse(cartan.entries)

    # -- construction helpers

    def _build_reflections(self):
        n = self.rank
        a = self.cartan.entries
        mats = []
        dual_mats = []
        for i in range(n):
            mats.append(tuple(
                tuple((1 if k == j else 0) - (a[i][j] if k == i else 0)
                      for j in range(n))
                for k in range(n)
            ))
            dual_mats.append(tuple(
                tuple((1 if k == j else 0) - (a[j][i] if k == i else 0)
                      for j in range(n))
                for k in range(n)
            ))
        self._refl_mats = tuple(mats)
        self._dual_refl_mats = tuple(dual_mats)
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.identity = self.element(ident)
        self._simple = tuple(self.element(m) for m in mats)

    def _close_roots(self, max_positive_roots):
        n = self.rank
        coroot = {}
        for i in range(n):
            e = tuple(int(k == i) for k in range(n))
            coroot[e] = e
        frontier = list(coroot)
        while frontier:
            new = []
            for v in frontier:
                u = coroot[v]
                for i in range(n):
                    w = _mat_vec(self._refl_mats[i], v)
                    if w not in coroot and any(c > 0 for c in w):
                        coroot[w] = _mat_vec(self._dual_refl_mats[i], u)
                        new.append(w)
                        if len(coroot) > max_positive_roots:
                            raise NonFiniteTypeError(
                                "root closure exceeded "
                                f"{max_positive_roots} positive roots; "
                                "the Cartan matrix is not of finite type"
                            )
            frontier = new
        order = sorted(coroot, key=lambda v: (sum(v), v))
        self.positive_roots = tuple(Root(v) for v in order)
        self._coroot = {v: coroot[v] for v in order}
        self._positive_set = set(order)

    # -- basic queries

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return Root(tuple(int(k == i - 1) for k in range(self.rank)))

    def fundamental_weight(self, i: int) -> Weight:
        self._check_index(i)
        return Weight(tuple(Fraction(int(k == i - 1)) for k in range(self.rank)))

    def _check_index(self, i):
        if not 1 <= i <= self.rank:
            raise RankMismatchError(
                f"simple index {i} out of range 1..{self.rank}"
            )

    def is_root(self, root: Root) -> bool:
        v = root.coords
        return v in self._positive_set or tuple(-c for c in v) in self._positive_set

    def coroot_coords(self, root: Root) -> tuple:
        """Coordinates of root^vee in the simple-coroot basis."""
        v = root.coords
        if v in self._coroot:
            return self._coroot[v]
        nv = tuple(-c for c in v)
        if nv in self._coroot:
            return tuple(-c for c in self._coroot[nv])
        raise InputError(f"{root} is not a root of this system")

    def weyl_order(self) -> int:
        return len(self.weyl_elements())

    # -- coordinate conversions and pairings

    def root_to_weight(self, root: Root) -> Weight:
        """Weight coordinates of a root: multiply by the Cartan matrix."""
        a = self.cartan.entries
        v = root.coords
        rng = range(self.rank)
        return Weight(tuple(Fraction(sum(a[i][j] * v[j] for j in rng)) for i in rng))

    def weight_to_root_coords(self, lam: Weight) -> tuple:
        """Simple-root coordinates of a weight; rational in general."""
        if len(lam.coords) != self.rank:
            raise RankMismatchError("weight has wrong length for this system")
        inv = self._inv_cartan
        rng = range(self.rank)
        return tuple(sum(inv[i][j] * lam.coords[j] for j in rng) for i in rng)

    def pairing(self, lam: Weight, root: Root) -> Fraction:
        """<lam, root^vee>.  In fundamental-weight coordinates this is the
        dot product with the coroot coordinates."""
        u = self.coroot_coords(root)
        return sum(
            (Fraction(l) * c for l, c in zip(lam.coords, u)), Fraction(0)
        )

    def root_pairing(self, beta: Root, alpha: Root) -> int:
        """<beta, alpha^vee> for two roots; always an integer."""
        val = sum(
            (Fraction(x) * y for x, y in zip(self.root_to_weight(beta).coords,
                                             self.coroot_coords(alpha))),
            Fraction(0),
        )
        assert val.denominator == 1
        return int(val)

    # -- group structure

    def element(self, mat) -> WeylElement:
        el = self._elements.get(mat)
        if el is None:
            el = WeylElement(self, mat)
            self._elements[mat] = el
        return el

    def simple_reflection(self, i: int) -> WeylElement:
        self._check_index(i)
        return self._simple[i - 1]

    def from_word(self, word) -> WeylElement:
        w = self.identity
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def reflection(self, root: Root) -> WeylElement:
        """The reflection in an arbitrary root: v -> v - <v, root^vee> root."""
        u = self.coroot_coords(root)
        a = self.cartan.entries
        n = self.rank
        rng = range(n)
        p = tuple(sum(a[k][j] * u[k] for k in rng) for j in rng)
        c = root.coords
        mat = tuple(
            tuple((1 if k == j else 0) - c[k] * p[j] for j in rng) for k in rng
        )
        return self.element(mat)

    def act_root(self, w: WeylElement, root: Root) -> Root:
        return Root(_mat_vec(w.mat, root.coords))

    def act_weight(self, w: WeylElement, lam: Weight) -> Weight:
        v = self.weight_to_root_coords(lam)
        img = tuple(
            sum(w.mat[i][k] * v[k] for k in range(self.rank))
            for i in range(self.rank)
        )
        a = self.cartan.entries
        rng = range(self.rank)
        return Weight(tuple(sum(a[i][j] * img[j] for j in rng) for i in rng))

    def inversions(self, w: WeylElement):
        """Positive roots sent negative by w."""
        return tuple(
            g for g in self.positive_roots if not self.act_root(w, g).is_positive
        )

    def weyl_elements(self):
        """All Weyl group elements, sorted by (length, word).  Generated
        lazily by breadth-first products of simple reflections and cached."""
        if self._weyl_cache is None:
            seen = {self.identity}
            frontier = [self.identity]
            while frontier:
                new = []
                for w in frontier:
                    for s in self._simple:
                        ws = w * s
                        if ws not in seen:
                            seen.add(ws)
                            new.append(ws)
                frontier = new
            self._weyl_cache = tuple(sorted(seen, key=WeylElement.sort_key))
        return self._weyl_cache

    def longest_element(self) -> WeylElement:
        """w_0, built greedily by appending ascents; no enumeration needed."""
        if self._w0 is None:
            w = self.identity
            while True:
                for i in range(1, self.rank + 1):
                    if self.act_root(w, self.simple_root(i)).is_positive:
                        w = w * self.simple_reflection(i)
                        break
                else:
                    break
            self._w0 = w
        return self._w0

    def bruhat_leq(self, u: WeylElement, w: WeylElement) -> bool:
        """Bruhat order test via the lifting property: with i a left descent
        of w, u <= w iff (s_i u <= s_i w when i descends u, else u <= s_i w)."""
        key = (u.mat, w.mat)
        memo = self._bruhat_memo
        if key in memo:
            return memo[key]
        if u.length == 0:
            res = True
        elif u.length > w.length:
            res = False
        else:
            i = min(w.left_descents())
            s = self.simple_reflection(i)
            su = s * u
            if su.length < u.length:
                res = self.bruhat_leq(su, s * w)
            else:
                res = self.bruhat_leq(u, s * w)
        memo[key] = res
        return res


# ---------------------------------------------------------------------------
# Shared instances


@lru_cache(maxsize=None)
def _system_for(cartan: CartanDatum, max_rank, max_positive_roots):
    return RootSystem(cartan, max_rank, max_positive_roots)


def root_system(datum, max_rank=DEFAULT_MAX_RANK,
                max_positive_roots=DEFAULT_MAX_POSITIVE_ROOTS) -> RootSystem:
    """Shared RootSystem instance for a type name or CartanDatum.  Repeated
    calls with equal data return the identical object, so downstream caches
    keyed by system identity behave."""
    if isinstance(datum, str):
        datum = builtin_cartan(datum)
    if not isinstance(datum, CartanDatum):
        raise InputError("expected a type name or CartanDatum")
    return _system_for(datum, max_rank, max_positive_roots)


def build_root_system(cartan, max_rank=DEFAULT_MAX_RANK,
                      max_positive_roots=DEFAULT_MAX_POSITIVE_ROOTS) -> RootSystem:
    """Construct a root system from raw matrix rows (any nested sequence)."""
    rows = tuple(tuple(int(x) for x in row) for row in cartan)
    return root_system(CartanDatum(len(rows), rows), max_rank, max_positive_roots)
