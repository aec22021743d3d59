"""Parabolic subsystems, minimal coset representatives, and curve degrees.

A parabolic datum is a root system together with a subset ``I`` of simple
indices (1-based).  It knows the Levi roots, the coset structure of
``W/W_P``, and the degree map sending a root outside the Levi to its curve
class: the coroot coordinates restricted to the free simple slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DomainError,
    InternalCheckError,
    OrthogonalityError,
    RankMismatchError,
)
from .rootsys import Root, RootSystem, Weight, WeylElement


@dataclass(frozen=True)
class DegreeVector:
    """Effective curve degree, coordinates over the free simple indices in
    increasing order."""

    exps: tuple

    @property
    def is_zero(self):
        return not any(self.exps)

    def __add__(self, other):
        return DegreeVector(tuple(x + y for x, y in zip(self.exps, other.exps)))

    def __repr__(self):
        return "DegreeVector" + repr(self.exps)


class Parabolic:
    """Subset of simple indices with the derived coset machinery."""

    def __init__(self, system: RootSystem, subset):
        subset = frozenset(subset)
        for i in subset:
            if not isinstance(i, int) or not 1 <= i <= system.rank:
                raise RankMismatchError(
                    f"parabolic index {i} out of range 1..{system.rank}"
                )
        self.system = system
        self.subset = subset
        self.free_indices = tuple(
            i for i in range(1, system.rank + 1) if i not in subset
        )
        self.levi_roots = tuple(
            g for g in system.positive_roots
            if all(c == 0 for k, c in enumerate(g.coords) if k + 1 not in subset)
        )
        self._levi_set = set(self.levi_roots)
        self.complement_roots = tuple(
            g for g in system.positive_roots if g not in self._levi_set
        )
        self.m = len(self.complement_roots)
        self._wp = None
        self._minimal = None
        self._coset_cache = {}

    def __repr__(self):
        label = self.system.cartan.label or f"rank{self.system.rank}"
        return f"Parabolic({label}, {{{', '.join(map(str, sorted(self.subset)))}}})"

    # -- the Levi Weyl group and coset representatives

    def levi_weyl_elements(self):
        if self._wp is None:
            gens = [self.system.simple_reflection(i) for i in sorted(self.subset)]
            seen = {self.system.identity}
            frontier = [self.system.identity]
            while frontier:
                new = []
                for w in frontier:
                    for s in gens:
                        ws = w * s
                        if ws not in seen:
                            seen.add(ws)
                            new.append(ws)
                frontier = new
            self._wp = tuple(sorted(seen, key=WeylElement.sort_key))
        return self._wp

    def is_minimal(self, w: WeylElement) -> bool:
        """Minimal coset representatives keep every Levi simple root
        positive."""
        rs = self.system
        return all(
            rs.act_root(w, rs.simple_root(i)).is_positive for i in self.subset
        )

    def minimal_rep(self, w: WeylElement) -> WeylElement:
        """The minimal-length element of w W_P, by peeling right descents
        inside the Levi (smallest index first, so the path is deterministic)."""
        cached = self._coset_cache.get(w)
        if cached is not None:
            return cached
        rs = self.system
        cur = w
        while True:
            for i in sorted(self.subset):
                if not rs.act_root(cur, rs.simple_root(i)).is_positive:
                    cur = cur * rs.simple_reflection(i)
                    break
            else:
                break
        self._coset_cache[w] = cur
        return cur

    def minimal_representatives(self):
        """All minimal coset representatives, sorted by (length, word)."""
        if self._minimal is None:
            reps = {self.minimal_rep(w) for w in self.system.weyl_elements()}
            self._minimal = tuple(sorted(reps, key=WeylElement.sort_key))
            if len(reps) * len(self.levi_weyl_elements()) != self.system.weyl_order():
                raise InternalCheckError("coset decomposition miscounted")
        return self._minimal

    def coset_members(self, rep: WeylElement):
        return tuple(rep * u for u in self.levi_weyl_elements())

    def bruhat_leq(self, u: WeylElement, w: WeylElement) -> bool:
        """Bruhat order on W/W_P via the minimal representatives."""
        return self.system.bruhat_leq(self.minimal_rep(u), self.minimal_rep(w))

    # -- degrees of curve classes

    def degree(self, alpha: Root) -> DegreeVector:
        """Degree of the invariant curve attached to a root outside the Levi:
        coroot coordinates at the free simple slots."""
        if not alpha.is_positive or alpha in self._levi_set:
            raise DomainError(
                f"{alpha} does not define a curve class for this parabolic"
            )
        if not self.system.is_root(alpha):
            raise DomainError(f"{alpha} is not a root")
        u = self.system.coroot_coords(alpha)
        return DegreeVector(tuple(u[i - 1] for i in self.free_indices))

    def degree_classes(self):
        """Partition of the non-Levi positive roots by curve degree, as a
        sorted tuple of (DegreeVector, roots) pairs.  Also checks the classes
        are stable under the Levi Weyl group, which the degree formula
        requires."""
        buckets = {}
        for g in self.complement_roots:
            buckets.setdefault(self.degree(g), []).append(g)
        rs = self.system
        for d, roots in buckets.items():
            members = set(roots)
            for g in roots:
                for i in self.subset:
                    img = rs.act_root(rs.simple_reflection(i), g)
                    if img not in members:
                        raise InternalCheckError(
                            "degree class not stable under the Levi group"
                        )
        return tuple(
            (d, tuple(roots))
            for d, roots in sorted(buckets.items(), key=lambda kv: kv[0].exps)
        )

    def reflection_cosets(self):
        """Map alpha -> minimal representative of sigma_alpha W_P for roots
        outside the Levi; injective by the uniqueness of invariant curves
        between fixed points."""
        out = {}
        seen = {}
        for g in self.complement_roots:
            rep = self.minimal_rep(self.system.reflection(g))
            if rep in seen:
                raise InternalCheckError(
                    f"reflection cosets collide for {seen[rep]} and {g}"
                )
            seen[rep] = g
            out[g] = rep
        return out

    # -- weights

    def check_orthogonal(self, lam: Weight):
        """Divisor weights must pair to zero with the Levi coroots."""
        if len(lam.coords) != self.system.rank:
            raise RankMismatchError("weight has wrong length for this system")
        for i in self.subset:
            if lam.coords[i - 1] != 0:
                raise OrthogonalityError(
                    f"weight {lam} is not orthogonal to the Levi root {i}"
                )

    def degree_pairing(self, lam: Weight, alpha: Root):
        """(lam, alpha^vee) computed through the degree vector; agrees with
        the direct pairing for Levi-orthogonal weights and double-checks it."""
        self.check_orthogonal(lam)
        d = self.degree(alpha)
        val = sum(
            (lam.coords[i - 1] * e for i, e in zip(self.free_indices, d.exps)),
            0,
        )
        direct = self.system.pairing(lam, alpha)
        if val != direct:
            raise InternalCheckError("degree pairing disagrees with coroots")
        return direct


@lru_cache(maxsize=None)
def _parabolic_for(system, subset):
    return Parabolic(system, subset)


def parabolic(system: RootSystem, subset=()) -> Parabolic:
    """Shared Parabolic instance; same-identity for equal data."""
    return _parabolic_for(system, frozenset(subset))
