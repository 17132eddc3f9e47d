"""Fine saturated affine monoids: membership, units, faces, basis selection.

A monoid P is given by finitely many generators in Z^n whose group span is
all of Z^n (so P^gp = Z^n after normalization, which is the caller's job).
Faces of the rational cone spanned by the generators correspond to torus
orbits of Spec k[P]; stratum_index of a face is n minus the rank of its
generator set.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import intlinalg
from .errors import MonoidError, NoUnimodularSubsetError, RankTooLargeError

MAX_FACE_RANK = 6


@dataclass(frozen=True)
class Face:
    """A face of the cone, recorded by the generator indices lying on it."""

    generator_indices: tuple
    supporting_forms: tuple
    stratum_index: int


@dataclass(frozen=True)
class Membership:
    found: bool
    witness: tuple | None
    cap_hit: bool


class AffineMonoid:
    """Submonoid of Z^n spanned by explicit generators, P^gp = Z^n.

    membership_cap bounds the coefficient search in contains(); the search
    is complete whenever some representation uses coefficients <= cap, and
    results are flagged when the cap was the reason for a failure.

    Saturation is verified heuristically at construction: every lattice
    point of the cone inside the box [0, B]^n (B = largest generator
    absolute coordinate sum) must be reachable by the membership search.
    Full saturation remains the caller's contract.
    """

    def __init__(self, ambient_rank, generators, membership_cap=20,
                 verify_saturation=True, saturation_budget=20000):
        if ambient_rank < 1:
            raise MonoidError("ambient rank must be at least 1")
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if not gens:
            raise MonoidError("monoid needs at least one generator")
        for g in gens:
            if len(g) != ambient_rank:
                raise MonoidError(
                    f"generator {g} has length {len(g)}, expected {ambient_rank}")
            if all(x == 0 for x in g):
                raise MonoidError("zero vector is not allowed as a generator")
        if membership_cap < 1:
            raise MonoidError("membership cap must be positive")
        self.ambient_rank = ambient_rank
        self.generators = gens
        self.membership_cap = membership_cap
        self.saturation_note = None

        basis = intlinalg.lattice_row_basis([list(g) for g in gens])
        if len(basis) != ambient_rank or intlinalg.det(basis) not in (1, -1):
            raise MonoidError(
                "generators do not span Z^n as a group "
                f"(rank-{ambient_rank} unimodular lattice expected)")
        if verify_saturation:
            self._verify_saturation(saturation_budget)

    # -- membership ---------------------------------------------------------

    @cached_property
    def facet_forms(self):
        """Primitive integer covectors of the cone's facets.

        Each form vanishes on n-1 independent generators and is nonnegative
        on all of them.  Empty for a cone with full lineality (P a group).
        """
        n = self.ambient_rank
        gens = self.generators
        forms = set()
        for subset in itertools.combinations(range(len(gens)), n - 1):
            rows = [list(gens[i]) for i in subset]
            u = intlinalg.kernel_vector(rows, n)
            if u is None:
                continue
            vals = [sum(a * b for a, b in zip(u, g)) for g in gens]
            if all(v >= 0 for v in vals):
                forms.add(tuple(u))
            elif all(v <= 0 for v in vals):
                forms.add(tuple(-x for x in u))
        return tuple(sorted(forms))

    @cached_property
    def _suffix_lattices(self):
        """Echelon bases of the lattices spanned by generator suffixes."""
        out = []
        for start in range(len(self.generators) + 1):
            rows = [list(g) for g in self.generators[start:]]
            out.append(intlinalg.lattice_row_basis(rows))
        return out

    def in_cone(self, v):
        """Is v in the rational cone spanned by the generators?"""
        if len(v) != self.ambient_rank:
            raise MonoidError(f"vector {v} has wrong length")
        return all(sum(a * b for a, b in zip(u, v)) >= 0
                   for u in self.facet_forms)

    def membership(self, v):
        """Bounded search for v as an N-combination of generators.

        Complete whenever some representation has all coefficients <= cap;
        cap_hit reports whether the cap cut off an otherwise live branch.
        """
        v = tuple(int(x) for x in v)
        if len(v) != self.ambient_rank:
            raise MonoidError(f"vector {v} has wrong length")
        gens = self.generators
        cap = self.membership_cap
        suffix = self._suffix_lattices
        state = {"cap_hit": False}

        def feasible(rem, idx):
            # necessary conditions for the remainder at generator index idx
            if not intlinalg.lattice_contains(suffix[idx], list(rem)):
                return False
            return self.in_cone(rem)

        def search(rem, idx):
            if all(x == 0 for x in rem):
                return ()
            if idx == len(gens):
                return None
            if not feasible(rem, idx):
                return None
            g = gens[idx]
            for c in range(cap + 1):
                nxt = tuple(r - c * x for r, x in zip(rem, g))
                tail = search(nxt, idx + 1)
                if tail is not None:
                    return (c,) + tail
            # was the cap the binding constraint on this branch?
            over = tuple(r - (cap + 1) * x for r, x in zip(rem, g))
            if feasible(over, idx):
                state["cap_hit"] = True
            return None

        witness = search(v, 0)
        return Membership(witness is not None, witness, state["cap_hit"])

    def contains(self, v):
        return self.membership(v).found

    # -- structure ----------------------------------------------------------

    def units(self):
        """Basis of the unit sublattice {g in P : -g in P}.

        Generators whose negation is in P generate the whole unit group,
        so a lattice basis of those suffices.
        """
        unit_gens = [g for g in self.generators
                     if self.membership(tuple(-x for x in g)).found]
        basis = intlinalg.lattice_row_basis([list(g) for g in unit_gens])
        return tuple(tuple(row) for row in basis)

    def is_group(self):
        return len(self.units()) == self.ambient_rank

    def faces(self):
        """Complete face lattice as intersections of facets.

        Includes the whole cone (empty facet set) and the minimal face.
        Faces are deduplicated by generator subset and sorted by
        (stratum_index, generator_indices).
        """
        n = self.ambient_rank
        if n > MAX_FACE_RANK:
            raise RankTooLargeError(
                f"face enumeration limited to rank {MAX_FACE_RANK}, got {n}")
        gens = self.generators
        forms = self.facet_forms
        seen = {}
        for k in range(len(forms) + 1):
            for chosen in itertools.combinations(range(len(forms)), k):
                idxs = tuple(
                    gi for gi, g in enumerate(gens)
                    if all(sum(a * b for a, b in zip(forms[f], g)) == 0
                           for f in chosen))
                if idxs in seen:
                    continue
                support = tuple(
                    u for u in forms
                    if all(sum(a * b for a, b in zip(u, gens[gi])) == 0
                           for gi in idxs))
                face_rank = intlinalg.rank([list(gens[gi]) for gi in idxs])
                seen[idxs] = Face(idxs, support, n - face_rank)
        return tuple(sorted(seen.values(),
                            key=lambda f: (f.stratum_index,
                                           f.generator_indices)))

    def select_gp_basis(self):
        """First generator subset (lexicographic by index) with det +-1."""
        n = self.ambient_rank
        for subset in itertools.combinations(range(len(self.generators)), n):
            mat = [list(self.generators[i]) for i in subset]
            if intlinalg.det(mat) in (1, -1):
                return tuple(self.generators[i] for i in subset)
        raise NoUnimodularSubsetError(
            "no generator subset is a Z-basis of Z^n; "
            "choose different generators or supply an explicit basis")

    # -- saturation heuristic -------------------------------------------------

    def _verify_saturation(self, budget):
        n = self.ambient_rank
        b = max(1, max(sum(abs(x) for x in g) for g in self.generators))
        npoints = (b + 1) ** n
        if npoints > budget:
            self.saturation_note = (
                f"saturation box [0,{b}]^{n} has {npoints} points, "
                f"over budget {budget}; check skipped")
            return
        for point in itertools.product(range(b + 1), repeat=n):
            if not self.in_cone(point):
                continue
            res = self.membership(point)
            if not res.found:
                hint = " (membership cap reached)" if res.cap_hit else ""
                raise MonoidError(
                    f"cone point {point} is not an N-combination of the "
                    f"generators within the verification box{hint}; "
                    "the monoid is not saturated or not fully generated")

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"AffineMonoid(rank={self.ambient_rank}, generators=[{gens}])"
