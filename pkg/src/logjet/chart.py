"""Charts: a monoid (or plain affine space) plus defining equations.

A log chart presents X as a closed subscheme of Spec k[P] cut out by
equations with support in P, written as Laurent polynomials in the basis
monomials x_i.  An ordinary chart (monoid None) is a closed subscheme of
A^n with the trivial log structure; its equations must be honest
polynomials.
"""

from dataclasses import dataclass

from . import intlinalg
from .errors import MonoidError, SupportError
from .parse import parse_poly
from .poly import ORDINARY, JetPoly, RingDescriptor


@dataclass(frozen=True)
class Chart:
    """Unit of analysis: ambient rank, equations, optional monoid and basis."""

    ambient_rank: int
    equations: tuple
    monoid: object = None
    basis: tuple = None

    @property
    def codim(self):
        """Claimed codimension: the number of defining equations."""
        return len(self.equations)

    @property
    def base_ring(self):
        return RingDescriptor(self.ambient_rank, 0, ORDINARY)

    @property
    def is_log(self):
        return self.monoid is not None

    @classmethod
    def build(cls, *, ambient_rank=None, equations=(), monoid=None,
              basis=None):
        """Validate and construct a chart.

        equations may be strings (parsed over the base ring) or JetPoly
        values with m = 0.  For a monoid chart the basis defaults to
        select_gp_basis; explicit basis vectors must lie in the monoid and
        form a Z-basis.  Every equation's support is checked.
        """
        if monoid is not None:
            ambient_rank = monoid.ambient_rank
        if ambient_rank is None:
            raise MonoidError("ambient rank required for an ordinary chart")
        ring = RingDescriptor(ambient_rank, 0, ORDINARY)
        polys = []
        for idx, eq in enumerate(equations):
            if isinstance(eq, str):
                eq = parse_poly(eq, ring)
            elif isinstance(eq, JetPoly):
                if eq.ring.m != 0:
                    raise SupportError(
                        f"equation {idx} contains jet variables")
                eq = eq.with_ring(ring)
            else:
                raise TypeError(f"equation {idx}: expected str or JetPoly")
            if eq.is_zero:
                raise SupportError(f"equation {idx} is identically zero")
            polys.append(eq)

        if monoid is None:
            for idx, eq in enumerate(polys):
                for vec in eq.base_exponent_vectors():
                    if any(a < 0 for a in vec):
                        raise SupportError(
                            f"equation {idx}: exponent {vec} is negative; "
                            "ordinary charts live in affine space")
            chart = cls(ambient_rank, tuple(polys), None, None)
        else:
            if basis is None:
                basis = monoid.select_gp_basis()
            basis = tuple(tuple(int(x) for x in b) for b in basis)
            if len(basis) != ambient_rank:
                raise MonoidError(
                    f"basis needs {ambient_rank} vectors, got {len(basis)}")
            if intlinalg.det([list(b) for b in basis]) not in (1, -1):
                raise MonoidError("basis is not unimodular")
            for b in basis:
                if not monoid.contains(b):
                    raise MonoidError(
                        f"basis vector {b} is not in the monoid "
                        "(bounded membership)")
            chart = cls(ambient_rank, tuple(polys), monoid, basis)
            for idx, eq in enumerate(polys):
                bad = chart.support_violation(eq)
                if bad is not None:
                    vec, point = bad
                    raise SupportError(
                        f"equation {idx}: exponent {vec} maps to lattice "
                        f"point {point} outside the monoid")
        return chart

    # -- coordinates ---------------------------------------------------------

    def lattice_point(self, exponents):
        """Lattice point sum a_i e_i of a basis-coordinate exponent vector."""
        if self.basis is None:
            raise MonoidError("ordinary charts have no monoid coordinates")
        n = self.ambient_rank
        return tuple(sum(a * b[k] for a, b in zip(exponents, self.basis))
                     for k in range(n))

    def exponents_of(self, point):
        """Basis-coordinate exponents of a lattice point (exact, integer)."""
        if self.basis is None:
            raise MonoidError("ordinary charts have no monoid coordinates")
        cols = [list(b) for b in self.basis]
        return tuple(intlinalg.solve_unimodular(cols, list(point)))

    def support_violation(self, poly):
        """First (exponent vector, lattice point) outside the monoid, if any."""
        for vec in poly.base_exponent_vectors():
            point = self.lattice_point(vec)
            if not self.monoid.contains(point):
                return vec, point
        return None

    def support_in_monoid(self, poly):
        """Does every monomial of the base polynomial lie in k[P]?"""
        if poly.has_jet_variables():
            raise SupportError("support check expects a base polynomial")
        return self.support_violation(poly) is None


def support_in_monoid(poly, monoid, basis=None):
    """Convenience wrapper: check f in k[P] for a standalone monoid."""
    chart = Chart.build(monoid=monoid, equations=(), basis=basis)
    return chart.support_in_monoid(poly)
