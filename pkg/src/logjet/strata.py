"""Stratification of a chart by torus orbits, as closed presentations.

Each face F of the chart monoid yields a locally closed stratum: the points
where exactly the monomials with exponent in F are invertible.  The stratum
is closed-ified with one Rabinowitsch variable w inverting the monomial of
p_F = (sum of the face generators), an interior point of F:

    equations of X,  chi^g for generators g outside F,  w * chi^{p_F} - 1.

Everything is written in the chart's basis coordinates; monomials of the
monoid may acquire negative exponents there, which are cleared against the
inverted locus when the presentation is handed to the dimension engine.
"""

from dataclasses import dataclass

from .dimension import EMPTY, IdealPresentation
from .errors import ModeMismatchError
from .jets import derivative_chain, jet_ideal
from .poly import LOG, ORDINARY, JetMonomial, JetPoly, RingDescriptor, lift_base_vars


@dataclass(frozen=True)
class StratumPresentation:
    """Closed presentation of one stratum piece (one face of the monoid).

    Variables are the chart coordinates x_1..x_n plus the inverse variable
    w (stored as base variable n+1).  Equations may be Laurent; they are
    cleared at engine ingestion, which the w-equation makes legitimate.
    """

    face: object
    index: int
    variables: tuple
    ring: RingDescriptor
    equations: tuple

    @property
    def localizing_equation(self):
        return self.equations[-1]


def _chi(chart, ring, point):
    """The monomial chi^point in basis coordinates, lifted to the ring."""
    exps = chart.exponents_of(point)
    return JetPoly.monomial(ring, tuple(exps) + (0,) * (ring.n - len(exps)))


def stratify(chart):
    """One StratumPresentation per face of the chart monoid."""
    if chart.monoid is None:
        raise ModeMismatchError(
            "stratification needs a monoid chart; an ordinary chart is a "
            "single stratum (the whole variety)")
    n = chart.ambient_rank
    ring = RingDescriptor(n + 1, 0, ORDINARY)
    names = tuple(f"x{i}" for i in range(1, n + 1)) + ("w",)
    out = []
    for face in chart.monoid.faces():
        eqs = [lift_base_vars(f, ring) for f in chart.equations]
        seen = set()
        for gi, g in enumerate(chart.monoid.generators):
            if gi in face.generator_indices:
                continue
            mono = _chi(chart, ring, g)
            key = mono.render()
            if key not in seen:
                seen.add(key)
                eqs.append(mono)
        p_f = tuple(
            sum(chart.monoid.generators[gi][k]
                for gi in face.generator_indices)
            for k in range(n))
        w = JetPoly.base_var(ring, n + 1)
        eqs.append(w * _chi(chart, ring, p_f) - 1)
        out.append(StratumPresentation(face, face.stratum_index, names,
                                       ring, tuple(eqs)))
    return tuple(out)


def _presentation_terms(polys, ring):
    return [{mono.exponent_vector(ring): c
             for mono, c in g.term_map().items()} for g in polys]


def base_presentation(stratum, provenance=None):
    """The stratum itself (jet order 0) as dimension-engine input."""
    terms = _presentation_terms(stratum.equations, stratum.ring)
    return IdealPresentation.from_terms(
        stratum.variables, terms,
        provenance=provenance or f"stratum l={stratum.index} "
                                 f"{stratum.face.generator_indices}",
        localized=True)


def stratum_jet_presentation(stratum, m):
    """Ordinary jet ideal of the stratum presentation, for dim J_m(X_l).

    The cleared polynomial system is jetted with the ordinary derivation,
    treating w like any other coordinate; the w-jets are determined by the
    base locus, so the dimension is that of the jets of the open stratum.
    """
    cleared = base_presentation(stratum)
    ring = RingDescriptor(stratum.ring.n, m, ORDINARY)
    polys = []
    for gen in cleared.generators:
        terms = {JetMonomial(mono): c for mono, c in gen}
        polys.extend(derivative_chain(JetPoly(ring, terms)))
    names = _jet_names_ordered(stratum.variables, ring)
    raw = _presentation_terms(polys, ring)
    return IdealPresentation.from_terms(
        names, raw,
        provenance=f"J_{m} of stratum l={stratum.index} "
                   f"{stratum.face.generator_indices}",
        localized=True, jet_order=m)


def _jet_names_ordered(base_names, ring):
    """Variable names matching JetMonomial.exponent_vector's column order."""
    names = list(base_names)
    for i, j in ring.jet_positions():
        names.append(f"{base_names[i - 1]}({j})")
    return tuple(names)


def log_jet_stratum_presentation(chart, face, m):
    """Log jets of the chart restricted over one stratum.

    Variables: x_1..x_n, w, and the log jet coordinates u_{i,j}.  The
    generators are the log jet ideal of the chart plus the stratum's
    monomial equations and the localization; by the bundle property its
    dimension equals dim J_m(X_l) + m*l on nonempty strata.
    """
    if chart.monoid is None:
        raise ModeMismatchError("log jets need a monoid chart")
    n = chart.ambient_rank
    wide = RingDescriptor(n + 1, m, LOG)
    ideal = jet_ideal(chart, m, LOG)
    eqs = [lift_base_vars(g, wide) for g in ideal.flat()]
    seen = set()
    for gi, g in enumerate(chart.monoid.generators):
        if gi in face.generator_indices:
            continue
        mono = _chi(chart, wide, g)
        key = mono.render()
        if key not in seen:
            seen.add(key)
            eqs.append(mono)
    p_f = tuple(sum(chart.monoid.generators[gi][k]
                    for gi in face.generator_indices) for k in range(n))
    w = JetPoly.base_var(wide, n + 1)
    eqs.append(w * _chi(chart, wide, p_f) - 1)

    base_names = tuple(f"x{i}" for i in range(1, n + 1)) + ("w",)
    names = list(base_names)
    columns = list(range(n + 1))
    col = n + 1
    for i, j in wide.jet_positions():
        if i <= n:
            names.append(f"u[{i},{j}]")
            columns.append(col)
        col += 1
    raw = []
    for g in eqs:
        terms = {}
        for mono, c in g.term_map().items():
            vec = mono.exponent_vector(wide)
            dropped = [vec[k] for k in range(len(vec)) if k not in columns]
            if any(dropped):
                raise ModeMismatchError(
                    "unexpected jet variable for the auxiliary coordinate")
            terms[tuple(vec[k] for k in columns)] = c
        raw.append(terms)
    return IdealPresentation.from_terms(
        tuple(names), raw,
        provenance=f"log jets over stratum l={face.stratum_index} "
                   f"{face.generator_indices}, m={m}",
        localized=True, jet_order=m)


@dataclass(frozen=True)
class StratumStatus:
    """Assumption-1 bookkeeping for one stratum index l."""

    index: int
    pieces: tuple           # (face generator indices, dim or EMPTY)
    dim: object             # max piece dim, or EMPTY
    codim: object
    status: str             # PASS | EMPTY | FAIL


@dataclass(frozen=True)
class AssumptionReport:
    rows: tuple
    dim_x: object
    x0_nonempty: bool
    passed: bool

    @property
    def failing(self):
        return tuple(r for r in self.rows if r.status == "FAIL")


def check_assumption(chart, dims):
    """Assumption 1: every nonempty stratum X_l has codimension l in X.

    dims maps each face (or stratum presentation) to its computed
    dimension (int or EMPTY) and must cover every face of the chart
    monoid.  Strata sharing an index l are aggregated: dim X_l is the max
    over its pieces.
    """
    covered = {key.face if isinstance(key, StratumPresentation) else key
               for key in dims}
    missing = [f for f in chart.monoid.faces() if f not in covered]
    if missing:
        raise ValueError(
            f"dimension map misses {len(missing)} face(s) of the monoid")
    by_l = {}
    for key, value in dims.items():
        face = key.face if isinstance(key, StratumPresentation) else key
        by_l.setdefault(face.stratum_index, []).append(
            (face.generator_indices, value))
    dim_x = EMPTY
    for pieces in by_l.values():
        for _f, d in pieces:
            if d != EMPTY and (dim_x == EMPTY or d > dim_x):
                dim_x = d
    rows = []
    for l in sorted(by_l):
        pieces = tuple(sorted(by_l[l]))
        dims_l = [d for _f, d in pieces if d != EMPTY]
        if not dims_l:
            rows.append(StratumStatus(l, pieces, EMPTY, EMPTY, "EMPTY"))
            continue
        dim_l = max(dims_l)
        codim = dim_x - dim_l if dim_x != EMPTY else EMPTY
        status = "PASS" if codim == l else "FAIL"
        rows.append(StratumStatus(l, pieces, dim_l, codim, status))
    x0 = next((r for r in rows if r.index == 0), None)
    x0_nonempty = x0 is not None and x0.status != "EMPTY"
    passed = all(r.status != "FAIL" for r in rows)
    return AssumptionReport(tuple(rows), dim_x, x0_nonempty, passed)
