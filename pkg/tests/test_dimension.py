import random
from fractions import Fraction

import pytest

from logjet.dimension import (EMPTY, Budgets, IdealPresentation,
                              dimension_of, fp_count_points,
                              fp_dimension_estimate, groebner_basis,
                              groebner_dimension, krull_dim)
from logjet.errors import (PrimeTooSmallError, ResourceLimitError,
                           TooManyVariablesError, UnlocalizedLaurentError)


def pres(variables, gens, **kw):
    return IdealPresentation.from_terms(variables, gens, **kw)


def F(x):
    return Fraction(x)


# -- Groebner basics -----------------------------------------------------------


def test_single_generator():
    p = pres(["x"], [{(2,): F(1)}])
    gb = groebner_basis(p)
    assert gb.basis == ((((2,), F(1)),),)
    assert krull_dim(gb).dimension == 0


def test_unit_ideal():
    p = pres(["x", "y"], [{(1, 1): F(1), (0, 0): F(-1)}, {(1, 0): F(1)}])
    gb = groebner_basis(p)
    assert gb.is_unit_ideal
    assert krull_dim(gb).dimension == EMPTY


def test_zero_ideal():
    p = pres(["x", "y", "z"], [])
    gb = groebner_basis(p)
    assert gb.basis == ()
    res = krull_dim(gb)
    assert res.dimension == 3
    assert res.certificate == ("x", "y", "z")


def test_fat_point_jet():
    # J_1 of V(s^2): generators s^2, s*s' after normalization
    p = pres(["a0", "a1"], [{(2, 0): F(1)}, {(1, 1): F(2)}])
    gb = groebner_basis(p)
    res = krull_dim(gb)
    assert res.dimension == 1
    assert res.certificate == ("a1",)


def test_reduced_basis_is_reduced_and_monic():
    # x^2+y^2-1, x*y-1 in grevlex
    p = pres(["x", "y"],
             [{(2, 0): F(1), (0, 2): F(1), (0, 0): F(-1)},
              {(1, 1): F(1), (0, 0): F(-1)}])
    gb = groebner_basis(p)
    leads = gb.leading_monomials()
    assert len(set(leads)) == len(leads)
    for g in gb.basis:
        lead = max((m for m, _c in g), key=lambda m: (sum(m), tuple(-e for e in reversed(m))))
        coeff = dict(g)[lead]
        assert coeff == 1
        # no term of any element is divisible by another leading monomial
        for other in leads:
            if other == lead:
                continue
            for m, _c in g:
                assert not all(a <= b for a, b in zip(other, m))


def test_groebner_deterministic():
    gens = [{(2, 0, 0): F(1), (0, 1, 1): F(-1)},
            {(1, 1, 0): F(1), (0, 0, 2): Fraction(-3, 2)},
            {(0, 3, 0): F(1), (1, 0, 1): F(5)}]
    a = groebner_basis(pres(["x", "y", "z"], gens))
    b = groebner_basis(pres(["x", "y", "z"], gens))
    assert a.basis == b.basis


def test_a1_jet_ideal_dimension():
    # x1x2 - x3^2 and its first jet equation: dim 4
    g1 = {(1, 1, 0, 0, 0, 0): F(1), (0, 0, 2, 0, 0, 0): F(-1)}
    g2 = {(1, 0, 0, 0, 1, 0): F(1), (0, 1, 0, 1, 0, 0): F(1),
          (0, 0, 1, 0, 0, 1): F(-2)}
    p = pres(["x1", "x2", "x3", "y1", "y2", "y3"], [g1, g2])
    assert groebner_dimension(p).dimension == 4


def test_principal_ideal_codimension_one():
    rng = random.Random(5)
    for _ in range(8):
        k = rng.randint(1, 4)
        terms = {}
        for _ in range(rng.randint(2, 4)):
            mono = tuple(rng.randint(0, 2) for _ in range(k))
            terms[mono] = terms.get(mono, F(0)) + F(rng.randint(-3, 3))
        terms = {m: c for m, c in terms.items() if c}
        if not terms or all(sum(m) == 0 for m in terms):
            continue
        p = pres([f"v{i}" for i in range(k)], [terms])
        assert groebner_dimension(p).dimension == k - 1


def test_dimension_monotone_under_new_generators():
    rng = random.Random(9)
    for _ in range(6):
        k = rng.randint(2, 4)
        gens = []
        last = k
        for _step in range(3):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                mono = tuple(rng.randint(0, 2) for _ in range(k))
                terms[mono] = terms.get(mono, F(0)) + F(rng.randint(-2, 2))
            terms = {m: c for m, c in terms.items() if c}
            if not terms:
                continue
            gens.append(terms)
            res = groebner_dimension(pres([f"v{i}" for i in range(k)],
                                          list(gens)))
            d = res.dimension
            value = -1 if d == EMPTY else d
            assert value <= last
            last = value


def test_variable_budget():
    names = [f"v{i}" for i in range(20)]
    with pytest.raises(ResourceLimitError):
        groebner_basis(pres(names, [{tuple([1] + [0] * 19): F(1)}]))


def test_pair_budget():
    gens = [{(2, 0, 0): F(1), (0, 1, 1): F(-1)},
            {(1, 1, 0): F(1), (0, 0, 2): F(-1)},
            {(0, 3, 0): F(1), (1, 0, 1): F(1)}]
    with pytest.raises(ResourceLimitError):
        groebner_basis(pres(["x", "y", "z"], gens), Budgets(max_pairs=1))


def test_laurent_refused_without_localization():
    with pytest.raises(UnlocalizedLaurentError):
        pres(["x"], [{(-1,): F(1)}])


def test_laurent_cleared_with_localization():
    p = pres(["x", "w"], [{(-1, 0): F(1), (0, 0): F(1)},
                          {(1, 1): F(1), (0, 0): F(-1)}],
             localized=True)
    assert p.cleared == ((0, (1, 0)),)
    # cleared generator is 1 + x; with w*x = 1 the zero set is x = -1, w = -1
    assert groebner_dimension(p).dimension == 0


# -- F_p counting -----------------------------------------------------------------


def test_fp_count_curve():
    # the cuspidal cubic is parametrized by t -> (t^3, t^2): exactly p points
    p = pres(["x", "y"], [{(2, 0): F(1), (0, 3): F(-1)}])
    assert fp_count_points(p, 101) == 101
    res = fp_dimension_estimate(p, primes=(101, 103, 107))
    assert res.dimension == 1
    assert res.certificate == {101: 101, 103: 103, 107: 107}
    assert not res.unreliable


def test_fp_count_full_space():
    p = pres(["x", "y"], [])
    assert fp_count_points(p, 101) == 101 ** 2
    assert fp_dimension_estimate(p, primes=(101,)).dimension == 2


def test_fp_count_empty():
    p = pres(["x"], [{(0,): F(1)}])
    assert fp_count_points(p, 101) == 0
    assert fp_dimension_estimate(p, primes=(101, 103, 107)).dimension == EMPTY


def test_fp_linear_closed_form():
    # one linear equation in 3 variables: p^2 points
    p = pres(["x", "y", "z"],
             [{(1, 0, 0): F(1), (0, 1, 0): F(2), (0, 0, 1): F(3),
               (0, 0, 0): F(-1)}])
    assert fp_count_points(p, 101) == 101 ** 2


def test_fp_prime_too_small():
    p = pres(["x"], [{(1,): F(1)}], jet_order=5)
    with pytest.raises(PrimeTooSmallError):
        fp_dimension_estimate(p, primes=(5,))
    half = pres(["x"], [{(1,): Fraction(1, 101)}])
    with pytest.raises(PrimeTooSmallError):
        fp_dimension_estimate(half, primes=(101,))


def test_fp_too_many_variables():
    names = [f"v{i}" for i in range(9)]
    p = pres(names, [{tuple([1] + [0] * 8): F(1)}])
    with pytest.raises(TooManyVariablesError):
        fp_dimension_estimate(p, primes=(101,))


def test_fp_matches_groebner_on_quadric():
    g1 = {(1, 1, 0, 0, 0, 0): F(1), (0, 0, 2, 0, 0, 0): F(-1)}
    g2 = {(1, 0, 0, 0, 1, 0): F(1), (0, 1, 0, 1, 0, 0): F(1),
          (0, 0, 1, 0, 0, 1): F(-2)}
    p = pres(["x1", "x2", "x3", "y1", "y2", "y3"], [g1, g2], jet_order=1)
    exact = groebner_dimension(p).dimension
    fp = fp_dimension_estimate(p, primes=(101, 103, 107))
    assert exact == 4 and fp.dimension == 4


def test_dimension_of_both_records_agreement():
    p = pres(["x", "y"], [{(2, 0): F(1), (0, 3): F(-1)}])
    res = dimension_of(p, method="both")
    assert res.dimension == 1
    assert res.certificate["fp_agrees"] is True
