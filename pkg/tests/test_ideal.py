import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from realdescent.ideal import (
    Ideal,
    ResourceLimitError,
    contains,
    contains_radical,
    eliminate,
    groebner,
    ideal_equals,
    ideal_sum,
    is_groebner,
    is_trivial,
    normal_form,
)
from realdescent.numbers import QQ, FieldElement
from realdescent.parser import parse_poly
from realdescent.poly import GREVLEX, LEX, Polynomial, VariableContext, monomial_divides

from .conftest import QI, QS2
from .oracles import resultant_in_y

X2 = VariableContext(["x1", "x2"])
X4 = VariableContext(["x1", "x2", "x3", "x4"])
XY = VariableContext(["x", "y"])
XYZ = VariableContext(["x", "y", "z"])


def P(text, ctx=X2, field=QQ):
    return parse_poly(text, ctx, field)


def ideal(texts, ctx=X2, field=QQ):
    return Ideal([P(t, ctx, field) for t in texts], ctx, field)


CYCLIC3 = ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]
COX = ["x1^3 - 2*x1*x2", "x1^2*x2 - 2*x2^2 + x1"]  # needs five S-pairs
HUMBERT = ideal(["1 + x1^2 + x2^2", "-1 + x1^2 + x3^2", "i + x1^2 + x4^2"], X4, QI)


# normal form ----------------------------------------------------------------


def test_normal_form_examples():
    assert normal_form(P("x1^2 + x2"), [P("x1"), P("x2")], LEX).is_zero()
    assert normal_form(P("x1 + 1"), [P("x1^2")], LEX) == P("x1 + 1")
    # x1^2 x2 - x2 (x1^2 - x2) = x2^2
    assert normal_form(P("x1^2*x2"), [P("x1^2 - x2")], LEX) == P("x2^2")


@given(st.integers(0, 10**6))
def test_division_contract(seed):
    rng = random.Random(seed)
    basis = [_random_poly(rng, X2, QI, 3, 2) for _ in range(2)]
    basis = [b for b in basis if not b.is_zero()]
    p = _random_poly(rng, X2, QI, 5, 3)
    r = normal_form(p, basis, GREVLEX)
    lms = [b.leading_monomial(GREVLEX) for b in basis]
    assert all(not monomial_divides(lm, m) for m in r.terms for lm in lms)
    if basis:
        gb = groebner(basis)
        assert normal_form(p - r, gb).is_zero()


# groebner --------------------------------------------------------------------


def test_groebner_examples():
    assert groebner(ideal(["x1", "x2"])) == [P("x1"), P("x2")]
    assert groebner(ideal(["x1^2 - x2", "x1"]), LEX) == [P("x1"), P("x2")]


def test_humbert_groebner_idempotent():
    gb = groebner(HUMBERT)
    assert groebner(Ideal(gb)) == gb
    assert is_groebner(gb)


def test_known_lex_basis():
    # classical twisted cubic in lex x > y > z
    I = ideal(["-x^2 + y", "-x^3 + z"], XYZ)
    assert groebner(I, LEX) == [P(s, XYZ) for s in ["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]]


def test_budget_exhaustion():
    with pytest.raises(ResourceLimitError) as info:
        groebner(ideal(COX), budget=1)
    assert info.value.pairs == 1
    assert len(groebner(ideal(COX), budget=5)) == 3


def test_bit_limit():
    with pytest.raises(ResourceLimitError):
        groebner(ideal(["x1^2 - 123456789/987654321*x2", "x1*x2 - 1"]), max_bits=8)


def test_env_budget(monkeypatch):
    monkeypatch.setenv("REALDESCENT_BUDGET", "1")
    with pytest.raises(ResourceLimitError):
        groebner(ideal(COX))


def _random_poly(rng, ctx, field, terms, deg):
    d = {}
    for _ in range(terms):
        mono = tuple(rng.randint(0, deg) for _ in ctx.names)
        a = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        b = Fraction(rng.randint(-3, 3)) if field.is_quadratic else 0
        d[mono] = FieldElement(a, b, field)
    return Polynomial(ctx, d, field)


def _corpus():
    fixed = [
        ideal(["x1", "x2"]),
        ideal(["x1^2 - x2", "x1"]),
        ideal(COX),
        ideal(["x^2 + y^2 + z^2 - 1", "x - y", "y - z^2"], XYZ),
        ideal(CYCLIC3, XYZ),
        ideal(["y - x^2", "z - x^3"], XYZ),
        ideal(["x1^2 + 1", "x2^2 + 1", "x1*x2 - 1"], X2, QI),
        ideal(["x1^2 - i*x2", "x2^2 - i*x1"], X2, QI),
        ideal(["s*x1^2 + x2 - 1", "x1*x2 - s"], X2, QS2),
        HUMBERT,
        ideal(["x*y - 1", "x^2 + y^2 - 4"], XY),
        ideal(["x^3 - y", "y^2 - x"], XY),
    ]
    rng = random.Random(2024)
    gen = []
    while len(fixed) + len(gen) < 20:
        field = rng.choice([QQ, QI, QS2])
        gens = [_random_poly(rng, XY, field, 3, 2) for _ in range(rng.randint(2, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            gen.append(Ideal(gens))
    return fixed + gen


CORPUS = _corpus()


@pytest.mark.parametrize("k", range(len(CORPUS)))
@pytest.mark.parametrize("order", [GREVLEX, LEX], ids=str)
def test_buchberger_postconditions(k, order):
    I = CORPUS[k]
    gb = groebner(I, order)
    assert all(normal_form(g, gb, order).is_zero() for g in I.generators)
    assert is_groebner(gb, order)
    lms = [g.leading_monomial(order) for g in gb]
    for g, lm in zip(gb, lms):
        assert g.leading_coefficient(order) == 1
        others = [m for m in lms if m != lm]
        assert all(not monomial_divides(o, m) for m in g.terms for o in others)
    assert groebner(Ideal(gb), order) == gb
    assert groebner(Ideal(list(reversed(I.generators))), order) == gb
    shuffled = list(I.generators)
    random.Random(k).shuffle(shuffled)
    assert groebner(Ideal(shuffled + [shuffled[0] * 3]), order) == gb
    assert groebner(I.conjugate(), order) == [g.conjugate() for g in gb]


# membership and equality --------------------------------------------------------


def test_contains_examples():
    I = ideal(["x1", "x2"])
    assert contains(I, P("x1^2 + x2"))
    assert not contains(I, P("x1 + 1"))


def test_ideal_equals_examples():
    assert ideal_equals(ideal(["x1"]), ideal(["2*x1"]))
    assert not ideal_equals(ideal(["x1"]), ideal(["x1^2"]))


def test_humbert_not_self_conjugate():
    assert not ideal_equals(HUMBERT, HUMBERT.conjugate())
    assert not contains(HUMBERT, P("-i + x1^2 + x4^2", X4, QI))


def test_is_trivial_examples():
    assert is_trivial(ideal(["x1", "x1 - 1"]))
    assert not is_trivial(ideal(["x1"]))


def test_ideal_sum_examples():
    assert ideal_equals(ideal_sum(ideal(["x1"]), ideal(["x2"])), ideal(["x1", "x2"]))
    I = ideal(["x1^2 - x2", "x1*x2 + 1"])
    assert ideal_equals(ideal_sum(I, I), I)


def test_contains_radical_examples():
    I = ideal(["x1^2"])
    assert contains_radical(I, P("x1"))
    assert not contains_radical(I, P("x1 + 1"))
    assert contains_radical(ideal(["x1"]), P("x1*x2"))
    assert not contains(I, P("x1"))


# elimination --------------------------------------------------------------------


def test_eliminate_examples():
    E = eliminate(ideal(["y - x^2", "x - 2"], XY), 1)
    assert E.context.names == ("y",)
    assert E.generators == (parse_poly("y - 4", E.context),)
    assert eliminate(ideal(["x"], XY), 1).is_zero_ideal()
    E = eliminate(ideal(["y - x^2", "z - x^3"], XYZ), 1)
    assert contains(E, parse_poly("y^3 - z^2", E.context))


def test_eliminate_bad_split():
    with pytest.raises(ValueError):
        eliminate(ideal(["x"], XY), 2)


RESULTANT_CASES = [
    ("x^2 + y^2 - 5", "x - y - 1"),
    ("x^2 - y", "x^2 + x - y^2"),
    ("x^2 - 2*y*x + 1", "x^3 - y"),
    ("x^2 + y*x + 1", "x^2 - y"),
    ("x - y^2", "x^2 - y - 2"),
    ("x^3 + y^2 - 1", "x + y"),
    ("x^2 + y^3 - 2", "x^2 - y"),
    ("x^2 - 3*y", "x^2 + 2*x - y^2 + 1"),
    ("x^2 + x*y - y + 1", "x^2 - y^2"),
    ("x^3 - x*y + y^2", "x^2 + y - 2"),
]


@pytest.mark.parametrize("f,g", RESULTANT_CASES)
def test_elimination_matches_resultant(f, g):
    fp, gp = P(f, XY), P(g, XY)
    coeffs = resultant_in_y(
        {m: c.a for m, c in fp.terms.items()}, {m: c.a for m, c in gp.terms.items()}
    )
    Y = VariableContext(["y"])
    res = Polynomial(Y, {(d,): c for d, c in enumerate(coeffs)}, QQ)
    E = eliminate(Ideal([fp, gp]), 1)
    assert not res.is_zero() and not E.is_zero_ideal()
    for gen in E.generators:
        assert set(gen.variables()) <= {"y"}
        assert contains(Ideal([fp, gp]), gen.with_context(XY))
        assert contains_radical(Ideal([res]), gen)
    assert contains_radical(E, res)
