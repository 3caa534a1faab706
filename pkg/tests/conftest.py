from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from realdescent.numbers import FieldElement, FieldSpec
from realdescent.poly import Polynomial, VariableContext

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

QI = FieldSpec(-1)
QS2 = FieldSpec(-2)

small_rationals = st.builds(
    Fraction, st.integers(-9, 9), st.integers(1, 6)
)


def elements(spec):
    if spec.is_quadratic:
        return st.builds(lambda a, b: FieldElement(a, b, spec), small_rationals, small_rationals)
    return st.builds(lambda a: FieldElement(a, 0, spec), small_rationals)


def polynomials(ctx, spec, max_terms=4, max_deg=3):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in ctx.names])
    return st.dictionaries(mono, elements(spec), max_size=max_terms).map(
        lambda d: Polynomial(ctx, d, spec)
    )


fields = st.sampled_from([QI, QS2])


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
