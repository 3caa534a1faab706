"""Reference data for the genus-5 Humbert curve over Q(i) and small toys.

``HUMBERT_Z`` is the list of equations of Z printed in the original worked
example (fractional coefficients kept). ``HUMBERT_R`` is recomputed from
``Psi(x, f(x))``: the printed version repeats ``i*x2*x3`` one extra time and
so shows 12 entries for an 11-component map; the entry for ``t8`` is
``i*x4^2``.
"""

from __future__ import annotations

from typing import List

HUMBERT_PROBLEM = """\
# classical Humbert curve of genus 5 with its antiholomorphic involution
field Q(i)
vars x1 x2 x3 x4
ideal:
  1 + x1^2 + x2^2
  -1 + x1^2 + x3^2
  i + x1^2 + x4^2
symmetry:
  i*x1
  i*x3
  i*x2
  i*x4
"""

HUMBERT_Z = [
    "t11",
    "t9 + t10",
    "t6 - t7",
    "t5 + t8 - 1",
    "t4^2 - 2*t8",
    "t3^2 - 2*t7 - 2",
    "t2^2 - 2*t7 + 2",
    "t8^2*t10^2 + t8^2 - 2*t8*t10^2 - 2*t8 - 1/4*t10^4 + t10^2 + 1",
    "t7*t10^2 + t8*t10^2 + 2*t8 - t10^2 - 2",
    "t7*t8 - t7 - t8^2 + 2*t8 + 1/2*t10^2 - 1",
    "t7^2 - t8^2 + 2*t8 - 2",
    "t2*t7 + t2 - t3*t8 + t3",
    "t2*t3 - 2*t8 + 2",
    "t1 - 1/2*t2*t10 - 1/2*t3*t10",
    "t2*t10^2 - 2*t3*t7 + 2*t3*t8 + t3*t10^2",
    "t2*t8 - t2 - t3*t7 + t3",
]

# As printed (12 entries, one spurious repeat of i*x2*x3).
HUMBERT_R_PRINTED = [
    "(1+i)*x1", "x2 + i*x3", "x3 + i*x2", "(1+i)*x4", "i*x1^2", "i*x2*x3",
    "i*x2*x3", "i*x2*x3", "i*x4^2", "x1*x2 - x1*x3", "x1*x3 - x1*x2", "0",
]

HUMBERT_R = [
    "(1+i)*x1",
    "x2 + i*x3",
    "x3 + i*x2",
    "(1+i)*x4",
    "i*x1^2",
    "i*x2*x3",
    "i*x2*x3",
    "i*x4^2",
    "x1*x2 - x1*x3",
    "x1*x3 - x1*x2",
    "0",
]

# Reduced model on t1..t4 (w_k = t_k).
HUMBERT_Y = [
    "4 + t2^2 - t3^2",
    "t1^2 + t2*t3",
    "t1^2 + t4^2 - 2",
]

HUMBERT_AUTOMORPHISMS = {
    "A1": ["-x1", "x2", "x3", "x4"],
    "A2": ["-x1", "-x2", "x3", "x4"],
    "A3": ["x1", "x2", "-x3", "x4"],
    "A4": ["x1", "x2", "x3", "-x4"],
}

TOY_PROBLEM = """\
field Q(i)
vars x
ideal:
  x^2 - i
symmetry:
  i*x
"""

TOY_Z = ["t2 + 1", "t1^2 + 2"]

# F = coordinate swap; the origin is a fixed point of the swap on the graph.
NONEMPTY_W_PROBLEM = """\
field Q(i)
vars x1 x2
ideal:
  x2 - i*x1
symmetry:
  x2
  x1
"""

SELF_CONJUGATE_PROBLEM = """\
field Q(i)
vars x1
ideal:
  x1^2 + 1
symmetry:
  x1
"""


def humbert_problem():
    from .parser import parse_problem

    return parse_problem(HUMBERT_PROBLEM)


def _matches(problem, reference) -> bool:
    return (
        problem.field == reference.field
        and problem.context == reference.context
        and set(problem.generators) == set(reference.generators)
        and problem.symmetry == reference.symmetry
    )


def fixture_certificates(problem, report) -> List:
    """Compare against the published Humbert data when the input is that curve."""
    from .descent import Certificate
    from .ideal import Ideal, ideal_equals
    from .parser import parse_poly

    if not _matches(problem, humbert_problem()):
        return []
    ctx = report.z_context
    published = Ideal([parse_poly(s, ctx, problem.field) for s in HUMBERT_Z], ctx, problem.field)
    ours = Ideal(report.z_generators, ctx, problem.field)
    ok = ideal_equals(published, ours)
    return [
        Certificate(
            "humbert_fixture",
            ok,
            "Z equals the published equations of the Humbert example"
            if ok
            else "Z differs from the published equations of the Humbert example",
        )
    ]
