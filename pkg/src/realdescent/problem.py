"""Input data of a descent run."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .numbers import FieldSpec
from .poly import GREVLEX, MonomialOrder, PolyMap, Polynomial, VariableContext

__all__ = ["DEFAULT_BUDGET", "DescentOptions", "DescentProblem", "default_budget"]

DEFAULT_BUDGET = 2_000_000
DEFAULT_MAX_BITS = 1 << 16


def default_budget() -> int:
    """S-pair budget; ``REALDESCENT_BUDGET`` overrides the built-in default."""
    env = os.environ.get("REALDESCENT_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"REALDESCENT_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


@dataclass
class DescentOptions:
    order: MonomialOrder = GREVLEX
    verify: bool = True
    radical: bool = False
    budget: int = field(default_factory=default_budget)
    max_bits: int = DEFAULT_MAX_BITS


@dataclass
class DescentProblem:
    """Variety ``X = V(generators)`` in ``n`` coordinates over ``field`` plus
    the holomorphic companion ``symmetry`` of the antiholomorphic involution
    (the involution is conjugation applied after ``symmetry``)."""

    field: FieldSpec
    context: VariableContext
    generators: Tuple[Polynomial, ...]
    symmetry: PolyMap
    options: DescentOptions = field(default_factory=DescentOptions)

    @property
    def n(self) -> int:
        return len(self.context)

    @property
    def s(self) -> int:
        return len(self.generators)

    @classmethod
    def build(
        cls,
        field_: FieldSpec,
        context: VariableContext,
        generators: Sequence[Polynomial],
        symmetry: Sequence[Polynomial],
        options: Optional[DescentOptions] = None,
    ) -> "DescentProblem":
        generators = tuple(g for g in generators)
        if not generators:
            raise ValueError("ideal must have at least one generator")
        if all(g.is_zero() for g in generators):
            raise ValueError("ideal must have at least one nonzero generator")
        for g in list(generators) + list(symmetry):
            if g.context != context or g.field != field_:
                raise ValueError("generator or symmetry component over the wrong ring")
        fmap = PolyMap(context, context, symmetry)
        return cls(field_, context, generators, fmap, options or DescentOptions())

    def conjugate(self) -> "DescentProblem":
        """The problem with every coefficient conjugated."""
        return DescentProblem(
            self.field,
            self.context,
            tuple(g.conjugate() for g in self.generators),
            self.symmetry.conjugate(),
            self.options,
        )
