"""Groebner-basis engine over exact coefficient fields.

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Moeller installation of the product and chain criteria. All results
are reduced bases, so ideal equality is basis equality.
"""

from __future__ import annotations

import heapq
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .numbers import QQ, FieldElement, FieldSpec
from .poly import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    VariableContext,
    monomial_div,
    monomial_divides,
    monomial_lcm,
)
from .problem import DEFAULT_MAX_BITS, default_budget

__all__ = [
    "Ideal",
    "ResourceLimitError",
    "contains",
    "contains_radical",
    "eliminate",
    "fresh_names",
    "groebner",
    "ideal_equals",
    "ideal_sum",
    "is_groebner",
    "is_trivial",
    "normal_form",
    "s_polynomial",
]

log = logging.getLogger(__name__)

Terms = Dict[Monomial, FieldElement]


class ResourceLimitError(RuntimeError):
    """The S-pair or coefficient-size budget ran out before completion."""

    def __init__(self, message: str, *, pairs: int = 0, basis_size: int = 0, max_bits: int = 0):
        super().__init__(message)
        self.pairs = pairs
        self.basis_size = basis_size
        self.max_bits = max_bits


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, mono):
        k = self[mono] = self.fn(mono)
        return k


def _reduce(f: Terms, basis: Sequence[Tuple[Monomial, Terms]], key) -> Terms:
    """Full reduction of ``f`` by monic ``basis`` entries ``(lm, terms)``."""
    f = dict(f)
    rem: Terms = {}
    key = key.__getitem__
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for g_lm, g in basis:
            q = monomial_div(lm, g_lm)
            if q is None:
                continue
            for m, v in g.items():
                mm = tuple(a + b for a, b in zip(m, q))
                cur = f.get(mm)
                t = v * c
                if cur is None:
                    f[mm] = -t
                else:
                    cur = cur - t
                    if cur.is_zero():
                        del f[mm]
                    else:
                        f[mm] = cur
            break
        else:
            rem[lm] = f.pop(lm)
    return rem


def _monic(f: Terms, lm: Monomial) -> Terms:
    lc = f[lm]
    if lc.is_one():
        return f
    inv = lc.inv()
    return {m: c * inv for m, c in f.items()}


def _spoly(f: Terms, f_lm: Monomial, g: Terms, g_lm: Monomial) -> Terms:
    """S-polynomial of monic ``f`` and ``g``."""
    lcm = monomial_lcm(f_lm, g_lm)
    qf = tuple(a - b for a, b in zip(lcm, f_lm))
    qg = tuple(a - b for a, b in zip(lcm, g_lm))
    out: Terms = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(m, qf))] = c
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        cur = out.get(mm)
        if cur is None:
            out[mm] = -c
        else:
            cur = cur - c
            if cur.is_zero():
                del out[mm]
            else:
                out[mm] = cur
    return out


def _bits(f: Terms) -> int:
    return max((c.bit_size() for c in f.values()), default=0)


def _common_ring(polys: Iterable[Polynomial]):
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial to determine the ring")
    ctx, field = polys[0].context, polys[0].field
    for p in polys[1:]:
        p._check(polys[0])
    return ctx, field


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of ``p`` under multivariate division by ``basis``.

    No term of the result is divisible by a leading monomial of the basis.
    """
    basis = [b for b in basis if not b.is_zero()]
    for b in basis:
        p._check(b)
    if p.is_zero() or not basis:
        return p
    key = _KeyCache(order.key)
    monic = []
    for b in basis:
        lm = b.leading_monomial(order)
        monic.append((lm, _monic(b.terms, lm)))
    rem = _reduce(p.terms, monic, key)
    return Polynomial._from_clean(p.context, p.field, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    f_lm, g_lm = f.leading_monomial(order), g.leading_monomial(order)
    terms = _spoly(_monic(f.terms, f_lm), f_lm, _monic(g.terms, g_lm), g_lm)
    return Polynomial._from_clean(f.context, f.field, terms)


def _buchberger(
    gens: List[Terms],
    order: MonomialOrder,
    budget: int,
    max_bits: int,
    stats: Optional[dict] = None,
) -> List[Terms]:
    key = _KeyCache(order.key)
    polys: List[Terms] = []
    lms: List[Monomial] = []
    active: List[int] = []
    pairs: Dict[Tuple[int, int], int] = {}
    heap: List[Tuple[int, int, int]] = []

    def add_pair(i, j):
        i, j = min(i, j), max(i, j)
        deg = sum(monomial_lcm(lms[i], lms[j]))
        pairs[(i, j)] = deg
        heapq.heappush(heap, (deg, i, j))

    def update(h: int):
        nonlocal active
        mh = lms[h]
        # chain criterion on new pairs (h, g)
        candidates = list(active)
        kept: List[int] = []
        for idx, g in enumerate(candidates):
            mg = lms[g]
            lcm_hg = monomial_lcm(mh, mg)
            coprime = all(not (a and b) for a, b in zip(mh, mg))
            if coprime:
                kept.append(g)
                continue
            rest = candidates[idx + 1:]
            dominated = any(monomial_divides(monomial_lcm(mh, lms[o]), lcm_hg) for o in rest) or any(
                monomial_divides(monomial_lcm(mh, lms[o]), lcm_hg) for o in kept
            )
            if not dominated:
                kept.append(g)
        # product criterion
        new_pairs = [g for g in kept if not all(not (a and b) for a, b in zip(mh, lms[g]))]
        # chain criterion on old pairs
        for (i, j) in list(pairs):
            lcm_ij = monomial_lcm(lms[i], lms[j])
            if (
                monomial_divides(mh, lcm_ij)
                and monomial_lcm(lms[i], mh) != lcm_ij
                and monomial_lcm(lms[j], mh) != lcm_ij
            ):
                del pairs[(i, j)]
        for g in new_pairs:
            add_pair(g, h)
        active = [g for g in active if not monomial_divides(mh, lms[g])]
        active.append(h)

    def install(f: Terms):
        lm = max(f, key=key.__getitem__)
        f = _monic(f, lm)
        bits = _bits(f)
        if bits > max_bits:
            raise ResourceLimitError(
                f"coefficient size {bits} bits exceeds the limit of {max_bits}",
                pairs=processed,
                basis_size=len(polys),
                max_bits=bits,
            )
        polys.append(f)
        lms.append(lm)
        update(len(polys) - 1)

    processed = 0
    for f in gens:
        if f:
            f = _reduce(f, [(lms[g], polys[g]) for g in active], key)
            if f:
                install(f)
    while heap:
        deg, i, j = heapq.heappop(heap)
        if pairs.get((i, j)) != deg:
            continue
        del pairs[(i, j)]
        processed += 1
        if processed > budget:
            raise ResourceLimitError(
                f"S-pair budget of {budget} exhausted (basis size {len(polys)})",
                pairs=processed - 1,
                basis_size=len(polys),
            )
        s = _spoly(polys[i], lms[i], polys[j], lms[j])
        r = _reduce(s, [(lms[g], polys[g]) for g in active], key)
        if r:
            install(r)
            if not any(r_m for r_m in lms[-1]):
                break  # unit ideal
    if stats is not None:
        stats["pairs"] = stats.get("pairs", 0) + processed
        stats["generated"] = stats.get("generated", 0) + len(polys)

    basis = [(lms[g], polys[g]) for g in active]
    if any(not any(lm) for lm, _ in basis):
        one = tuple(0 for _ in basis[0][0])
        return [{one: next(iter(polys[0].values())).spec.one()}]
    # minimalize (guard against duplicates of equal leading monomials)
    basis.sort(key=lambda t: key[t[0]])
    minimal: List[Tuple[Monomial, Terms]] = []
    for lm, f in basis:
        if not any(monomial_divides(m, lm) for m, _ in minimal):
            minimal.append((lm, f))
    reduced = []
    for k, (lm, f) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = dict(f)
        lc = tail.pop(lm)
        r = _reduce(tail, others, key)
        r[lm] = lc
        reduced.append((lm, _monic(r, lm)))
    reduced.sort(key=lambda t: key[t[0]], reverse=True)
    return [f for _, f in reduced]


def groebner(
    ideal: "Ideal | Sequence[Polynomial]",
    order: MonomialOrder = GREVLEX,
    *,
    budget: Optional[int] = None,
    max_bits: Optional[int] = None,
    stats: Optional[dict] = None,
) -> List[Polynomial]:
    """Reduced Groebner basis, sorted by descending leading monomial."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    return ideal.groebner(order, budget=budget, max_bits=max_bits, stats=stats)


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    basis = [b for b in basis if not b.is_zero()]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero():
                return False
    return True


class Ideal:
    """Ideal of a polynomial ring with a per-order cache of reduced bases."""

    def __init__(
        self,
        generators: Iterable[Polynomial],
        context: Optional[VariableContext] = None,
        field: Optional[FieldSpec] = None,
    ):
        generators = list(generators)
        if generators:
            ctx, fld = _common_ring(generators)
            if context is not None and context != ctx:
                raise ValueError("generators do not live in the given context")
            context, field = ctx, fld
        if context is None:
            raise ValueError("an ideal without generators needs an explicit context")
        self.context = context
        self.field = field or QQ
        self.generators: Tuple[Polynomial, ...] = tuple(g for g in generators if not g.is_zero())
        self._gb: Dict[MonomialOrder, List[Polynomial]] = {}

    @classmethod
    def zero(cls, context: VariableContext, field: FieldSpec = QQ) -> "Ideal":
        return cls([], context, field)

    def __repr__(self):
        return f"Ideal([{', '.join(str(g) for g in self.generators)}])"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def groebner(
        self,
        order: MonomialOrder = GREVLEX,
        *,
        budget: Optional[int] = None,
        max_bits: Optional[int] = None,
        stats: Optional[dict] = None,
    ) -> List[Polynomial]:
        order.check_arity(len(self.context))
        cached = self._gb.get(order)
        if cached is not None:
            return list(cached)
        if not self.generators:
            self._gb[order] = []
            return []
        terms = _buchberger(
            [g.terms for g in self.generators],
            order,
            default_budget() if budget is None else budget,
            DEFAULT_MAX_BITS if max_bits is None else max_bits,
            stats,
        )
        gb = [Polynomial._from_clean(self.context, self.field, t) for t in terms]
        self._gb[order] = gb
        log.debug("groebner %s: %d generators -> %d basis elements", order, len(self.generators), len(gb))
        return list(gb)

    def seed_groebner(self, order: MonomialOrder, basis: Sequence[Polynomial]):
        """Record an externally known reduced basis."""
        self._gb[order] = list(basis)

    def conjugate(self) -> "Ideal":
        out = Ideal([g.conjugate() for g in self.generators], self.context, self.field)
        for order, gb in self._gb.items():
            out._gb[order] = [g.conjugate() for g in gb]
        return out

    def with_context(self, context: VariableContext) -> "Ideal":
        return Ideal([g.with_context(context) for g in self.generators], context, self.field)

    def reduce(self, p: Polynomial, order: MonomialOrder = GREVLEX, **kw) -> Polynomial:
        return normal_form(p, self.groebner(order, **kw), order)

    def __contains__(self, p: Polynomial) -> bool:
        return contains(self, p)


def contains(ideal: Ideal, p: Polynomial, order: MonomialOrder = GREVLEX, **kw) -> bool:
    """Ideal membership by normal form against the reduced basis."""
    if p.is_zero():
        return True
    return ideal.reduce(p, order, **kw).is_zero()


def ideal_equals(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX, **kw) -> bool:
    if I.context != J.context:
        raise ValueError("ideals live in different rings")
    return I.groebner(order, **kw) == J.groebner(order, **kw)


def is_trivial(ideal: Ideal, **kw) -> bool:
    """True iff the ideal is the whole ring (empty variety over C)."""
    gb = ideal.groebner(GREVLEX, **kw)
    return len(gb) == 1 and gb[0].is_constant()


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.context != J.context:
        raise ValueError("ideals live in different rings")
    return Ideal(list(I.generators) + list(J.generators), I.context, I.field)


def fresh_names(prefix: str, count: int, taken: Iterable[str], start: int = 1) -> List[str]:
    """``prefix1 .. prefixN``, underscored until clear of ``taken``."""
    taken = set(taken)
    while True:
        names = [f"{prefix}{k}" for k in range(start, start + count)]
        if not taken.intersection(names):
            return names
        prefix += "_"


def eliminate(ideal: Ideal, k: int, **kw) -> Ideal:
    """Elimination ideal ``I ∩ K[x_{k+1}, ...]`` of the first ``k`` variables.

    The returned ideal already carries its reduced grevlex basis.
    """
    n = len(ideal.context)
    if not 0 < k < n:
        raise ValueError(f"cannot eliminate {k} of {n} variables")
    gb = ideal.groebner(MonomialOrder.block(k), **kw)
    rest = VariableContext(ideal.context.names[k:])
    kept = []
    for g in gb:
        if all(not any(m[:k]) for m in g.terms):
            kept.append(Polynomial._from_clean(rest, g.field, {m[k:]: c for m, c in g.terms.items()}))
    out = Ideal(kept, rest, ideal.field)
    out.seed_groebner(GREVLEX, kept)
    return out


def contains_radical(ideal: Ideal, p: Polynomial, **kw) -> bool:
    """Rabinowitsch test: ``p`` vanishes on V(I) iff ``1 ∈ I + <1 - y p>``."""
    if p.is_zero():
        return True
    (y,) = fresh_names("y", 1, ideal.context.names, start=0)
    ctx = VariableContext(ideal.context.names + (y,))
    lifted = [g.with_context(ctx) for g in ideal.generators]
    yp = Polynomial.variable(y, ctx, ideal.field) * p.with_context(ctx)
    return is_trivial(Ideal(lifted + [1 - yp], ctx, ideal.field), **kw)
