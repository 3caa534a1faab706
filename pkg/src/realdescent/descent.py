"""Descent of a variety with an antiholomorphic involution to the real subfield.

Given ``X = V(P_1, ..., P_s)`` over ``K = Q(sqrt(m))`` and the holomorphic
companion ``F`` of the involution (the involution is ``x -> conj(F(x))``),
the pipeline builds the graph ``{(x, F(x))}``, pushes it through the
swap-invariant map ``Psi`` and eliminates ``x`` to get equations of the image
``Z``. ``Z`` is conjugation invariant, so its equations can be taken with
rational coefficients, and ``R = Psi(x, F(x))`` is a birational map ``X -> Z``.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .ideal import (
    Ideal,
    contains,
    contains_radical,
    eliminate,
    fresh_names,
    ideal_equals,
    ideal_sum,
    is_trivial,
)
from .numbers import QQ, FieldElement, FieldSpec
from .poly import GREVLEX, PolyMap, Polynomial, VariableContext, compose, trace_pair
from .problem import DescentOptions, DescentProblem

__all__ = [
    "Certificate",
    "DescentError",
    "DescentProblem",
    "DescentReport",
    "Fiber",
    "InvariantMap",
    "Projection",
    "SymmetryError",
    "WStatus",
    "compute_W",
    "compute_Z",
    "descend",
    "descent_map",
    "fiber",
    "graph_ideal",
    "invariant_map",
    "project_Z",
    "self_conjugate_branch",
    "separation_sample",
    "swap_map",
    "symmetrize_Z",
    "validate_symmetry",
    "verify_descent",
    "w_star_ideal",
]

log = logging.getLogger(__name__)

SELF_CONJUGATE = "SelfConjugate"
GENERIC = "GenericDescent"


class DescentError(RuntimeError):
    """A pipeline precondition or internal check failed."""


class SymmetryError(DescentError):
    """The supplied symmetry does not define a valid involution of X."""

    def __init__(self, certificate: "Certificate"):
        super().__init__(f"{certificate.name}: {certificate.detail}")
        self.certificate = certificate


@dataclass
class Certificate:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[str] = None


@dataclass
class WStatus:
    empty: bool
    generators: Tuple[Polynomial, ...] = ()

    def __str__(self):
        return "empty" if self.empty else "nonempty"


@dataclass
class DescentReport:
    branch: str
    field: FieldSpec
    z_context: VariableContext
    z_generators: Tuple[Polynomial, ...]
    r_components: Optional[Tuple[Polynomial, ...]] = None
    w_status: Optional[WStatus] = None
    certificates: List[Certificate] = field(default_factory=list)
    equality_notion: str = "ideal"
    timings: Dict[str, float] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    @property
    def r_kind(self) -> Optional[str]:
        if self.branch != GENERIC or self.w_status is None:
            return None
        return "isomorphism" if self.w_status.empty else "birational"

    def certificate(self, name: str) -> Certificate:
        for c in self.certificates:
            if c.name == name:
                return c
        raise KeyError(name)


def _kw(problem: DescentProblem) -> dict:
    return {"budget": problem.options.budget, "max_bits": problem.options.max_bits}


def _ideal(problem: DescentProblem) -> Ideal:
    return Ideal(problem.generators, problem.context, problem.field)


def _member(I: Ideal, p: Polynomial, options: DescentOptions) -> bool:
    kw = {"budget": options.budget, "max_bits": options.max_bits}
    if options.radical:
        return contains_radical(I, p, **kw)
    return contains(I, p, options.order, **kw)


def _same(I: Ideal, J: Ideal, options: DescentOptions) -> Tuple[bool, Optional[Polynomial]]:
    """Ideal (or, with ``radical``, variety) equality plus a witness on failure."""
    kw = {"budget": options.budget, "max_bits": options.max_bits}
    if not options.radical and ideal_equals(I, J, options.order, **kw):
        return True, None
    for a, b in ((I, J), (J, I)):
        for g in a.generators:
            if not _member(b, g, options):
                return False, g
    return True, None


# symmetry ---------------------------------------------------------------


def validate_symmetry(problem: DescentProblem) -> List[Certificate]:
    """Check that ``F`` maps X into its conjugate and that the cocycle
    ``conj(F) o F = id`` holds on X. Returns two certificates."""
    I = _ideal(problem)
    F = problem.symmetry
    opts = problem.options
    into = Certificate("symmetry_valid", True, "F maps X into its conjugate")
    for j, P in enumerate(problem.generators, start=1):
        q = compose(P.conjugate(), F)
        if not _member(I, q, opts):
            into = Certificate(
                "symmetry_valid",
                False,
                f"condition (a) fails: conjugate of generator {j} composed with F is not in I(X)",
                str(q),
            )
            break
    cocycle = Certificate("cocycle", True, "conj(F) o F is the identity on X")
    FF = F.conjugate().after(F)
    for k, (comp, name) in enumerate(zip(FF.components, problem.context.names), start=1):
        diff = comp - Polynomial.variable(name, problem.context, problem.field)
        if not _member(I, diff, opts):
            cocycle = Certificate(
                "cocycle",
                False,
                f"condition (b) fails: component {k} of conj(F) o F differs from {name} on X",
                str(diff),
            )
            break
    return [into, cocycle]


def require_valid_symmetry(problem: DescentProblem) -> List[Certificate]:
    certs = validate_symmetry(problem)
    for c in certs:
        if not c.passed:
            raise SymmetryError(c)
    return certs


# self-conjugate branch --------------------------------------------------


def is_self_conjugate(problem: DescentProblem) -> bool:
    if not problem.field.is_quadratic:
        return True
    I = _ideal(problem)
    return _same(I, I.conjugate(), problem.options)[0]


def _trace_generators(polys: Sequence[Polynomial]) -> List[Polynomial]:
    out: List[Polynomial] = []
    for p in polys:
        if p.is_fixed():
            cands = [p]
        else:
            cands = list(trace_pair(p))
        for q in cands:
            if q.is_zero():
                continue
            q = q.primitive()
            if q not in out:
                out.append(q)
    return out


def self_conjugate_branch(problem: DescentProblem) -> Optional[DescentReport]:
    """Report for ``X = conj(X)``, or None when the generic pipeline applies.

    Generators are replaced by ``trace(P)`` and ``trace(sqrt(m) P)``.
    """
    if not is_self_conjugate(problem):
        return None
    gens = _trace_generators(problem.generators)
    I = _ideal(problem)
    same, witness = _same(I, Ideal(gens, problem.context, problem.field), problem.options)
    certs = [
        Certificate(
            "z_fixed",
            all(g.is_fixed() for g in gens),
            "all emitted coefficients lie in the real subfield",
        ),
        Certificate(
            "same_ideal",
            same,
            "trace generators define X",
            None if same else str(witness),
        ),
    ]
    return DescentReport(
        branch=SELF_CONJUGATE,
        field=problem.field,
        z_context=problem.context,
        z_generators=tuple(gens),
        certificates=certs,
        equality_notion="radical" if problem.options.radical else "ideal",
    )


# graph, invariants and R ----------------------------------------------------


def _z_names(problem: DescentProblem) -> List[str]:
    return fresh_names("z", problem.n, problem.context.names)


def _t_names(n: int, taken: Sequence[str] = ()) -> List[str]:
    return fresh_names("t", 3 * n - 1, taken)


def _xz_context(problem: DescentProblem) -> VariableContext:
    return VariableContext(problem.context.names + tuple(_z_names(problem)))


def graph_ideal(problem: DescentProblem) -> Ideal:
    """Ideal of ``{(x, F(x)) : x in X}`` in the variables ``x, z``."""
    ctx = _xz_context(problem)
    n = problem.n
    gens = []
    for k in range(n):
        zk = Polynomial.variable(ctx.names[n + k], ctx, problem.field)
        gens.append(zk - problem.symmetry[k].with_context(ctx))
    gens += [P.with_context(ctx) for P in problem.generators]
    return Ideal(gens, ctx, problem.field)


@dataclass(frozen=True)
class InvariantMap:
    """Generators ``t_1 .. t_{3n-1}`` of the swap-invariant polynomials:
    sums ``x_k + z_k``, products ``x_k z_k`` and cross terms
    ``x_1 x_k + z_1 z_k`` (k >= 2)."""

    n: int
    context: VariableContext
    target: VariableContext
    components: Tuple[Polynomial, ...]

    def as_map(self) -> PolyMap:
        return PolyMap(self.context, self.target, self.components)


def invariant_map(
    n: int,
    x_names: Optional[Sequence[str]] = None,
    z_names: Optional[Sequence[str]] = None,
    t_names: Optional[Sequence[str]] = None,
    field: FieldSpec = QQ,
) -> InvariantMap:
    if n < 1:
        raise ValueError("the invariant map needs n >= 1")
    x_names = list(x_names or [f"x{k}" for k in range(1, n + 1)])
    z_names = list(z_names or fresh_names("z", n, x_names))
    t_names = list(t_names or _t_names(n, x_names + z_names))
    ctx = VariableContext(x_names + z_names)
    x = [Polynomial.variable(v, ctx, field) for v in x_names]
    z = [Polynomial.variable(v, ctx, field) for v in z_names]
    comps = [x[k] + z[k] for k in range(n)]
    comps += [x[k] * z[k] for k in range(n)]
    comps += [x[0] * x[k] + z[0] * z[k] for k in range(1, n)]
    return InvariantMap(n, ctx, VariableContext(t_names), tuple(comps))


def swap_map(context: VariableContext, field: FieldSpec = QQ) -> PolyMap:
    """``(x, z) -> (z, x)`` on a context whose first half is x."""
    n = len(context) // 2
    names = context.names
    comps = [Polynomial.variable(v, context, field) for v in names[n:] + names[:n]]
    return PolyMap(context, context, comps)


def _graph_map(problem: DescentProblem, ctx: VariableContext) -> PolyMap:
    """``x -> (x, F(x))`` into the x,z context ``ctx``."""
    xs = [Polynomial.variable(v, problem.context, problem.field) for v in problem.context]
    return PolyMap(problem.context, ctx, xs + list(problem.symmetry.components))


def _psi(problem: DescentProblem) -> InvariantMap:
    z = _z_names(problem)
    return invariant_map(
        problem.n,
        problem.context.names,
        z,
        _t_names(problem.n, problem.context.names),
        problem.field,
    )


def descent_map(problem: DescentProblem) -> PolyMap:
    """``R = Psi o (id, F)``: ``3n - 1`` components in the x variables."""
    psi = _psi(problem)
    graph = _graph_map(problem, psi.context)
    return psi.as_map().after(graph)


# Z -------------------------------------------------------------------


def compute_Z(problem: DescentProblem, *, check_branch: bool = True) -> Ideal:
    """Equations of ``Z = closure(R(X))`` in the t variables, by eliminating
    x from ``<t_k - R_k(x)> + I(X)``. Refuses self-conjugate inputs."""
    if check_branch and is_self_conjugate(problem):
        raise DescentError("X is self-conjugate; the generic pipeline does not apply")
    R = descent_map(problem)
    ctx = VariableContext(problem.context.names + R.target.names)
    gens = []
    for name, comp in zip(R.target.names, R.components):
        gens.append(Polynomial.variable(name, ctx, problem.field) - comp.with_context(ctx))
    gens += [P.with_context(ctx) for P in problem.generators]
    return eliminate(Ideal(gens, ctx, problem.field), problem.n, **_kw(problem))


def symmetrize_Z(Z: Ideal, options: Optional[DescentOptions] = None) -> Ideal:
    """Replace generators having non-real coefficients by their trace pair.

    Requires ``conj(Z) = Z``; the result generates the same ideal and all
    its coefficients are rational.
    """
    options = options or DescentOptions()
    if Z.is_zero_ideal():
        return Z
    if Z.field.is_quadratic:
        same, witness = _same(Z, Z.conjugate(), options)
        if not same:
            raise DescentError(f"ideal is not invariant under conjugation: witness {witness}")
    gens = _trace_generators(Z.generators)
    out = Ideal(gens, Z.context, Z.field)
    for a, b in ((out, Z), (Z, out)):
        for g in a.generators:
            if not _member(b, g, options):
                raise DescentError(f"trace replacement changed the ideal: {g}")
    return out


# W ---------------------------------------------------------------------


def w_star_ideal(problem: DescentProblem) -> Ideal:
    """``I(Phi(X)) + swap(I(Phi(X)))`` in the x,z variables."""
    J = graph_ideal(problem)
    sw = swap_map(J.context, problem.field)
    swapped = Ideal([compose(g, sw) for g in J.generators], J.context, problem.field)
    return ideal_sum(J, swapped)


def compute_W(problem: DescentProblem, options: Optional[DescentOptions] = None) -> WStatus:
    """Image in Z of the points of the graph whose swap is also on the graph."""
    options = options or problem.options
    kw = _kw(problem)
    wstar = w_star_ideal(problem)
    if is_trivial(wstar, **kw):
        return WStatus(True)
    psi = _psi(problem)
    ctx = VariableContext(wstar.context.names + psi.target.names)
    gens = [
        Polynomial.variable(t, ctx, problem.field) - comp.with_context(ctx)
        for t, comp in zip(psi.target.names, psi.components)
    ]
    gens += [g.with_context(ctx) for g in wstar.generators]
    W = eliminate(Ideal(gens, ctx, problem.field), 2 * problem.n, **kw)
    try:
        W = symmetrize_Z(W, options)
    except DescentError:
        log.warning("W is not conjugation invariant; emitting it unsymmetrized")
    return WStatus(False, tuple(g.primitive() for g in W.generators))


# fibers of Psi -------------------------------------------------------------


@dataclass
class Fiber:
    rational: bool
    points: List[Tuple[Tuple[FieldElement, ...], Tuple[FieldElement, ...]]] = field(
        default_factory=list
    )
    reason: str = ""


def _elem(v, spec: FieldSpec) -> FieldElement:
    if isinstance(v, FieldElement):
        return v
    return FieldElement(Fraction(v), 0, spec)


def fiber(
    t_point: Sequence,
    problem: Optional[DescentProblem] = None,
    *,
    n: Optional[int] = None,
    field: Optional[FieldSpec] = None,
) -> Fiber:
    """All ``(x, z)`` over the coefficient field with ``Psi(x, z) = t_point``.

    With ``problem`` given, candidates are filtered to the graph of ``F``
    on X. Points needing a field extension are reported, not computed.
    """
    if problem is not None:
        n = problem.n
        field = problem.field
    spec = field or next((v.spec for v in t_point if isinstance(v, FieldElement)), QQ)
    if n is None:
        if (len(t_point) + 1) % 3:
            raise ValueError("point length must be 3n - 1")
        n = (len(t_point) + 1) // 3
    if len(t_point) != 3 * n - 1:
        raise ValueError(f"expected {3 * n - 1} coordinates, got {len(t_point)}")
    t = [_elem(v, spec) for v in t_point]
    roots = []
    for k in range(n):
        s, p = t[k], t[n + k]
        disc = s * s - 4 * p
        r = disc.sqrt()
        if r is None:
            return Fiber(False, [], f"discriminant {disc} of coordinate {k + 1} is not a square in {spec}")
        half = Fraction(1, 2)
        roots.append(((s + r) * half, (s - r) * half))
    points = []
    for choice in product((0, 1), repeat=n):
        x = tuple(roots[k][choice[k]] for k in range(n))
        z = tuple(roots[k][1 - choice[k]] for k in range(n))
        if all(x[0] * x[k] + z[0] * z[k] == t[2 * n + k - 1] for k in range(1, n)):
            if (x, z) not in points:
                points.append((x, z))
    if problem is not None:
        points = [pt for pt in points if _on_graph(problem, *pt)]
    return Fiber(True, points)


def _on_graph(problem: DescentProblem, x, z) -> bool:
    if any(not P.evaluate(x).is_zero() for P in problem.generators):
        return False
    return all(F.evaluate(x) == zk for F, zk in zip(problem.symmetry.components, z))


def separation_sample(n: int, samples: int = 100, seed: int = 0, height: int = 20) -> Tuple[bool, Optional[str]]:
    """Check ``fiber(Psi(p)) = {p, swap(p)}`` on seeded random rational points."""
    rng = random.Random(seed)
    psi = invariant_map(n)
    for _ in range(samples):
        p = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(2 * n)]
        x, z = tuple(p[:n]), tuple(p[n:])
        tp = psi.as_map()(p)
        fb = fiber(tp, n=n)
        xe = tuple(_elem(v, QQ) for v in x)
        ze = tuple(_elem(v, QQ) for v in z)
        expected = {(xe, ze), (ze, xe)}
        if not fb.rational or set(fb.points) != expected:
            return False, f"point {[str(v) for v in p]}"
    return True, None


# projection ----------------------------------------------------------------


@dataclass
class Projection:
    ideal: Ideal
    kept: Tuple[str, ...]
    birational_certified: bool = False
    note: str = "birationality of the projection onto its image is not certified"


def project_Z(Z: Ideal, keep: Sequence[str], **kw) -> Projection:
    """Eliminate every variable of Z outside ``keep``."""
    keep = list(dict.fromkeys(keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    unknown = [v for v in keep if v not in Z.context]
    if unknown:
        raise ValueError(f"unknown variables in keep set: {unknown}")
    kept = [v for v in Z.context.names if v in keep]
    drop = [v for v in Z.context.names if v not in keep]
    if not drop:
        return Projection(Z, tuple(kept), True, "keep set is all variables; Z unchanged")
    ctx = VariableContext(drop + kept)
    E = eliminate(Z.with_context(ctx), len(drop), **kw)
    gens = [g.primitive() for g in E.generators]
    out = Ideal(gens, E.context, E.field) if gens else Ideal.zero(E.context, E.field)
    return Projection(out, tuple(kept))


# verification ---------------------------------------------------------------


def verify_descent(problem: DescentProblem, report: DescentReport) -> List[Certificate]:
    """Independent checks of a generic-descent report."""
    if report.branch != GENERIC:
        raise DescentError("verify_descent applies to generic-descent reports")
    opts = problem.options
    kw = _kw(problem)
    Z = Ideal(report.z_generators, report.z_context, problem.field) if report.z_generators else Ideal.zero(
        report.z_context, problem.field
    )
    certs = []

    same, witness = _same(Z, Z.conjugate(), opts) if not Z.is_zero_ideal() else (True, None)
    certs.append(
        Certificate("z_invariant", same, "conj(Z) = Z", None if same else str(witness))
    )

    I = _ideal(problem)
    R = PolyMap(problem.context, report.z_context, report.r_components)
    pull = Certificate("pullback", True, "every Z generator vanishes on R(X)")
    for k, G in enumerate(report.z_generators, start=1):
        q = compose(G, R)
        if not _member(I, q, opts):
            pull = Certificate(
                "pullback",
                False,
                f"generator {k} ({G}) pulled back along R is not in I(X)",
                str(q),
            )
            break
    certs.append(pull)

    nonfixed = [g for g in report.z_generators if not g.is_fixed()]
    certs.append(
        Certificate(
            "z_fixed",
            not nonfixed,
            "all Z coefficients lie in the real subfield",
            str(nonfixed[0]) if nonfixed else None,
        )
    )

    w = report.w_status
    if w is None:
        certs.append(Certificate("w_consistent", False, "W status missing"))
    elif w.empty:
        trivial = is_trivial(w_star_ideal(problem), **kw)
        sep_ok, sep_witness = separation_sample(problem.n, samples=20, seed=problem.n)
        ok = trivial and sep_ok
        detail = "W* is empty and Psi separates swap orbits on sampled points"
        if not trivial:
            detail = "W reported empty but W* is nonempty"
        elif not sep_ok:
            detail = "Psi failed to separate a sampled point"
        certs.append(Certificate("w_consistent", ok, detail, sep_witness))
    else:
        Wid = Ideal(w.generators, report.z_context, problem.field)
        missing = [g for g in report.z_generators if not _member(Wid, g, opts)]
        certs.append(
            Certificate(
                "w_consistent",
                not missing and not is_trivial(Wid, **kw),
                "W is a nonempty subvariety of Z",
                str(missing[0]) if missing else None,
            )
        )
    return certs


# driver --------------------------------------------------------------------


def descend(problem: DescentProblem, *, verify: Optional[bool] = None) -> DescentReport:
    """Run the whole pipeline and return the report.

    Raises :class:`SymmetryError` when the symmetry is invalid.
    """
    verify = problem.options.verify if verify is None else verify
    timings: Dict[str, float] = {}

    def timed(name, fn, *args, **kwargs):
        t0 = time.perf_counter()
        out = fn(*args, **kwargs)
        timings[name] = time.perf_counter() - t0
        return out

    sym_certs = timed("validate", require_valid_symmetry, problem)
    report = timed("branch", self_conjugate_branch, problem)
    if report is not None:
        report.certificates = sym_certs + report.certificates
        report.timings = timings
        report.notes.append("X is self-conjugate: trace generators define it over the real subfield")
        return report

    R = timed("descent_map", descent_map, problem)
    Z = timed("compute_Z", compute_Z, problem, check_branch=False)
    Zs = timed("symmetrize_Z", symmetrize_Z, Z, problem.options)
    W = timed("compute_W", compute_W, problem)
    z_gens = tuple(g.primitive() for g in Zs.generators)
    report = DescentReport(
        branch=GENERIC,
        field=problem.field,
        z_context=Z.context,
        z_generators=z_gens,
        r_components=R.components,
        w_status=W,
        certificates=list(sym_certs),
        equality_notion="radical" if problem.options.radical else "ideal",
        timings=timings,
    )
    report.notes.append(
        "X is assumed to have a finite automorphism group; this is not checked"
    )
    if verify:
        report.certificates += timed("verify", verify_descent, problem, report)
    from .fixtures import fixture_certificates

    report.certificates += fixture_certificates(problem, report)
    return report
