"""The coslice construction on a functor and its semi-monad structure.

For a functor f the category Jf collects pairs (a, u) of a domain
object with a morphism out of its image; morphisms only extend u by
postcomposition, keeping a fixed.  The construction packages three
things: Jf itself, the functor `s` placing each domain object at its
identity, and the projection `t` onto the codomain, a discrete
opfibration.  Together they factor f restricted to the discrete domain.

The multiplication `nu` collapses a pair of stacked extensions into
one, and algebras for the induced structure on functors are exactly
delta lenses, realised here by `jr_from_lens` and `lens_from_jr`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import (
    ContractError,
    FinCat,
    FinFunctor,
    InputError,
    InternalInvariantError,
    ValidationReport,
    compose_functors,
    counit_inclusion,
    discrete,
    discrete_restriction,
    same_cat,
    same_functor,
    tag,
    validate_category,
    validate_functor,
)
from .factorization import CommutingSquare, is_discrete_opfibration, is_initial
from .lens import DeltaLens, LiftingTable, lens_pairs, validate_lens

_J_CACHE: dict[tuple, "JPresentation"] = {}

# Full associativity validation of a generated category is cubic in
# branching degree; above this composable-pair budget only the linear
# checks run and the law suite carries the rest.
_ASSOC_BUDGET = 200_000


def _composable_pairs(c: FinCat) -> int:
    outdeg = {x: len(c.out(x)) for x in c.objects}
    return sum(outdeg[c.tgt[m]] for m in c.morphisms)


def validate_generated_category(c: FinCat) -> ValidationReport:
    """Category validation with the associativity sweep budget applied."""
    return validate_category(c, associativity=_composable_pairs(c) <= _ASSOC_BUDGET)


@dataclass(frozen=True)
class JPresentation:
    """The coslice category of a functor with its two structure legs.

    j          the category of pairs (a, u out of the image of a)
    s          discrete domain -> j, each object at its identity
    t          j -> codomain, projecting u onto its target
    obj_pairs  object id -> (a, u)
    mor_parts  morphism id -> (a, u, v), the arrow (a, u) -> (a, v.u)
    """

    j: FinCat
    s: FinFunctor
    t: FinFunctor
    obj_pairs: dict[str, tuple[str, str]]
    mor_parts: dict[str, tuple[str, str, str]]


def j_object(f: FinFunctor) -> JPresentation:
    """Build (and cache) the coslice presentation of f."""
    cached = _J_CACHE.get(f.key)
    if cached is not None:
        return cached
    A, B = f.dom, f.cod
    obj_pairs: dict[str, tuple[str, str]] = {}
    for a in A.objects:
        for u in B.out(f.obj_map[a]):
            obj_pairs[tag(a, u)] = (a, u)
    mor_parts: dict[str, tuple[str, str, str]] = {}
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    identity: dict[str, str] = {}
    for x, (a, u) in obj_pairs.items():
        b = B.tgt[u]
        for v in B.out(b):
            m = tag(a, u, v)
            mor_parts[m] = (a, u, v)
            src[m] = x
            tgt[m] = tag(a, B.compose[(v, u)])
        identity[x] = tag(a, u, B.identity[b])
    compose: dict[tuple[str, str], str] = {}
    for m1, (a, u, v1) in mor_parts.items():
        mid = B.compose[(v1, u)]
        for v2 in B.out(B.tgt[v1]):
            compose[(tag(a, mid, v2), m1)] = tag(a, u, B.compose[(v2, v1)])
    j = FinCat(tuple(obj_pairs), tuple(mor_parts), src, tgt, identity, compose)
    dA = discrete(A)
    s_obj = {a: tag(a, B.identity[f.obj_map[a]]) for a in A.objects}
    s = FinFunctor(dA, j, s_obj, {A.identity[a]: identity[s_obj[a]] for a in A.objects})
    t = FinFunctor(
        j,
        B,
        {x: B.tgt[u] for x, (a, u) in obj_pairs.items()},
        {m: v for m, (a, u, v) in mor_parts.items()},
    )
    pres = JPresentation(j, s, t, obj_pairs, mor_parts)
    _verify_j(pres, f)
    _J_CACHE[f.key] = pres
    return pres


def _verify_j(pres: JPresentation, f: FinFunctor) -> None:
    if not validate_generated_category(pres.j).ok:
        raise InternalInvariantError("coslice category tables are inconsistent")
    if not validate_functor(pres.s).ok or not validate_functor(pres.t).ok:
        raise InternalInvariantError("coslice structure legs are not functors")
    if not is_initial(pres.s):
        raise InternalInvariantError("identity placement leg is not initial")
    if not is_discrete_opfibration(pres.t):
        raise InternalInvariantError("coslice projection is not a discrete opfibration")
    left = compose_functors(pres.t, pres.s)
    right = compose_functors(f, counit_inclusion(f.dom))
    if not same_functor(left, right):
        raise InternalInvariantError("coslice legs do not factor the functor")


def _raw_j_square(
    dom: JPresentation,
    cod: JPresentation,
    top_obj: dict[str, str],
    bottom_mor: dict[str, str],
) -> FinFunctor:
    """The induced map on coslices, from a top object map and a bottom
    morphism map; well-definedness is the caller's concern."""
    obj_map = {
        x: tag(top_obj[a], bottom_mor[u]) for x, (a, u) in dom.obj_pairs.items()
    }
    mor_map = {
        m: tag(top_obj[a], bottom_mor[u], bottom_mor[v])
        for m, (a, u, v) in dom.mor_parts.items()
    }
    return FinFunctor(dom.j, cod.j, obj_map, mor_map)


def j_square(sq: CommutingSquare) -> FinFunctor:
    """Apply the coslice construction to a commuting square of functors."""
    jf, jg = j_object(sq.left), j_object(sq.right)
    out = _raw_j_square(jf, jg, sq.top.obj_map, sq.bottom.mor_map)
    if not validate_functor(out).ok:
        raise InternalInvariantError("coslice image of a square is not a functor")
    if not same_functor(
        compose_functors(jg.t, out), compose_functors(sq.bottom, jf.t)
    ):
        raise InternalInvariantError("coslice square does not commute over the base")
    if not same_functor(
        compose_functors(out, jf.s),
        compose_functors(jg.s, discrete_restriction(sq.top)),
    ):
        raise InternalInvariantError("coslice square does not respect identity placement")
    return out


def nu(f: FinFunctor) -> FinFunctor:
    """Collapse stacked extensions: the multiplication J(t of f) -> Jf."""
    base = j_object(f)
    upper = j_object(base.t)
    B = f.cod
    obj_map: dict[str, str] = {}
    for x2, (x, u2) in upper.obj_pairs.items():
        a, u1 = base.obj_pairs[x]
        obj_map[x2] = tag(a, B.compose[(u2, u1)])
    mor_map: dict[str, str] = {}
    for m2, (x, u2, v) in upper.mor_parts.items():
        a, u1 = base.obj_pairs[x]
        mor_map[m2] = tag(a, B.compose[(u2, u1)], v)
    out = FinFunctor(upper.j, base.j, obj_map, mor_map)
    if not validate_functor(out).ok:
        raise InternalInvariantError("multiplication is not a functor")
    if not same_functor(compose_functors(base.t, out), upper.t):
        raise InternalInvariantError("multiplication does not live over the base")
    return out


def validate_semimonad(
    f: FinFunctor,
    *,
    squares: tuple[CommutingSquare, ...] = (),
    nu_f: FinFunctor | None = None,
) -> ValidationReport:
    """Check the semi-monad laws at f, optionally against a supplied
    multiplication and naturality squares into other functors.

    Checks are layered: a multiplication that is not even a functor over
    the base short-circuits the unit and associativity comparisons.
    """
    v: list[tuple] = []
    base = j_object(f)
    upper = j_object(base.t)
    n = nu(f) if nu_f is None else nu_f
    if not same_cat(n.dom, upper.j) or not same_cat(n.cod, base.j):
        raise InputError("multiplication boundary does not match the coslice tower")

    if not validate_functor(n).ok:
        v.append(("nu-functor",))
    elif not same_functor(compose_functors(base.t, n), upper.t):
        v.append(("nu-over-base",))
    else:
        unit = compose_functors(n, upper.s)
        if not same_functor(unit, counit_inclusion(base.j)):
            v.append(("nu-unit",))
        top = j_object(upper.t)
        ident_b = {m: m for m in f.cod.morphisms}
        lhs = compose_functors(n, nu(base.t))
        rhs = compose_functors(n, _raw_j_square(top, upper, n.obj_map, ident_b))
        if not same_functor(lhs, rhs):
            v.append(("nu-associativity",))

    for i, sq in enumerate(squares):
        if not same_functor(sq.left, f):
            raise InputError("naturality square does not start at the functor under test")
        inner = j_square(sq)
        outer = j_square(
            CommutingSquare(base.t, j_object(sq.right).t, inner, sq.bottom)
        )
        if not same_functor(
            compose_functors(inner, n if validate_functor(n).ok else nu(f)),
            compose_functors(nu(sq.right), outer),
        ):
            v.append(("nu-naturality", i))
    return ValidationReport.from_violations(v)


@dataclass(frozen=True)
class JrAlgebra:
    """A functor with a structure map off its coslice category."""

    functor: FinFunctor
    structure: FinFunctor

    def __post_init__(self):
        pres = j_object(self.functor)
        if not same_cat(self.structure.dom, pres.j):
            raise InputError("structure map does not start at the coslice category")
        if not same_cat(self.structure.cod, self.functor.dom):
            raise InputError("structure map does not land in the functor domain")


def validate_jr_algebra(alg: JrAlgebra) -> ValidationReport:
    """Check the algebra laws: strictness over the base, unit, and
    compatibility with the multiplication."""
    v: list[tuple] = []
    f, p = alg.functor, alg.structure
    pres = j_object(f)
    if not validate_functor(p).ok:
        return ValidationReport.from_violations([("structure-functor",)])
    if not same_functor(compose_functors(f, p), pres.t):
        return ValidationReport.from_violations([("strictness",)])
    if not same_functor(compose_functors(p, pres.s), counit_inclusion(f.dom)):
        v.append(("unit",))
    upper = j_object(pres.t)
    ident_b = {m: m for m in f.cod.morphisms}
    lhs = compose_functors(p, _raw_j_square(upper, pres, p.obj_map, ident_b))
    rhs = compose_functors(p, nu(f))
    if not same_functor(lhs, rhs):
        v.append(("multiplication",))
    return ValidationReport.from_violations(v)


def validate_jr_morphism(sq: CommutingSquare, alg1: JrAlgebra, alg2: JrAlgebra) -> ValidationReport:
    """Check that a square of functors commutes with the structure maps."""
    if not same_functor(sq.left, alg1.functor) or not same_functor(sq.right, alg2.functor):
        raise InputError("square legs do not match the algebra functors")
    lhs = compose_functors(alg2.structure, j_square(sq))
    rhs = compose_functors(sq.top, alg1.structure)
    ok = same_functor(lhs, rhs)
    return ValidationReport.from_violations([] if ok else [("structure-compat",)])


def jr_from_lens(l: DeltaLens) -> JrAlgebra:
    """Read a structure map off a lens: objects go to lift targets,
    extension steps to the lift chosen at the previous target."""
    if not validate_lens(l).ok:
        raise ContractError("lifting table fails the lens laws")
    f = l.functor
    pres = j_object(f)
    obj_map = {x: l.target(a, u) for x, (a, u) in pres.obj_pairs.items()}
    mor_map = {
        m: l.lift(l.target(a, u), v) for m, (a, u, v) in pres.mor_parts.items()
    }
    alg = JrAlgebra(f, FinFunctor(pres.j, f.dom, obj_map, mor_map))
    if not validate_jr_algebra(alg).ok:
        raise InternalInvariantError("lens-induced structure map fails the algebra laws")
    return alg


def lens_from_jr(alg: JrAlgebra) -> DeltaLens:
    """Read a lifting table off an algebra: the lift of (a, u) is the
    structure map's image of the extension of (a, identity) by u."""
    if not validate_jr_algebra(alg).ok:
        raise ContractError("structure map fails the algebra laws")
    f, p = alg.functor, alg.structure
    B = f.cod
    entries = {
        (a, u): p.mor_map[tag(a, B.identity[f.obj_map[a]], u)]
        for a, u in lens_pairs(f)
    }
    l = DeltaLens(f, LiftingTable(entries))
    if not validate_lens(l).ok:
        raise InternalInvariantError("algebra-induced lifting table fails the lens laws")
    return l
