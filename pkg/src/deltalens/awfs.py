"""The algebraic factorisation of a functor and its (co)monad structure.

Every functor f: A -> B factors as a bijective-on-objects functor Lf
into a category Ef of formal extensions, followed by a projection Rf
back onto B.  Ef glues the domain A onto the coslice category Jf along
the placement of objects at identities, and has a three-way normal
form for morphisms:

  identities          one per pair (a, u)
  postcompositions    (a, u) -> (a, v.u) for non-identity v
  crossings           (a1, u1) -> (a2, u2) through a non-identity
                      domain morphism w, entered along a retraction v
                      of u1 and exited along u2

`copair` mediates out of the glueing, `mu` collapses one level of the
tower, and `comonad_data` splits one open.  Algebras for the monad R
are again exactly delta lenses; coalgebras for the comonad L are the
functors that lift squares into lenses, realised by
`lift_against_coalgebra`.
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
    identity_functor,
    is_bijective_on_objects,
    same_cat,
    same_functor,
    tag,
    validate_functor,
)
from .factorization import CommutingSquare, is_initial, orthogonal_lift
from .lens import (
    DeltaLens,
    LiftingTable,
    lambda_presentation,
    validate_lens,
)
from .semimonad import (
    JPresentation,
    JrAlgebra,
    _composable_pairs,
    _raw_j_square,
    j_object,
    j_square,
    jr_from_lens,
    lens_from_jr,
    validate_generated_category,
    validate_jr_algebra,
    _ASSOC_BUDGET,
)

_E_CACHE: dict[tuple, "EfPresentation"] = {}
_MU_CACHE: dict[tuple, FinFunctor] = {}
_COMONAD_CACHE: dict[tuple, "ComonadData"] = {}
_COASSOC_OK: set[tuple] = set()


# -- morphism normal forms ---------------------------------------------------


@dataclass(frozen=True)
class EfId:
    """The identity at (a, u)."""

    a: str
    u: str


@dataclass(frozen=True)
class EfKindII:
    """Postcomposition (a, u1) -> (a, v.u1) by a non-identity v."""

    a: str
    u1: str
    v: str


@dataclass(frozen=True)
class EfKindI:
    """Crossing (a1, u1) -> (a2, u2): enter along a retraction v of u1,
    cross through the non-identity w: a1 -> a2, exit along u2."""

    u1: str
    v: str
    w: str
    u2: str


EfMorphism = EfId | EfKindII | EfKindI


def ef_mor_id(f: FinFunctor, m: EfMorphism) -> str:
    B = f.cod
    if isinstance(m, EfId):
        return tag(m.a, m.u, B.identity[B.tgt[m.u]])
    if isinstance(m, EfKindII):
        return tag(m.a, m.u1, m.v)
    return tag("I", m.u1, m.v, m.w, m.u2)


def ef_src(f: FinFunctor, m: EfMorphism) -> str:
    if isinstance(m, EfId):
        return tag(m.a, m.u)
    if isinstance(m, EfKindII):
        return tag(m.a, m.u1)
    return tag(f.dom.src[m.w], m.u1)


def ef_tgt(f: FinFunctor, m: EfMorphism) -> str:
    B = f.cod
    if isinstance(m, EfId):
        return tag(m.a, m.u)
    if isinstance(m, EfKindII):
        return tag(m.a, B.compose[(m.v, m.u1)])
    return tag(f.dom.tgt[m.w], m.u2)


def ef_base_image(f: FinFunctor, m: EfMorphism) -> str:
    """The morphism of the codomain that Rf assigns to m."""
    B = f.cod
    if isinstance(m, EfId):
        return B.identity[B.tgt[m.u]]
    if isinstance(m, EfKindII):
        return m.v
    return B.compose[(m.u2, B.compose[(f.mor_map[m.w], m.v)])]


def _kind2(f: FinFunctor, a: str, u1: str, v: str) -> EfMorphism:
    if f.cod.is_identity(v):
        return EfId(a, u1)
    return EfKindII(a, u1, v)


def _kind1(f: FinFunctor, u1: str, v: str, w: str, u2: str) -> EfMorphism:
    if f.dom.is_identity(w):
        return _kind2(f, f.dom.src[w], u1, f.cod.compose[(u2, v)])
    return EfKindI(u1, v, w, u2)


def compose_ef(f: FinFunctor, m2: EfMorphism, m1: EfMorphism) -> EfMorphism:
    """Normal form of m2 after m1.

    Crossing composites cancel the middle retraction automatically and
    renormalise when the crossing collapses to an identity of the
    domain.
    """
    if isinstance(m1, EfId):
        return m2
    if isinstance(m2, EfId):
        return m1
    B = f.cod
    if isinstance(m1, EfKindII) and isinstance(m2, EfKindII):
        return _kind2(f, m1.a, m1.u1, B.compose[(m2.v, m1.v)])
    if isinstance(m1, EfKindII) and isinstance(m2, EfKindI):
        return _kind1(f, m1.u1, B.compose[(m2.v, m1.v)], m2.w, m2.u2)
    if isinstance(m1, EfKindI) and isinstance(m2, EfKindII):
        return _kind1(f, m1.u1, m1.v, m1.w, B.compose[(m2.v, m1.u2)])
    return _kind1(f, m1.u1, m1.v, f.dom.compose[(m2.w, m1.w)], m2.u2)


# -- the factorisation -------------------------------------------------------


@dataclass(frozen=True)
class EfPresentation:
    """The glued category of a functor with all its structure legs.

    functor    the functor being factored
    j          its coslice presentation
    e          the glued category
    lf         domain -> e, bijective on objects
    rf         e -> codomain, with f = rf . lf
    alpha      coslice -> e, an inclusion on identifiers
    kinds      morphism id -> normal form
    obj_pairs  object id -> (a, u), shared with the coslice
    """

    functor: FinFunctor
    j: JPresentation
    e: FinCat
    lf: FinFunctor
    rf: FinFunctor
    alpha: FinFunctor
    kinds: dict[str, EfMorphism]
    obj_pairs: dict[str, tuple[str, str]]


def retraction_pairs(f: FinFunctor, a: str) -> list[tuple[str, str]]:
    """All (u1, v) with v a retraction of u1 at the image of a."""
    B = f.cod
    fa = f.obj_map[a]
    one = B.identity[fa]
    return [
        (u1, v)
        for u1 in B.out(fa)
        for v in B.hom(B.tgt[u1], fa)
        if B.compose[(v, u1)] == one
    ]


def e_object(f: FinFunctor) -> EfPresentation:
    """Build (and cache) the glued factorisation of f."""
    cached = _E_CACHE.get(f.key)
    if cached is not None:
        return cached
    A, B = f.dom, f.cod
    jp = j_object(f)
    kinds: dict[str, EfMorphism] = {}
    for m, (a, u, v) in jp.mor_parts.items():
        kinds[m] = EfId(a, u) if B.is_identity(v) else EfKindII(a, u, v)
    retr = {a: retraction_pairs(f, a) for a in A.objects}
    for w in A.nonidentity:
        a2 = A.tgt[w]
        for (u1, v) in retr[A.src[w]]:
            for u2 in B.out(f.obj_map[a2]):
                m = EfKindI(u1, v, w, u2)
                mid = ef_mor_id(f, m)
                if mid in kinds:
                    raise InternalInvariantError("crossing identifier collision")
                kinds[mid] = m

    src = {m: ef_src(f, k) for m, k in kinds.items()}
    tgt = {m: ef_tgt(f, k) for m, k in kinds.items()}
    identity = dict(jp.j.identity)
    rf_map = {m: ef_base_image(f, k) for m, k in kinds.items()}

    out_of: dict[str, list[str]] = {x: [] for x in jp.j.objects}
    for m in kinds:
        out_of[src[m]].append(m)
    compose: dict[tuple[str, str], str] = {}
    for m1, k1 in kinds.items():
        base1 = rf_map[m1]
        for m2 in out_of[tgt[m1]]:
            rid = ef_mor_id(f, compose_ef(f, kinds[m2], k1))
            compose[(m2, m1)] = rid
            if rf_map.get(rid) != B.compose[(rf_map[m2], base1)]:
                raise InternalInvariantError("composition does not project onto the base")

    e = FinCat(jp.j.objects, tuple(kinds), src, tgt, identity, compose)
    lf = FinFunctor(
        A,
        e,
        {a: tag(a, B.identity[f.obj_map[a]]) for a in A.objects},
        {
            m: identity[tag(A.src[m], B.identity[f.obj_map[A.src[m]]])]
            if A.is_identity(m)
            else ef_mor_id(
                f,
                EfKindI(
                    B.identity[f.obj_map[A.src[m]]],
                    B.identity[f.obj_map[A.src[m]]],
                    m,
                    B.identity[f.obj_map[A.tgt[m]]],
                ),
            )
            for m in A.morphisms
        },
    )
    rf = FinFunctor(e, B, {x: B.tgt[u] for x, (a, u) in jp.obj_pairs.items()}, rf_map)
    alpha = FinFunctor(jp.j, e, {x: x for x in jp.j.objects}, {m: m for m in jp.j.morphisms})
    pres = EfPresentation(f, jp, e, lf, rf, alpha, kinds, jp.obj_pairs)
    _verify_e(pres)
    _E_CACHE[f.key] = pres
    return pres


def _verify_e(pres: EfPresentation) -> None:
    f = pres.functor
    if not validate_generated_category(pres.e).ok:
        raise InternalInvariantError("glued category tables are inconsistent")
    if not validate_functor(pres.lf).ok:
        raise InternalInvariantError("domain inclusion is not a functor")
    if not validate_functor(pres.alpha).ok:
        raise InternalInvariantError("coslice inclusion is not a functor")
    for x in pres.e.objects:
        if pres.rf.obj_map[x] not in f.cod.objects:
            raise InternalInvariantError("projection leaves the base")
    if not same_functor(compose_functors(pres.rf, pres.lf), f):
        raise InternalInvariantError("factorisation legs do not compose to the functor")
    if not same_functor(compose_functors(pres.rf, pres.alpha), pres.j.t):
        raise InternalInvariantError("projection does not extend the coslice projection")
    if not same_functor(
        compose_functors(pres.alpha, pres.j.s),
        compose_functors(pres.lf, counit_inclusion(f.dom)),
    ):
        raise InternalInvariantError("glueing legs disagree on placed objects")
    if not is_bijective_on_objects(pres.alpha):
        raise InternalInvariantError("coslice inclusion is not bijective on objects")
    if len(set(pres.alpha.mor_map.values())) != len(pres.alpha.mor_map):
        raise InternalInvariantError("coslice inclusion is not faithful")
    if not is_initial(pres.lf):
        raise InternalInvariantError("domain inclusion is not initial")


def e_square(sq: CommutingSquare) -> FinFunctor:
    """Apply the factorisation to a commuting square of functors."""
    ef, eg = e_object(sq.left), e_object(sq.right)
    g = sq.right
    h_obj, h_mor = sq.top.obj_map, sq.top.mor_map
    k_mor = sq.bottom.mor_map
    obj_map = {x: tag(h_obj[a], k_mor[u]) for x, (a, u) in ef.obj_pairs.items()}
    mor_map: dict[str, str] = {}
    for m, kind in ef.kinds.items():
        if isinstance(kind, EfKindI):
            img = _kind1(g, k_mor[kind.u1], k_mor[kind.v], h_mor[kind.w], k_mor[kind.u2])
        elif isinstance(kind, EfKindII):
            img = _kind2(g, h_obj[kind.a], k_mor[kind.u1], k_mor[kind.v])
        else:
            img = EfId(h_obj[kind.a], k_mor[kind.u])
        mor_map[m] = ef_mor_id(g, img)
    out = FinFunctor(ef.e, eg.e, obj_map, mor_map)
    _verify_functor_budgeted(out, "factorisation image of a square")
    if not same_functor(compose_functors(out, ef.lf), compose_functors(eg.lf, sq.top)):
        raise InternalInvariantError("square image does not respect domain inclusions")
    if not same_functor(compose_functors(out, ef.alpha), compose_functors(eg.alpha, j_square(sq))):
        raise InternalInvariantError("square image does not respect coslice inclusions")
    if not same_functor(compose_functors(eg.rf, out), compose_functors(sq.bottom, ef.rf)):
        raise InternalInvariantError("square image does not commute over the base")
    return out


def _verify_functor_budgeted(fun: FinFunctor, what: str) -> None:
    """Full functor validation, skipping the composition sweep on very
    large domains where the equality laws carry the weight instead."""
    if _composable_pairs(fun.dom) <= _ASSOC_BUDGET:
        if not validate_functor(fun).ok:
            raise InternalInvariantError(f"{what} is not a functor")
        return
    dom, cod = fun.dom, fun.cod
    for m in dom.morphisms:
        fm = fun.mor_map[m]
        if cod.src[fm] != fun.obj_map[dom.src[m]] or cod.tgt[fm] != fun.obj_map[dom.tgt[m]]:
            raise InternalInvariantError(f"{what} is not a functor")
    for x in dom.objects:
        if fun.mor_map[dom.identity[x]] != cod.identity[fun.obj_map[x]]:
            raise InternalInvariantError(f"{what} is not a functor")


def copair(pres: EfPresentation, on_a: FinFunctor, on_j: FinFunctor) -> FinFunctor:
    """Mediate out of the glueing: the unique functor agreeing with
    on_a through the domain inclusion and with on_j through the coslice
    inclusion.  Requires the two to agree on placed objects."""
    f = pres.functor
    A, B = f.dom, f.cod
    if not same_cat(on_a.dom, A) or not same_cat(on_j.dom, pres.j.j):
        raise InputError("copair legs do not start at the glueing feet")
    if not same_cat(on_a.cod, on_j.cod):
        raise InputError("copair legs do not share a codomain")
    if not same_functor(
        compose_functors(on_j, pres.j.s),
        compose_functors(on_a, counit_inclusion(A)),
    ):
        raise ContractError("copair legs disagree on placed objects")
    X = on_a.cod
    obj_map = dict(on_j.obj_map)
    mor_map: dict[str, str] = {}
    for m, kind in pres.kinds.items():
        if isinstance(kind, EfKindI):
            a1, a2 = A.src[kind.w], A.tgt[kind.w]
            enter = on_j.mor_map[tag(a1, kind.u1, kind.v)]
            exit_ = on_j.mor_map[tag(a2, B.identity[f.obj_map[a2]], kind.u2)]
            mor_map[m] = X.compose[(X.compose[(exit_, on_a.mor_map[kind.w])], enter)]
        else:
            mor_map[m] = on_j.mor_map[m]
    out = FinFunctor(pres.e, X, obj_map, mor_map)
    _verify_functor_budgeted(out, "copairing")
    if not same_functor(compose_functors(out, pres.alpha), on_j):
        raise InternalInvariantError("copairing does not restrict to the coslice leg")
    if not same_functor(compose_functors(out, pres.lf), on_a):
        raise InternalInvariantError("copairing does not restrict to the domain leg")
    return out


# -- the monad ----------------------------------------------------------------


def mu(f: FinFunctor) -> FinFunctor:
    """Collapse one tower level: E(rf of f) -> Ef."""
    cached = _MU_CACHE.get(f.key)
    if cached is not None:
        return cached
    ef = e_object(f)
    upper = e_object(ef.rf)
    B = f.cod
    obj_map: dict[str, str] = {}
    for x2, (x, u2) in upper.j.obj_pairs.items():
        a, u = ef.obj_pairs[x]
        obj_map[x2] = tag(a, B.compose[(u2, u)])
    mor_map: dict[str, str] = {}
    for m2, (x, u2, v) in upper.j.mor_parts.items():
        a, u = ef.obj_pairs[x]
        mor_map[m2] = tag(a, B.compose[(u2, u)], v)
    on_j = FinFunctor(upper.j.j, ef.e, obj_map, mor_map)
    out = copair(upper, identity_functor(ef.e), on_j)
    if not same_functor(compose_functors(ef.rf, out), upper.rf):
        raise InternalInvariantError("collapse does not live over the base")
    _MU_CACHE[f.key] = out
    return out


def validate_monad(
    f: FinFunctor,
    *,
    squares: tuple[CommutingSquare, ...] = (),
    mu_f: FinFunctor | None = None,
) -> ValidationReport:
    """Check the monad laws at f, optionally against a supplied
    multiplication and naturality squares into other functors."""
    v: list[tuple] = []
    ef = e_object(f)
    upper = e_object(ef.rf)
    m = mu(f) if mu_f is None else mu_f
    if not same_cat(m.dom, upper.e) or not same_cat(m.cod, ef.e):
        raise InputError("multiplication boundary does not match the tower")

    ok_so_far = True
    if not validate_functor(m).ok:
        v.append(("mu-functor",))
        ok_so_far = False
    elif not same_functor(compose_functors(ef.rf, m), upper.rf):
        v.append(("rf-after-mu",))
        ok_so_far = False

    if ok_so_far:
        if not same_functor(compose_functors(m, upper.lf), identity_functor(ef.e)):
            v.append(("mu-unit-left",))
        eta = CommutingSquare(f, ef.rf, ef.lf, identity_functor(f.cod))
        if not same_functor(compose_functors(m, e_square(eta)), identity_functor(ef.e)):
            v.append(("mu-unit-right",))
        collapse_sq = CommutingSquare(upper.rf, ef.rf, m, identity_functor(f.cod))
        lhs = compose_functors(m, e_square(collapse_sq))
        rhs = compose_functors(m, mu(ef.rf))
        if not same_functor(lhs, rhs):
            v.append(("mu-associativity",))

    canonical = m if ok_so_far else mu(f)
    for i, sq in enumerate(squares):
        if not same_functor(sq.left, f):
            raise InputError("naturality square does not start at the functor under test")
        eg = e_object(sq.right)
        inner = e_square(sq)
        outer = e_square(CommutingSquare(ef.rf, eg.rf, inner, sq.bottom))
        if not same_functor(
            compose_functors(inner, canonical), compose_functors(mu(sq.right), outer)
        ):
            v.append(("mu-naturality", i))
    return ValidationReport.from_violations(v)


# -- algebras -----------------------------------------------------------------


@dataclass(frozen=True)
class RAlgebra:
    """A functor with a structure map collapsing its glued category."""

    functor: FinFunctor
    structure: FinFunctor

    def __post_init__(self):
        pres = e_object(self.functor)
        if not same_cat(self.structure.dom, pres.e):
            raise InputError("structure map does not start at the glued category")
        if not same_cat(self.structure.cod, self.functor.dom):
            raise InputError("structure map does not land in the functor domain")


def validate_r_algebra(alg: RAlgebra) -> ValidationReport:
    v: list[tuple] = []
    f, p = alg.functor, alg.structure
    ef = e_object(f)
    if not validate_functor(p).ok:
        return ValidationReport.from_violations([("structure-functor",)])
    if not same_functor(compose_functors(f, p), ef.rf):
        return ValidationReport.from_violations([("strictness",)])
    if not same_functor(compose_functors(p, ef.lf), identity_functor(f.dom)):
        v.append(("unit",))
    collapse_sq = CommutingSquare(ef.rf, f, p, identity_functor(f.cod))
    lhs = compose_functors(p, e_square(collapse_sq))
    rhs = compose_functors(p, mu(f))
    if not same_functor(lhs, rhs):
        v.append(("multiplication",))
    return ValidationReport.from_violations(v)


def validate_r_morphism(sq: CommutingSquare, alg1: RAlgebra, alg2: RAlgebra) -> ValidationReport:
    if not same_functor(sq.left, alg1.functor) or not same_functor(sq.right, alg2.functor):
        raise InputError("square legs do not match the algebra functors")
    lhs = compose_functors(alg2.structure, e_square(sq))
    rhs = compose_functors(sq.top, alg1.structure)
    ok = same_functor(lhs, rhs)
    return ValidationReport.from_violations([] if ok else [("structure-compat",)])


def r_algebra_from_jr(alg: JrAlgebra) -> RAlgebra:
    """Extend a coslice structure map over the glueing by copairing
    with the identity on the functor domain."""
    if not validate_jr_algebra(alg).ok:
        raise ContractError("structure map fails the coslice algebra laws")
    ef = e_object(alg.functor)
    out = RAlgebra(alg.functor, copair(ef, identity_functor(alg.functor.dom), alg.structure))
    if not validate_r_algebra(out).ok:
        raise InternalInvariantError("extended structure map fails the algebra laws")
    return out


def jr_from_r_algebra(alg: RAlgebra) -> JrAlgebra:
    """Restrict a glued structure map back along the coslice inclusion."""
    if not validate_r_algebra(alg).ok:
        raise ContractError("structure map fails the algebra laws")
    ef = e_object(alg.functor)
    out = JrAlgebra(alg.functor, compose_functors(alg.structure, ef.alpha))
    if not validate_jr_algebra(out).ok:
        raise InternalInvariantError("restricted structure map fails the coslice algebra laws")
    return out


def lens_to_r_algebra(l: DeltaLens) -> RAlgebra:
    return r_algebra_from_jr(jr_from_lens(l))


def r_algebra_to_lens(alg: RAlgebra) -> DeltaLens:
    return lens_from_jr(jr_from_r_algebra(alg))


def free_lens(f: FinFunctor) -> DeltaLens:
    """The lens structure carried by the projection of the glued
    category: extensions lift to postcompositions."""
    ef = e_object(f)
    entries = {
        (x, u2): ef_mor_id(f, _kind2(f, a, u, u2))
        for x, (a, u) in ef.obj_pairs.items()
        for u2 in f.cod.out(f.cod.tgt[u])
    }
    l = DeltaLens(ef.rf, LiftingTable(entries))
    if not validate_lens(l).ok:
        raise InternalInvariantError("projection lifting table fails the lens laws")
    return l


# -- the comonad --------------------------------------------------------------


@dataclass(frozen=True)
class ComonadData:
    """One tower level split open.

    delta             coslice of f -> coslice of (lf of f)
    comultiplication  Ef -> E(lf of f)
    """

    delta: FinFunctor
    comultiplication: FinFunctor


def _comonad_raw(f: FinFunctor) -> ComonadData:
    cached = _COMONAD_CACHE.get(f.key)
    if cached is not None:
        return cached
    ef = e_object(f)
    el = e_object(ef.lf)
    delta = orthogonal_lift(
        CommutingSquare(ef.j.s, el.j.t, el.j.s, ef.alpha)
    )
    comult = copair(ef, el.lf, compose_functors(el.alpha, delta))
    if not same_functor(compose_functors(el.rf, comult), identity_functor(ef.e)):
        raise InternalInvariantError("split does not retract onto the glued category")
    if not same_functor(compose_functors(comult, ef.lf), el.lf):
        raise InternalInvariantError("split does not extend the domain inclusion")
    data = ComonadData(delta, comult)
    _COMONAD_CACHE[f.key] = data
    return data


def comonad_data(f: FinFunctor) -> ComonadData:
    """The comonad structure at f, coassociativity verified once."""
    data = _comonad_raw(f)
    if f.key not in _COASSOC_OK:
        ef = e_object(f)
        el = e_object(ef.lf)
        inner = _comonad_raw(ef.lf)
        split_sq = CommutingSquare(ef.lf, el.lf, identity_functor(f.dom), data.comultiplication)
        lhs = compose_functors(inner.comultiplication, data.comultiplication)
        rhs = compose_functors(e_square(split_sq), data.comultiplication)
        if not same_functor(lhs, rhs):
            raise InternalInvariantError("split fails coassociativity")
        _COASSOC_OK.add(f.key)
    return data


def validate_comonad(
    f: FinFunctor,
    *,
    squares: tuple[CommutingSquare, ...] = (),
    comultiplication: FinFunctor | None = None,
) -> ValidationReport:
    """Check the comonad laws at f, optionally against a supplied
    comultiplication and naturality squares out of other functors."""
    v: list[tuple] = []
    ef = e_object(f)
    el = e_object(ef.lf)
    c = _comonad_raw(f).comultiplication if comultiplication is None else comultiplication
    if not same_cat(c.dom, ef.e) or not same_cat(c.cod, el.e):
        raise InputError("comultiplication boundary does not match the tower")

    ok_so_far = True
    if not validate_functor(c).ok:
        v.append(("comultiplication-functor",))
        ok_so_far = False
    elif not same_functor(compose_functors(c, ef.lf), el.lf):
        v.append(("delta-square",))
        ok_so_far = False

    if ok_so_far:
        if not same_functor(compose_functors(el.rf, c), identity_functor(ef.e)):
            v.append(("counit-left",))
        counit = CommutingSquare(ef.lf, f, identity_functor(f.dom), ef.rf)
        if not same_functor(compose_functors(e_square(counit), c), identity_functor(ef.e)):
            v.append(("counit-right",))
        split_sq = CommutingSquare(ef.lf, el.lf, identity_functor(f.dom), c)
        lhs = compose_functors(_comonad_raw(ef.lf).comultiplication, c)
        rhs = compose_functors(e_square(split_sq), c)
        if not same_functor(lhs, rhs):
            v.append(("coassociativity",))

    canonical = c if ok_so_far else _comonad_raw(f).comultiplication
    for i, sq in enumerate(squares):
        if not same_functor(sq.left, f):
            raise InputError("naturality square does not start at the functor under test")
        eg = e_object(sq.right)
        inner = e_square(sq)
        lifted = CommutingSquare(ef.lf, eg.lf, sq.top, inner)
        if not same_functor(
            compose_functors(_comonad_raw(sq.right).comultiplication, inner),
            compose_functors(e_square(lifted), canonical),
        ):
            v.append(("delta-naturality", i))
    return ValidationReport.from_violations(v)


def validate_distributive_law(
    f: FinFunctor,
    *,
    mu_f: FinFunctor | None = None,
    comultiplication: FinFunctor | None = None,
) -> ValidationReport:
    """Check that the split of a collapse agrees with the collapse of a
    split, the one exchange law not already forced by the (co)monads."""
    v: list[tuple] = []
    ef = e_object(f)
    m = mu(f) if mu_f is None else mu_f
    c = _comonad_raw(f).comultiplication if comultiplication is None else comultiplication
    erf = e_object(ef.rf)
    elf = e_object(ef.lf)
    if not same_functor(compose_functors(elf.rf, c), compose_functors(m, erf.lf)):
        v.append(("square",))
        return ValidationReport.from_violations(v)
    exchange = CommutingSquare(erf.lf, elf.rf, c, m)
    lhs = compose_functors(c, m)
    rhs = compose_functors(
        mu(ef.lf),
        compose_functors(e_square(exchange), _comonad_raw(ef.rf).comultiplication),
    )
    if not same_functor(lhs, rhs):
        v.append(("coherence",))
    return ValidationReport.from_violations(v)


# -- coalgebras and lifting ---------------------------------------------------


@dataclass(frozen=True)
class LCoalgebra:
    """A functor with a structure map splitting its codomain into the
    glued category."""

    functor: FinFunctor
    structure: FinFunctor

    def __post_init__(self):
        pres = e_object(self.functor)
        if not same_cat(self.structure.dom, self.functor.cod):
            raise InputError("structure map does not start at the functor codomain")
        if not same_cat(self.structure.cod, pres.e):
            raise InputError("structure map does not land in the glued category")


def validate_l_coalgebra(coalg: LCoalgebra) -> ValidationReport:
    v: list[tuple] = []
    f, q = coalg.functor, coalg.structure
    ef = e_object(f)
    if not validate_functor(q).ok:
        return ValidationReport.from_violations([("structure-functor",)])
    if not same_functor(compose_functors(ef.rf, q), identity_functor(f.cod)):
        v.append(("section",))
    if not same_functor(compose_functors(q, f), ef.lf):
        v.append(("unit-square",))
        return ValidationReport.from_violations(v)
    coaction = CommutingSquare(f, ef.lf, identity_functor(f.dom), q)
    lhs = compose_functors(_comonad_raw(f).comultiplication, q)
    rhs = compose_functors(e_square(coaction), q)
    if not same_functor(lhs, rhs):
        v.append(("comultiplication",))
    return ValidationReport.from_violations(v)


def cofree_coalgebra(f: FinFunctor) -> LCoalgebra:
    """The canonical coalgebra on the domain inclusion of f."""
    ef = e_object(f)
    out = LCoalgebra(ef.lf, comonad_data(f).comultiplication)
    if not validate_l_coalgebra(out).ok:
        raise InternalInvariantError("split fails the coalgebra laws")
    return out


def lift_against_coalgebra(
    sq: CommutingSquare, coalg: LCoalgebra, lens: DeltaLens
) -> FinFunctor:
    """Solve the square: a diagonal d with d.f = top and g.d = bottom,
    built from the coalgebra split on the left and the chosen lifts of
    the lens on the right."""
    f, g = sq.left, sq.right
    if not same_functor(f, coalg.functor):
        raise InputError("square left leg does not match the coalgebra functor")
    if not same_functor(g, lens.functor):
        raise InputError("square right leg does not match the lens functor")
    if not validate_l_coalgebra(coalg).ok:
        raise ContractError("structure map fails the coalgebra laws")
    if not validate_lens(lens).ok:
        raise ContractError("lifting table fails the lens laws")
    ef = e_object(f)
    pres = lambda_presentation(lens)
    dA = discrete(f.dom)
    top = FinFunctor(
        dA,
        pres.lam,
        {a: sq.top.obj_map[a] for a in dA.objects},
        {dA.identity[a]: pres.lam.identity[sq.top.obj_map[a]] for a in dA.objects},
    )
    ell = orthogonal_lift(
        CommutingSquare(ef.j.s, pres.over, top, compose_functors(sq.bottom, ef.j.t))
    )
    mediator = copair(ef, sq.top, compose_functors(pres.phi, ell))
    d = compose_functors(mediator, coalg.structure)
    if not same_functor(compose_functors(d, f), sq.top):
        raise InternalInvariantError("diagonal does not restrict to the top leg")
    if not same_functor(compose_functors(g, d), sq.bottom):
        raise InternalInvariantError("diagonal does not project onto the bottom leg")
    return d
