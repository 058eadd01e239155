"""Delta lenses on finite categories.

A delta lens is a functor together with a lifting table: for every
object a of the domain and every morphism u out of f(a), a chosen
morphism phi(a, u) out of a that f maps back onto u.  The three lens
laws say the table projects correctly (L1), picks identities on
identities (L2), and is closed under composition (L3).

`lambda_presentation` repackages a lens as a bijective-on-objects
functor followed by a discrete opfibration, the presentation that the
free-lens tower manipulates.
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
    identity_functor,
    lift_tag,
    same_cat,
    same_functor,
    validate_functor,
)
from .factorization import CommutingSquare, is_discrete_opfibration


@dataclass(frozen=True)
class LiftingTable:
    """Chosen lifts keyed by (object, morphism out of its image)."""

    entries: dict[tuple[str, str], str]

    def lift(self, a: str, u: str) -> str:
        try:
            return self.entries[(a, u)]
        except KeyError:
            raise InputError(f"no lift recorded for ({a}, {u})") from None


@dataclass(frozen=True)
class DeltaLens:
    """A functor with a lifting table satisfying the three lens laws."""

    functor: FinFunctor
    lifts: LiftingTable

    def lift(self, a: str, u: str) -> str:
        return self.lifts.lift(a, u)

    def target(self, a: str, u: str) -> str:
        """The object p(a, u) the chosen lift lands on."""
        return self.functor.dom.tgt[self.lift(a, u)]


def lens_pairs(fun: FinFunctor):
    """All (a, u) the lifting table of a lens on fun must cover, sorted."""
    for a in fun.dom.objects:
        for u in fun.cod.out(fun.obj_map[a]):
            yield a, u


def identity_lens(c: FinCat) -> DeltaLens:
    fun = identity_functor(c)
    return DeltaLens(fun, LiftingTable({(a, u): u for a, u in lens_pairs(fun)}))


def validate_lens(l: DeltaLens) -> ValidationReport:
    """Check table totality, well-typedness, and the laws L1, L2, L3."""
    v: list[tuple] = []
    fun = l.functor
    A, B = fun.dom, fun.cod
    wanted = set(lens_pairs(fun))
    for pair in sorted(set(l.lifts.entries) - wanted):
        v.append(("stray-lift", *pair))
    for (a, u) in sorted(wanted):
        m = l.lifts.entries.get((a, u))
        if m is None:
            v.append(("missing-lift", a, u))
            continue
        if m not in set(A.morphisms):
            v.append(("unknown-lift", a, u, m))
            continue
        if A.src[m] != a:
            v.append(("lift-src", a, u, m))
            continue
        if fun.mor_map[m] != u:
            v.append(("L1", a, u))
    if v:
        return ValidationReport.from_violations(v)
    for a in A.objects:
        fa = fun.obj_map[a]
        if l.lift(a, B.identity[fa]) != A.identity[a]:
            v.append(("L2", a))
    for (a, u) in sorted(wanted):
        p = A.tgt[l.lift(a, u)]
        for w in B.out(B.tgt[u]):
            lhs = l.lift(a, B.compose[(w, u)])
            rhs = A.compose[(l.lift(p, w), l.lift(a, u))]
            if lhs != rhs:
                v.append(("L3", a, u, w))
    return ValidationReport.from_violations(v)


def lens_from_discrete_opfibration(fun: FinFunctor) -> DeltaLens:
    """The unique lens structure on a discrete opfibration."""
    if not is_discrete_opfibration(fun):
        raise ContractError("functor is not a discrete opfibration")
    entries: dict[tuple[str, str], str] = {}
    for a, u in lens_pairs(fun):
        entries[(a, u)] = next(
            w for w in fun.dom.out(a) if fun.mor_map[w] == u
        )
    l = DeltaLens(fun, LiftingTable(entries))
    if not validate_lens(l).ok:
        raise InternalInvariantError("opfibration lifting table fails the lens laws")
    return l


def is_discrete_opfibration_lens(l: DeltaLens) -> bool:
    """True when the table lifts every domain morphism back to itself."""
    fun = l.functor
    return all(
        l.lift(fun.dom.src[w], fun.mor_map[w]) == w for w in fun.dom.morphisms
    )


def validate_lens_morphism(sq: CommutingSquare, l1: DeltaLens, l2: DeltaLens) -> ValidationReport:
    """Check that the square's top leg h sends chosen lifts to chosen lifts.

    The square itself already commutes by construction; what can fail is
    h(phi1(a, u)) = phi2(h a, k u) at some table entry.
    """
    if not same_functor(sq.left, l1.functor) or not same_functor(sq.right, l2.functor):
        raise InputError("square legs do not match the lens functors")
    h, k = sq.top, sq.bottom
    v = [
        ("lift-preservation", a, u)
        for (a, u) in sorted(lens_pairs(l1.functor))
        if h.mor_map[l1.lift(a, u)] != l2.lift(h.obj_map[a], k.mor_map[u])
    ]
    return ValidationReport.from_violations(v)


def compose_lenses(l1: DeltaLens, l2: DeltaLens) -> DeltaLens:
    """Sequential composite: lift through the second table, then the first."""
    f, g = l1.functor, l2.functor
    if not same_cat(f.cod, g.dom):
        raise InputError("lens boundaries do not match")
    fun = compose_functors(g, f)
    entries = {
        (a, u): l1.lift(a, l2.lift(f.obj_map[a], u)) for a, u in lens_pairs(fun)
    }
    out = DeltaLens(fun, LiftingTable(entries))
    if not validate_lens(out).ok:
        raise InternalInvariantError("composite lifting table fails the lens laws")
    return out


@dataclass(frozen=True)
class LambdaPresentation:
    """A lens split into a bijective-on-objects functor `phi` from the
    category of chosen lifts, with `over` = functor after phi a discrete
    opfibration."""

    lam: FinCat
    phi: FinFunctor
    over: FinFunctor


def lambda_presentation(l: DeltaLens) -> LambdaPresentation:
    """The category with one morphism per table entry, projecting back."""
    fun = l.functor
    A, B = fun.dom, fun.cod
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    identity: dict[str, str] = {}
    parts: dict[str, tuple[str, str]] = {}
    for a, u in lens_pairs(fun):
        m = lift_tag(a, u)
        src[m] = a
        tgt[m] = l.target(a, u)
        parts[m] = (a, u)
    for a in A.objects:
        identity[a] = lift_tag(a, B.identity[fun.obj_map[a]])
    compose: dict[tuple[str, str], str] = {}
    for m1, (a, u) in parts.items():
        p = tgt[m1]
        for w in B.out(B.tgt[u]):
            compose[(lift_tag(p, w), m1)] = lift_tag(a, B.compose[(w, u)])
    lam = FinCat(tuple(A.objects), tuple(sorted(parts)), src, tgt, identity, compose)
    phi = FinFunctor(
        lam,
        A,
        {a: a for a in lam.objects},
        {m: l.lift(*parts[m]) for m in lam.morphisms},
    )
    over = FinFunctor(
        lam,
        B,
        {a: fun.obj_map[a] for a in lam.objects},
        {m: parts[m][1] for m in lam.morphisms},
    )
    pres = LambdaPresentation(lam, phi, over)
    _verify_lambda(pres, fun)
    return pres


def _verify_lambda(pres: LambdaPresentation, fun: FinFunctor) -> None:
    if not validate_functor(pres.phi).ok:
        raise InternalInvariantError("lift projection is not a functor")
    if not validate_functor(pres.over).ok:
        raise InternalInvariantError("lift projection over the base is not a functor")
    from .kernel import is_bijective_on_objects

    if not is_bijective_on_objects(pres.phi):
        raise InternalInvariantError("lift projection is not bijective on objects")
    if not same_functor(compose_functors(fun, pres.phi), pres.over):
        raise InternalInvariantError("presentation legs do not commute with the lens functor")
    if not is_discrete_opfibration(pres.over):
        raise InternalInvariantError("presentation is not a discrete opfibration over the base")


def lens_from_lambda(pres: LambdaPresentation, fun: FinFunctor) -> DeltaLens:
    """Rebuild the lifting table from a presentation of fun.

    Preconditions are re-checked and reported as contract errors since
    presentations may arrive from outside.
    """
    from .kernel import is_bijective_on_objects

    if not validate_functor(pres.phi).ok or not validate_functor(pres.over).ok:
        raise ContractError("presentation legs are not functors")
    if not is_bijective_on_objects(pres.phi):
        raise ContractError("presentation is not bijective on objects")
    if not is_discrete_opfibration(pres.over):
        raise ContractError("presentation is not a discrete opfibration over the base")
    if not same_functor(compose_functors(fun, pres.phi), pres.over):
        raise ContractError("presentation does not present this functor")
    inv_obj = {v: k for k, v in pres.phi.obj_map.items()}
    entries: dict[tuple[str, str], str] = {}
    for a, u in lens_pairs(fun):
        x = inv_obj[a]
        lifts = [m for m in pres.lam.out(x) if pres.over.mor_map[m] == u]
        if len(lifts) != 1:
            raise InternalInvariantError("presentation lift is not unique")
        entries[(a, u)] = pres.phi.mor_map[lifts[0]]
    l = DeltaLens(fun, LiftingTable(entries))
    if not validate_lens(l).ok:
        raise InternalInvariantError("rebuilt lifting table fails the lens laws")
    return l
