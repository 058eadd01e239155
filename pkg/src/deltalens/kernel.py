"""Finite categories and functors as explicit identifier tables.

Everything downstream (factorisations, lenses, the free-lens tower)
consumes the two value types defined here.  `FinCat` stores a finite
category as string-identifier tables with a composition table that is
total on composable pairs, and `FinFunctor` is a table-backed map
between two categories.  Equality is identifier equality throughout,
values are immutable after construction, and every enumeration walks
identifiers in sorted order, so all derived data is reproducible bit
for bit.

Validators return `ValidationReport` values instead of raising: a bad
table is data to report on, not an exception.  Exceptions are reserved
for misuse (`InputError`), broken preconditions (`ContractError`),
blown enumeration budgets (`GuardExceededError`) and failed internal
post-checks (`InternalInvariantError`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property


class InputError(ValueError):
    """Malformed or mismatched input (bad file, wrong boundary, unknown id)."""


class ContractError(ValueError):
    """A documented precondition of an operation does not hold."""


class GuardExceededError(RuntimeError):
    """An enumeration would exceed the configured size guard."""


class InternalInvariantError(RuntimeError):
    """A post-construction self-check failed; this signals a kernel bug."""


DEFAULT_GUARD = 10**6

def _escape(part: str) -> str:
    out = part.replace("\\", "\\\\")
    out = out.replace(",", "\\,")
    out = out.replace("(", "\\(")
    out = out.replace(")", "\\)")
    return out.replace("<", "\\<")


def tag(*parts: str) -> str:
    """Build a canonical composite identifier from constituent identifiers.

    Escaping makes the encoding injective, so identifiers of derived
    categories never collide even when nested several levels deep.
    """
    return "(" + ",".join(_escape(p) for p in parts) + ")"


def untag(tagged: str) -> tuple[str, ...]:
    """Inverse of `tag`; used by tests and diagnostics, never by constructions."""
    if not (tagged.startswith("(") and tagged.endswith(")")):
        raise InputError(f"not a tagged identifier: {tagged!r}")
    body = tagged[1:-1]
    parts: list[str] = []
    cur: list[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            if i + 1 >= len(body):
                raise InputError(f"dangling escape in {tagged!r}")
            cur.append(body[i + 1])
            i += 2
        elif ch == ",":
            parts.append("".join(cur))
            cur = []
            i += 1
        else:
            cur.append(ch)
            i += 1
    parts.append("".join(cur))
    if parts == [""] and body == "":
        return ()
    return tuple(parts)


def lift_tag(obj: str, over: str) -> str:
    """Canonical identifier "(a<=u)" for a chosen lift of `over` at `obj`."""
    return "(" + _escape(obj) + "<=" + _escape(over) + ")"


Violation = tuple  # (law_name, offending identifiers...)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validator: `ok` holds exactly when `violations` is empty."""

    ok: bool
    violations: tuple[Violation, ...]

    @classmethod
    def from_violations(cls, violations) -> "ValidationReport":
        vs = tuple(violations)
        return cls(ok=not vs, violations=vs)

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport.from_violations(self.violations + other.violations)


@dataclass(frozen=True, eq=True)
class FinCat:
    """A finite category as identifier tables.

    objects     sorted object identifiers
    morphisms   sorted morphism identifiers
    src, tgt    morphism id -> object id
    identity    object id -> morphism id
    compose     (g, f) -> g after f, defined exactly on composable pairs

    Construction never validates; run `validate_category` to get a report.
    The dict fields are owned by the instance and must not be mutated.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    identity: dict[str, str]
    compose: dict[tuple[str, str], str]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(self.objects)))
        object.__setattr__(self, "morphisms", tuple(sorted(self.morphisms)))

    # -- helpers ---------------------------------------------------------

    @cached_property
    def identity_set(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    def is_identity(self, m: str) -> bool:
        return m in self.identity_set

    @cached_property
    def nonidentity(self) -> tuple[str, ...]:
        return tuple(m for m in self.morphisms if m not in self.identity_set)

    @cached_property
    def by_src(self) -> dict[str, tuple[str, ...]]:
        acc: dict[str, list[str]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            acc[self.src[m]].append(m)
        return {x: tuple(ms) for x, ms in acc.items()}

    @cached_property
    def by_tgt(self) -> dict[str, tuple[str, ...]]:
        acc: dict[str, list[str]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            acc[self.tgt[m]].append(m)
        return {x: tuple(ms) for x, ms in acc.items()}

    def out(self, x: str) -> tuple[str, ...]:
        return self.by_src[x]

    def into(self, x: str) -> tuple[str, ...]:
        return self.by_tgt[x]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return tuple(m for m in self.by_src[x] if self.tgt[m] == y)

    def composite(self, g: str, f: str) -> str:
        """g after f; raises InputError on a non-composable pair."""
        try:
            return self.compose[(g, f)]
        except KeyError:
            raise InputError(f"morphisms not composable: ({g}, {f})") from None

    @cached_property
    def key(self) -> tuple:
        """Canonical hashable form, used as a cache key for derived data."""
        return (
            self.objects,
            self.morphisms,
            tuple(sorted(self.src.items())),
            tuple(sorted(self.tgt.items())),
            tuple(sorted(self.identity.items())),
            tuple(sorted(self.compose.items())),
        )


@dataclass(frozen=True, eq=True)
class FinFunctor:
    """A functor as object and morphism tables between two `FinCat` values."""

    dom: FinCat
    cod: FinCat
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def on_obj(self, x: str) -> str:
        return self.obj_map[x]

    def on_mor(self, m: str) -> str:
        return self.mor_map[m]

    @cached_property
    def key(self) -> tuple:
        return (
            self.dom.key,
            self.cod.key,
            tuple(sorted(self.obj_map.items())),
            tuple(sorted(self.mor_map.items())),
        )


def same_cat(a: FinCat, b: FinCat) -> bool:
    return a is b or a == b


def same_functor(f: FinFunctor, g: FinFunctor) -> bool:
    return f is g or f == g


def identity_functor(c: FinCat) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """g after f; boundaries must match on the nose."""
    if not same_cat(f.cod, g.dom):
        raise InputError("functors not composable: cod of first differs from dom of second")
    return FinFunctor(
        f.dom,
        g.cod,
        {x: g.obj_map[fx] for x, fx in f.obj_map.items()},
        {m: g.mor_map[fm] for m, fm in f.mor_map.items()},
    )


# -- validators ------------------------------------------------------------


def validate_category(c: FinCat, *, associativity: bool = True) -> ValidationReport:
    """Check the category laws on raw tables, reporting every violation found.

    The associativity sweep is cubic in branching degree; callers
    validating very large generated categories may switch it off and
    rely on spot checks instead.
    """
    v: list[Violation] = []
    obj_set = set(c.objects)
    mor_set = set(c.morphisms)
    seen: set[str] = set()
    for x in c.objects:
        if x in seen:
            v.append(("duplicate-object", x))
        seen.add(x)
    seen = set()
    for m in c.morphisms:
        if m in seen:
            v.append(("duplicate-morphism", m))
        seen.add(m)

    typed: set[str] = set()
    for m in c.morphisms:
        ok = True
        for table, name in ((c.src, "src"), (c.tgt, "tgt")):
            if m not in table:
                v.append((f"missing-{name}", m))
                ok = False
            elif table[m] not in obj_set:
                v.append(("unknown-object", m, table[m]))
                ok = False
        if ok:
            typed.add(m)

    idents: set[str] = set()
    for x in c.objects:
        i = c.identity.get(x)
        if i is None:
            v.append(("missing-identity", x))
        elif i not in mor_set:
            v.append(("unknown-identity", x, i))
        elif i not in typed or c.src[i] != x or c.tgt[i] != x:
            v.append(("identity-typing", x, i))
        else:
            idents.add(i)

    out_of: dict[str, list[str]] = {x: [] for x in c.objects}
    for m in c.morphisms:
        if m in typed:
            out_of[c.src[m]].append(m)
    composable: set[tuple[str, str]] = set()
    for f in c.morphisms:
        if f not in typed:
            continue
        for g in out_of[c.tgt[f]]:
            composable.add((g, f))

    for (g, f), gf in sorted(c.compose.items()):
        if g not in mor_set or f not in mor_set or gf not in mor_set:
            v.append(("compose-unknown", g, f, gf))
        elif (g, f) not in composable:
            v.append(("compose-not-composable", g, f))
        elif c.src[gf] != c.src[f] or c.tgt[gf] != c.tgt[g]:
            v.append(("composite-typing", g, f, gf))
    for pair in sorted(composable):
        if pair not in c.compose:
            v.append(("missing-composite", *pair))

    def comp(g: str, f: str) -> str | None:
        return c.compose.get((g, f))

    for f in c.morphisms:
        if f not in typed:
            continue
        i_src, i_tgt = c.identity.get(c.src[f]), c.identity.get(c.tgt[f])
        if i_src in idents and comp(f, i_src) is not None and comp(f, i_src) != f:
            v.append(("right-unit", f))
        if i_tgt in idents and comp(i_tgt, f) is not None and comp(i_tgt, f) != f:
            v.append(("left-unit", f))

    if associativity:
        for (g, f) in sorted(composable):
            gf = comp(g, f)
            if gf is None:
                continue
            for h in out_of[c.tgt[g]]:
                hg = comp(h, g)
                left = comp(h, gf)
                right = comp(hg, f) if hg is not None else None
                if hg is None or left is None or right is None:
                    continue
                if left != right:
                    v.append(("associativity", h, g, f))
    return ValidationReport.from_violations(v)


def validate_functor(fun: FinFunctor) -> ValidationReport:
    """Check totality and structure preservation; dom and cod are trusted."""
    v: list[Violation] = []
    dom, cod = fun.dom, fun.cod
    cod_objs, cod_mors = set(cod.objects), set(cod.morphisms)
    for x in dom.objects:
        fx = fun.obj_map.get(x)
        if fx is None:
            v.append(("obj-map-missing", x))
        elif fx not in cod_objs:
            v.append(("obj-map-unknown", x, fx))
    for m in dom.morphisms:
        fm = fun.mor_map.get(m)
        if fm is None:
            v.append(("mor-map-missing", m))
        elif fm not in cod_mors:
            v.append(("mor-map-unknown", m, fm))
    if v:
        return ValidationReport.from_violations(v)

    for m in dom.morphisms:
        fm = fun.mor_map[m]
        if cod.src[fm] != fun.obj_map[dom.src[m]]:
            v.append(("src-preservation", m))
        if cod.tgt[fm] != fun.obj_map[dom.tgt[m]]:
            v.append(("tgt-preservation", m))
    for x in dom.objects:
        if fun.mor_map[dom.identity[x]] != cod.identity[fun.obj_map[x]]:
            v.append(("identity-preservation", x))
    for (g, f), gf in sorted(dom.compose.items()):
        img = cod.compose.get((fun.mor_map[g], fun.mor_map[f]))
        if img is None or img != fun.mor_map[gf]:
            v.append(("composition-preservation", g, f))
    return ValidationReport.from_violations(v)


# -- constructions ----------------------------------------------------------


def discrete(c: FinCat) -> FinCat:
    """The discrete category on the objects of c, keeping identity ids."""
    idents = {x: c.identity[x] for x in c.objects}
    mors = tuple(sorted(idents.values()))
    return FinCat(
        objects=c.objects,
        morphisms=mors,
        src={m: x for x, m in idents.items()},
        tgt={m: x for x, m in idents.items()},
        identity=idents,
        compose={(m, m): m for m in mors},
    )


def counit_inclusion(c: FinCat) -> FinFunctor:
    """The identity-on-objects inclusion discrete(c) -> c."""
    d = discrete(c)
    return FinFunctor(d, c, {x: x for x in d.objects}, {m: m for m in d.morphisms})


def discrete_restriction(fun: FinFunctor) -> FinFunctor:
    """The object part of a functor, as a functor between discrete categories."""
    d_dom, d_cod = discrete(fun.dom), discrete(fun.cod)
    return FinFunctor(
        d_dom,
        d_cod,
        dict(fun.obj_map),
        {fun.dom.identity[x]: fun.cod.identity[fun.obj_map[x]] for x in fun.dom.objects},
    )


def is_bijective_on_objects(fun: FinFunctor) -> bool:
    images = list(fun.obj_map.values())
    return len(images) == len(set(images)) and set(images) == set(fun.cod.objects)


def comma_to_object(fun: FinFunctor, b: str) -> FinCat:
    """The comma category fun/b: objects (a, u: fun a -> b), morphisms w with
    u' after fun w = u.  Identifiers are tags over the constituent ids."""
    if b not in fun.cod.objects:
        raise InputError(f"unknown object: {b}")
    A, B = fun.dom, fun.cod
    objects: list[str] = []
    obj_pairs: dict[str, tuple[str, str]] = {}
    for a in A.objects:
        fa = fun.obj_map[a]
        for u in B.out(fa):
            if B.tgt[u] != b:
                continue
            o = tag(a, u)
            objects.append(o)
            obj_pairs[o] = (a, u)
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    identity: dict[str, str] = {}
    mor_parts: dict[str, tuple[str, str]] = {}
    for w in A.morphisms:
        a, a2 = A.src[w], A.tgt[w]
        fw = fun.mor_map[w]
        for u2 in B.out(fun.obj_map[a2]):
            if B.tgt[u2] != b:
                continue
            u = B.compose[(u2, fw)]
            m = tag(w, u2)
            src[m] = tag(a, u)
            tgt[m] = tag(a2, u2)
            mor_parts[m] = (w, u2)
    for o, (a, u) in obj_pairs.items():
        identity[o] = tag(A.identity[a], u)
    compose: dict[tuple[str, str], str] = {}
    morphisms = sorted(mor_parts)
    for m1 in morphisms:
        for m2 in morphisms:
            if tgt[m1] != src[m2]:
                continue
            w1, _ = mor_parts[m1]
            w2, u3 = mor_parts[m2]
            compose[(m2, m1)] = tag(A.compose[(w2, w1)], u3)
    return FinCat(tuple(objects), tuple(morphisms), src, tgt, identity, compose)


def coslice(c: FinCat, b: str) -> FinCat:
    """The coslice b/c: objects are morphisms out of b, morphisms are
    post-compositions."""
    if b not in c.objects:
        raise InputError(f"unknown object: {b}")
    objects = c.out(b)
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    identity: dict[str, str] = {}
    mor_parts: dict[str, tuple[str, str]] = {}
    for u in objects:
        for v in c.out(c.tgt[u]):
            m = tag(u, v)
            src[m] = u
            tgt[m] = c.compose[(v, u)]
            mor_parts[m] = (u, v)
        identity[u] = tag(u, c.identity[c.tgt[u]])
    compose: dict[tuple[str, str], str] = {}
    for m1, (u1, v1) in mor_parts.items():
        for m2, (u2, v2) in mor_parts.items():
            if u2 == tgt[m1]:
                compose[(m2, m1)] = tag(u1, c.compose[(v2, v1)])
    return FinCat(tuple(objects), tuple(sorted(mor_parts)), src, tgt, identity, compose)


def is_connected(c: FinCat) -> bool:
    """Connectivity of the underlying undirected graph; empty is not connected."""
    if not c.objects:
        return False
    adj: dict[str, set[str]] = {x: set() for x in c.objects}
    for m in c.morphisms:
        adj[c.src[m]].add(c.tgt[m])
        adj[c.tgt[m]].add(c.src[m])
    seen = {c.objects[0]}
    frontier = [c.objects[0]]
    while frontier:
        x = frontier.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == len(c.objects)


def coproduct(
    cats: list[FinCat] | tuple[FinCat, ...],
    labels: list[str] | tuple[str, ...] | None = None,
) -> tuple[FinCat, tuple[FinFunctor, ...]]:
    """Disjoint union with tagged identifiers; returns (category, injections)."""
    cats = tuple(cats)
    if labels is None:
        labels = tuple(str(i) for i in range(len(cats)))
    else:
        labels = tuple(labels)
        if len(labels) != len(cats):
            raise InputError("coproduct needs one label per category")
        if len(set(labels)) != len(labels):
            raise InputError("coproduct labels must be distinct")
    objects: list[str] = []
    morphisms: list[str] = []
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    identity: dict[str, str] = {}
    compose: dict[tuple[str, str], str] = {}
    injections: list[FinFunctor] = []
    result: FinCat | None = None
    for lab, c in zip(labels, cats):
        for x in c.objects:
            objects.append(tag(lab, x))
        for m in c.morphisms:
            t = tag(lab, m)
            morphisms.append(t)
            src[t] = tag(lab, c.src[m])
            tgt[t] = tag(lab, c.tgt[m])
        for x in c.objects:
            identity[tag(lab, x)] = tag(lab, c.identity[x])
        for (g, f), gf in c.compose.items():
            compose[(tag(lab, g), tag(lab, f))] = tag(lab, gf)
    result = FinCat(tuple(objects), tuple(morphisms), src, tgt, identity, compose)
    for lab, c in zip(labels, cats):
        injections.append(
            FinFunctor(
                c,
                result,
                {x: tag(lab, x) for x in c.objects},
                {m: tag(lab, m) for m in c.morphisms},
            )
        )
    return result, tuple(injections)


def enumerate_functors(
    dom: FinCat, cod: FinCat, guard: int = DEFAULT_GUARD
) -> list[FinFunctor]:
    """All functors dom -> cod in lexicographic order of their tables.

    Refuses up front when the raw search space
    |objects(cod)| ** |objects(dom)| * |morphisms(cod)| ** |nonidentity(dom)|
    exceeds the guard.
    """
    space = len(cod.objects) ** len(dom.objects)
    space *= len(cod.morphisms) ** len(dom.nonidentity)
    if space > guard:
        raise GuardExceededError(
            f"functor search space {space} exceeds guard {guard}"
        )
    found: list[FinFunctor] = []
    nonid = dom.nonidentity
    for images in itertools.product(cod.objects, repeat=len(dom.objects)):
        obj_map = dict(zip(dom.objects, images))
        base = {
            dom.identity[x]: cod.identity[obj_map[x]] for x in dom.objects
        }
        cands: list[tuple[str, ...]] = []
        feasible = True
        for m in nonid:
            cs = cod.hom(obj_map[dom.src[m]], obj_map[dom.tgt[m]])
            if not cs:
                feasible = False
                break
            cands.append(cs)
        if not feasible:
            continue
        for choice in itertools.product(*cands):
            mor_map = dict(base)
            mor_map.update(zip(nonid, choice))
            if _preserves_composition(dom, cod, mor_map):
                found.append(FinFunctor(dom, cod, dict(obj_map), mor_map))
    return found


def _preserves_composition(dom: FinCat, cod: FinCat, mor_map: dict[str, str]) -> bool:
    for (g, f), gf in dom.compose.items():
        if cod.compose.get((mor_map[g], mor_map[f])) != mor_map[gf]:
            return False
    return True
