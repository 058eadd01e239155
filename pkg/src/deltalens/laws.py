"""Corpus construction and the runnable law suite.

The corpus is every functor between every pair of registered fixture
categories, within guards.  Law families sweep the corpus and report
one case per checked instance; a case failure carries the violation
witness.  Case construction is deterministic; a seed only shuffles the
order in which cases are executed, never their content, and results
are reported sorted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .kernel import (
    DEFAULT_GUARD,
    FinCat,
    FinFunctor,
    GuardExceededError,
    compose_functors,
    counit_inclusion,
    identity_functor,
    same_cat,
    validate_category,
    validate_functor,
)
from .factorization import (
    CommutingSquare,
    comprehensive_factorise,
    is_discrete_opfibration,
    is_initial,
    orthogonal_lift,
)
from .fixtures import CORPUS
from .lens import (
    DeltaLens,
    compose_lenses,
    identity_lens,
    lens_from_discrete_opfibration,
    lens_from_lambda,
    lambda_presentation,
    validate_lens,
)
from .semimonad import j_object, jr_from_lens, lens_from_jr, validate_semimonad
from .awfs import (
    cofree_coalgebra,
    e_object,
    free_lens,
    jr_from_r_algebra,
    lens_to_r_algebra,
    r_algebra_to_lens,
    validate_comonad,
    validate_distributive_law,
    validate_l_coalgebra,
    validate_monad,
)
from .kernel import InputError, enumerate_functors

SQUARE_FIXTURES = ("interval", "terminal", "walking-iso", "walking-retraction")
TOWER_FIXTURES = ("discrete-pair", "interval", "parallel-pair", "terminal")
FAMILIES = (
    "fixtures",
    "factorisation",
    "orthogonality",
    "semimonad",
    "free-lens",
    "lens-algebra",
    "monad",
    "comonad",
    "distributive",
    "tower",
    "coalgebra",
)

# Fully lawful but non-fixture inputs found under --corpus join the
# sweep alongside the builtin fixtures; anything broken becomes a
# failing fixtures case instead of a crash.


@dataclass(frozen=True)
class LawScope:
    """What the suite runs over."""

    fixtures: dict[str, FinCat]
    guard: int = DEFAULT_GUARD
    square_fixtures: tuple[str, ...] = SQUARE_FIXTURES
    tower_fixtures: tuple[str, ...] = TOWER_FIXTURES
    families: tuple[str, ...] = FAMILIES
    broken: dict[str, tuple] = field(default_factory=dict)


def default_scope() -> LawScope:
    return LawScope(fixtures=dict(CORPUS))


@dataclass(frozen=True)
class LawCase:
    family: str
    subject: str
    ok: bool
    witness: tuple = ()


@dataclass(frozen=True)
class LawSuiteResult:
    cases: tuple[LawCase, ...]
    skipped: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> tuple[LawCase, ...]:
        return tuple(c for c in self.cases if not c.ok)


def corpus_functors(scope: LawScope) -> tuple[list[tuple[str, FinFunctor]], list[str]]:
    """Every functor between every fixture pair, named, plus skipped pairs."""
    out: list[tuple[str, FinFunctor]] = []
    skipped: list[str] = []
    names = sorted(scope.fixtures)
    for n1 in names:
        for n2 in names:
            try:
                funs = enumerate_functors(scope.fixtures[n1], scope.fixtures[n2], scope.guard)
            except GuardExceededError:
                skipped.append(f"{n1}->{n2}")
                continue
            out.extend((f"{n1}->{n2}#{i}", fun) for i, fun in enumerate(funs))
    return out, skipped


def corpus_squares(
    scope: LawScope, functors: list[tuple[str, FinFunctor]]
) -> list[tuple[str, CommutingSquare]]:
    """Every commuting square between corpus functors whose four corner
    fixtures all lie in the square sub-corpus."""
    eligible = [
        (name, fun)
        for name, fun in functors
        if name.split("#")[0].split("->")[0] in scope.square_fixtures
        and name.split("#")[0].split("->")[1] in scope.square_fixtures
    ]
    by_sig: dict[tuple[str, str], list[tuple[str, FinFunctor]]] = {}
    for name, fun in eligible:
        d, c = name.split("#")[0].split("->")
        by_sig.setdefault((d, c), []).append((name, fun))
    out: list[tuple[str, CommutingSquare]] = []
    sigs = sorted(by_sig)
    for sig_f in sigs:
        for sig_g in sigs:
            tops = enumerate_functors(
                scope.fixtures[sig_f[0]], scope.fixtures[sig_g[0]], scope.guard
            )
            bottoms = enumerate_functors(
                scope.fixtures[sig_f[1]], scope.fixtures[sig_g[1]], scope.guard
            )
            for fname, f in by_sig[sig_f]:
                for gname, g in by_sig[sig_g]:
                    n = 0
                    for h in tops:
                        gh = compose_functors(g, h)
                        for k in bottoms:
                            if gh == compose_functors(k, f):
                                out.append(
                                    (f"{fname}=>{gname}#{n}", CommutingSquare(f, g, h, k))
                                )
                                n += 1
    return out


def corpus_lenses(
    scope: LawScope, functors: list[tuple[str, FinFunctor]]
) -> list[tuple[str, DeltaLens]]:
    """Identity lenses, the unique lenses on corpus discrete
    opfibrations, and small enumerated lens structures."""
    from .search import enumerate_lens_structures

    out: list[tuple[str, DeltaLens]] = []
    for name in sorted(scope.fixtures):
        out.append((f"id:{name}", identity_lens(scope.fixtures[name])))
    seen = {l.functor.key for _, l in out}
    for name, fun in functors:
        if is_discrete_opfibration(fun) and fun.key not in seen:
            seen.add(fun.key)
            out.append((f"dof:{name}", lens_from_discrete_opfibration(fun)))
    for name, fun in functors:
        if fun.key in seen:
            continue
        try:
            structures = enumerate_lens_structures(fun, guard=4096)
        except GuardExceededError:
            continue
        out.extend((f"table:{name}#{i}", l) for i, l in enumerate(structures))
    return out


def _report_case(family: str, subject: str, report) -> LawCase:
    return LawCase(family, subject, report.ok, report.violations[:8])


def _fixture_cases(scope: LawScope) -> list[LawCase]:
    cases = [
        _report_case("fixtures", name, validate_category(scope.fixtures[name]))
        for name in sorted(scope.fixtures)
    ]
    cases.extend(
        LawCase("fixtures", name, False, witness) for name, witness in sorted(scope.broken.items())
    )
    return cases


def _factorisation_cases(scope, functors) -> list[LawCase]:
    cases = []
    for name, fun in functors:
        try:
            parts = comprehensive_factorise(fun)
            ok = is_initial(parts.e) and is_discrete_opfibration(parts.m)
            ok = ok and compose_functors(parts.m, parts.e) == fun
            cases.append(LawCase("factorisation", name, ok))
        except Exception as exc:
            cases.append(LawCase("factorisation", name, False, (("error", str(exc)),)))
    by_key: dict[tuple, list[tuple[str, FinFunctor]]] = {}
    for name, fun in functors:
        by_key.setdefault(fun.dom.key, []).append((name, fun))
    for gname, g in functors:
        for fname, f in by_key.get(g.cod.key, ()):
            if not same_cat(f.dom, g.cod):
                continue
            gf = compose_functors(f, g)
            checks = []
            if is_initial(f) and is_initial(g) and not is_initial(gf):
                checks.append(("initial-composition",))
            if is_discrete_opfibration(f) and is_discrete_opfibration(g) and not is_discrete_opfibration(gf):
                checks.append(("opfibration-composition",))
            if is_initial(gf) and is_initial(g) and not is_initial(f):
                checks.append(("initial-cancellation",))
            if is_discrete_opfibration(gf) and is_discrete_opfibration(f) and not is_discrete_opfibration(g):
                checks.append(("opfibration-cancellation",))
            if checks:
                cases.append(LawCase("factorisation", f"{fname}.{gname}", False, tuple(checks)))
    cases.append(LawCase("factorisation", "closure-and-cancellation", True))
    return cases


def _orthogonality_cases(scope, squares) -> list[LawCase]:
    cases = []
    for name, sq in squares:
        if not (is_initial(sq.left) and is_discrete_opfibration(sq.right)):
            continue
        try:
            d = orthogonal_lift(sq)
            ok = (
                compose_functors(d, sq.left) == sq.top
                and compose_functors(sq.right, d) == sq.bottom
            )
            cases.append(LawCase("orthogonality", name, ok))
        except Exception as exc:
            cases.append(LawCase("orthogonality", name, False, (("error", str(exc)),)))
    return cases


def _group_squares(functors, squares):
    by_left: dict[tuple, list[CommutingSquare]] = {}
    for _, sq in squares:
        by_left.setdefault(sq.left.key, []).append(sq)
    return by_left


def _semimonad_cases(scope, functors, squares) -> list[LawCase]:
    by_left = _group_squares(functors, squares)
    cases = []
    for name, fun in functors:
        sqs = tuple(by_left.get(fun.key, ()))
        cases.append(
            _report_case("semimonad", name, validate_semimonad(fun, squares=sqs))
        )
    return cases


def _free_lens_cases(scope, functors) -> list[LawCase]:
    cases = []
    for name, fun in functors:
        try:
            cases.append(_report_case("free-lens", name, validate_lens(free_lens(fun))))
        except Exception as exc:
            cases.append(LawCase("free-lens", name, False, (("error", str(exc)),)))
    return cases


def _lens_algebra_cases(scope, lenses) -> list[LawCase]:
    cases = []
    for name, l in lenses:
        try:
            rt = lens_from_jr(jr_from_lens(l))
            ok = rt.lifts == l.lifts
            rt2 = r_algebra_to_lens(lens_to_r_algebra(l))
            ok = ok and rt2.lifts == l.lifts
            pres = lambda_presentation(l)
            ok = ok and lens_from_lambda(pres, l.functor).lifts == l.lifts
            cases.append(LawCase("lens-algebra", name, ok))
        except Exception as exc:
            cases.append(LawCase("lens-algebra", name, False, (("error", str(exc)),)))
    return cases


def _monad_cases(scope, functors, squares) -> list[LawCase]:
    by_left = _group_squares(functors, squares)
    return [
        _report_case(
            "monad", name, validate_monad(fun, squares=tuple(by_left.get(fun.key, ())))
        )
        for name, fun in functors
    ]


def _comonad_cases(scope, functors, squares) -> list[LawCase]:
    by_left = _group_squares(functors, squares)
    return [
        _report_case(
            "comonad",
            name,
            validate_comonad(fun, squares=tuple(by_left.get(fun.key, ()))),
        )
        for name, fun in functors
    ]


def _distributive_cases(scope, functors) -> list[LawCase]:
    return [
        _report_case("distributive", name, validate_distributive_law(fun))
        for name, fun in functors
    ]


def _tower_inputs(scope) -> list[tuple[str, FinFunctor]]:
    out = []
    for name in sorted(scope.tower_fixtures):
        if name not in scope.fixtures:
            continue
        c = scope.fixtures[name]
        out.append((f"id:{name}", identity_functor(c)))
        out.append((f"iota:{name}", counit_inclusion(c)))
    return out


def _tower_cases(scope) -> list[LawCase]:
    cases = []
    for name, fun in _tower_inputs(scope):
        ef = e_object(fun)
        cases.append(_report_case("tower", f"monad@rf:{name}", validate_monad(ef.rf)))
        cases.append(_report_case("tower", f"comonad@lf:{name}", validate_comonad(ef.lf)))
        cases.append(
            _report_case("tower", f"distributive@rf:{name}", validate_distributive_law(ef.rf))
        )
        cases.append(
            _report_case("tower", f"distributive@lf:{name}", validate_distributive_law(ef.lf))
        )
    return cases


def _coalgebra_cases(scope, functors) -> list[LawCase]:
    cases = []
    for name, fun in functors:
        try:
            coalg = cofree_coalgebra(fun)
            cases.append(
                _report_case("coalgebra", f"cofree:{name}", validate_l_coalgebra(coalg))
            )
        except Exception as exc:
            cases.append(LawCase("coalgebra", f"cofree:{name}", False, (("error", str(exc)),)))
    return cases


def run_laws(
    scope: LawScope | None = None,
    *,
    families: tuple[str, ...] | None = None,
    seed: int | None = None,
) -> LawSuiteResult:
    """Run the law suite and report one case per checked instance."""
    scope = scope or default_scope()
    wanted = families if families is not None else scope.families
    for fam in wanted:
        if fam not in FAMILIES:
            raise InputError(f"unknown law family: {fam}")
    functors, skipped = corpus_functors(scope)
    squares = corpus_squares(scope, functors) if (
        {"orthogonality", "semimonad", "monad", "comonad"} & set(wanted)
    ) else []
    lenses = corpus_lenses(scope, functors) if "lens-algebra" in wanted else []

    builders = {
        "fixtures": lambda: _fixture_cases(scope),
        "factorisation": lambda: _factorisation_cases(scope, functors),
        "orthogonality": lambda: _orthogonality_cases(scope, squares),
        "semimonad": lambda: _semimonad_cases(scope, functors, squares),
        "free-lens": lambda: _free_lens_cases(scope, functors),
        "lens-algebra": lambda: _lens_algebra_cases(scope, lenses),
        "monad": lambda: _monad_cases(scope, functors, squares),
        "comonad": lambda: _comonad_cases(scope, functors, squares),
        "distributive": lambda: _distributive_cases(scope, functors),
        "tower": lambda: _tower_cases(scope),
        "coalgebra": lambda: _coalgebra_cases(scope, functors),
    }
    order = [fam for fam in FAMILIES if fam in wanted]
    if seed is not None:
        random.Random(seed).shuffle(order)
    cases: list[LawCase] = []
    for fam in order:
        cases.extend(builders[fam]())
    cases.sort(key=lambda c: (c.family, c.subject))
    return LawSuiteResult(tuple(cases), tuple(skipped))
