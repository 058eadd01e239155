import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalens.fixtures import CORPUS
from deltalens.kernel import (
    FinCat,
    FinFunctor,
    GuardExceededError,
    InputError,
    compose_functors,
    coproduct,
    counit_inclusion,
    discrete,
    enumerate_functors,
    identity_functor,
    lift_tag,
    tag,
    untag,
    validate_category,
    validate_functor,
)

names = st.text(
    alphabet="abu01(),\\<>*_ ", min_size=1, max_size=10
)


@given(st.lists(names, min_size=1, max_size=4))
def test_tag_untag_round_trip(parts):
    assert untag(tag(*parts)) == tuple(parts)


@given(names, names, names, names)
def test_lift_tag_injective(a1, u1, a2, u2):
    if (a1, u1) != (a2, u2):
        assert lift_tag(a1, u1) != lift_tag(a2, u2)


def test_fixture_tables_are_lawful():
    for name, c in CORPUS.items():
        assert validate_category(c).ok, name


def test_out_into_hom_partition_morphisms():
    for c in CORPUS.values():
        assert sum(len(c.out(a)) for a in c.objects) == len(c.morphisms)
        assert sum(len(c.into(a)) for a in c.objects) == len(c.morphisms)
        for m in c.morphisms:
            assert m in c.out(c.src[m])
            assert m in c.hom(c.src[m], c.tgt[m])


def test_composite_agrees_with_table():
    wr = CORPUS["walking-retraction"]
    assert wr.composite("r", "s") == "1_0"
    assert wr.composite("s", "r") == "e"
    assert wr.composite("e", "e") == "e"


def _chain_dict():
    return {
        "objects": ["x", "y"],
        "morphisms": {"1_x": ("x", "x"), "1_y": ("y", "y"), "a": ("x", "y")},
        "identity": {"x": "1_x", "y": "1_y"},
        "compose": {
            ("1_x", "1_x"): "1_x",
            ("1_y", "1_y"): "1_y",
            ("a", "1_x"): "a",
            ("1_y", "a"): "a",
        },
    }


def _build(d) -> FinCat:
    return FinCat(
        objects=tuple(d["objects"]),
        morphisms=tuple(d["morphisms"]),
        src={m: s for m, (s, _) in d["morphisms"].items()},
        tgt={m: t for m, (_, t) in d["morphisms"].items()},
        identity=dict(d["identity"]),
        compose=dict(d["compose"]),
    )


def test_validate_category_accepts_chain():
    assert validate_category(_build(_chain_dict())).ok


def test_validate_category_missing_composite():
    d = _chain_dict()
    del d["compose"][("1_y", "a")]
    report = validate_category(_build(d))
    assert ("missing-composite", "1_y", "a") in report.violations


def test_validate_category_wrong_unit():
    d = _chain_dict()
    d["compose"][("1_y", "a")] = "1_y"
    report = validate_category(_build(d))
    assert not report.ok
    assert any(v[0] in ("left-unit", "composite-typing") for v in report.violations)


def test_validate_category_unknown_identity():
    d = _chain_dict()
    d["identity"]["x"] = "nope"
    report = validate_category(_build(d))
    assert any(v[0] == "unknown-identity" for v in report.violations)


def test_validate_category_broken_associativity():
    c = FinCat(
        objects=("x",),
        morphisms=("1", "a", "b"),
        src={"1": "x", "a": "x", "b": "x"},
        tgt={"1": "x", "a": "x", "b": "x"},
        identity={"x": "1"},
        compose={
            ("1", "1"): "1",
            ("1", "a"): "a", ("a", "1"): "a",
            ("1", "b"): "b", ("b", "1"): "b",
            ("a", "a"): "b",
            ("b", "a"): "1", ("a", "b"): "b",
            ("b", "b"): "a",
        },
    )
    report = validate_category(c)
    assert any(v[0] == "associativity" for v in report.violations)


def _brute_force_functors(dom: FinCat, cod: FinCat):
    """All functors, by filtering every raw assignment pair."""
    nonid = [m for m in dom.morphisms if not dom.is_identity(m)]
    found = []
    for objs in itertools.product(cod.objects, repeat=len(dom.objects)):
        obj_map = dict(zip(dom.objects, objs))
        for mors in itertools.product(cod.morphisms, repeat=len(nonid)):
            mor_map = {
                m: cod.identity[obj_map[dom.src[m]]] if dom.is_identity(m) else None
                for m in dom.morphisms
            }
            mor_map.update(dict(zip(nonid, mors)))
            ok = True
            for m in dom.morphisms:
                if (
                    cod.src[mor_map[m]] != obj_map[dom.src[m]]
                    or cod.tgt[mor_map[m]] != obj_map[dom.tgt[m]]
                ):
                    ok = False
                    break
            if ok:
                for (g, f), gf in dom.compose.items():
                    if cod.compose[(mor_map[g], mor_map[f])] != mor_map[gf]:
                        ok = False
                        break
            if ok:
                found.append(FinFunctor(dom=dom, cod=cod, obj_map=obj_map, mor_map=mor_map))
    return found


@pytest.mark.parametrize(
    "dname,cname",
    [
        ("interval", "interval"),
        ("parallel-pair", "interval"),
        ("interval", "walking-iso"),
        ("walking-retraction", "walking-retraction"),
        ("idempotent-monoid", "walking-retraction"),
    ],
)
def test_enumerate_functors_matches_brute_force(dname, cname):
    dom, cod = CORPUS[dname], CORPUS[cname]
    fast = enumerate_functors(dom, cod, 10**6)
    slow = _brute_force_functors(dom, cod)
    key = lambda f: (sorted(f.obj_map.items()), sorted(f.mor_map.items()))
    assert sorted(map(key, fast)) == sorted(map(key, slow))
    for f in fast:
        assert validate_functor(f).ok


def test_enumerate_functors_guard():
    wr = CORPUS["walking-retraction"]
    with pytest.raises(GuardExceededError):
        enumerate_functors(wr, wr, 3)


def test_identity_and_composition_of_functors():
    iv, wi = CORPUS["interval"], CORPUS["walking-iso"]
    for f in enumerate_functors(iv, wi, 10**6):
        assert compose_functors(f, identity_functor(iv)) == f
        assert compose_functors(identity_functor(wi), f) == f


def test_validate_functor_catches_identity_breakage():
    iv = CORPUS["interval"]
    f = identity_functor(iv)
    bad = FinFunctor(
        dom=iv, cod=iv,
        obj_map=dict(f.obj_map),
        mor_map={**f.mor_map, "1_0": "u"},
    )
    report = validate_functor(bad)
    assert any(v[0] in ("identity-preservation", "src-preservation", "tgt-preservation")
               for v in report.violations)


def test_discrete_and_counit_inclusion():
    for c in CORPUS.values():
        d = discrete(c)
        assert validate_category(d).ok
        assert len(d.morphisms) == len(d.objects)
        iota = counit_inclusion(c)
        assert validate_functor(iota).ok
        assert all(iota.obj_map[a] == a for a in d.objects)


def test_coproduct_of_categories():
    iv, term = CORPUS["interval"], CORPUS["terminal"]
    both, (inl, inr) = coproduct([iv, term], labels=["l", "r"])
    assert validate_category(both).ok
    assert len(both.objects) == len(iv.objects) + len(term.objects)
    assert len(both.morphisms) == len(iv.morphisms) + len(term.morphisms)
    assert validate_functor(inl).ok and validate_functor(inr).ok


def test_validate_category_reports_duplicates():
    c = FinCat(
        objects=("x", "x"),
        morphisms=("1_x",),
        src={"1_x": "x"},
        tgt={"1_x": "x"},
        identity={"x": "1_x"},
        compose={("1_x", "1_x"): "1_x"},
    )
    report = validate_category(c)
    assert any(v[0] == "duplicate-object" for v in report.violations)
