"""End-to-end acceptance sweep.

Each test covers one shipped guarantee, prints one summary line, and
asserts both exactness and a wall-clock budget.  Heavy reference
computations live in oracles.py; nothing here trusts the construction
it is checking.
"""

import time

from oracles import brute_force_diagonals, compare_pushout

from deltalens.factorization import (
    comprehensive_factorise,
    is_discrete_opfibration,
    is_initial,
    orthogonal_lift,
)
from deltalens.fixtures import CORPUS
from deltalens.kernel import (
    GuardExceededError,
    compose_functors,
    identity_functor,
)
from deltalens.lens import validate_lens, validate_lens_morphism
from deltalens.search import enumerate_lens_structures, enumerate_r_algebra_structures
from deltalens.semimonad import jr_from_lens, lens_from_jr, validate_jr_morphism
from deltalens.awfs import (
    cofree_coalgebra,
    e_object,
    free_lens,
    lens_to_r_algebra,
    lift_against_coalgebra,
    r_algebra_to_lens,
)
from deltalens.factorization import CommutingSquare
from deltalens.laws import run_laws


def test_criterion_1_comprehensive_factorisation(corpus_funs):
    t0 = time.monotonic()
    assert len(corpus_funs) >= 50
    for name, fun in corpus_funs:
        parts = comprehensive_factorise(fun)
        assert compose_functors(parts.m, parts.e) == fun, name
        assert is_initial(parts.e), name
        assert is_discrete_opfibration(parts.m), name
    elapsed = time.monotonic() - t0
    assert elapsed < 10
    print(f"criterion 1: PASS ({len(corpus_funs)} functors factorised, {elapsed:.1f}s)")


def test_criterion_2_orthogonality_uniqueness(corpus_sqs):
    t0 = time.monotonic()
    eligible = 0
    for name, sq in corpus_sqs:
        if not (is_initial(sq.left) and is_discrete_opfibration(sq.right)):
            continue
        diagonals = brute_force_diagonals(sq)
        assert len(diagonals) == 1, name
        assert orthogonal_lift(sq) == diagonals[0], name
        eligible += 1
    elapsed = time.monotonic() - t0
    assert eligible >= 100
    assert elapsed < 60
    print(f"criterion 2: PASS ({eligible} squares, unique diagonals, {elapsed:.1f}s)")


def test_criterion_3_semimonad_laws(scope):
    t0 = time.monotonic()
    result = run_laws(scope, families=("semimonad",))
    elapsed = time.monotonic() - t0
    assert result.ok, result.failures[:3]
    assert len(result.cases) >= 50
    assert elapsed < 30
    print(f"criterion 3: PASS ({len(result.cases)} functors with squares, {elapsed:.1f}s)")


def test_criterion_4_pushout_normal_form(corpus_funs):
    t0 = time.monotonic()
    for name, fun in corpus_funs:
        assert compare_pushout(fun, e_object(fun)) == [], name
    elapsed = time.monotonic() - t0
    assert elapsed < 60
    print(f"criterion 4: PASS ({len(corpus_funs)} normal forms match closure, {elapsed:.1f}s)")


def test_criterion_5_monad_comonad_distributive(scope):
    t0 = time.monotonic()
    result = run_laws(scope, families=("monad", "comonad", "distributive", "tower"))
    elapsed = time.monotonic() - t0
    assert result.ok, result.failures[:3]
    tower_cases = [c for c in result.cases if c.family == "tower"]
    assert len(tower_cases) >= 16
    assert elapsed < 120
    print(f"criterion 5: PASS ({len(result.cases)} cases incl. {len(tower_cases)} tower, {elapsed:.1f}s)")


def test_criterion_6_lens_algebra_bijection(corpus_funs):
    t0 = time.monotonic()
    eligible = 0
    for name, fun in corpus_funs:
        try:
            lenses = enumerate_lens_structures(fun, 4096)
            algebras = enumerate_r_algebra_structures(fun, 200_000)
        except GuardExceededError:
            continue
        eligible += 1
        assert len(lenses) == len(algebras), name
        enumerated = {a.structure.key for a in algebras}
        for l in lenses:
            alg = lens_to_r_algebra(l)
            assert alg.structure.key in enumerated, name
            assert r_algebra_to_lens(alg).lifts == l.lifts, name
        for a in algebras:
            assert lens_to_r_algebra(r_algebra_to_lens(a)).structure == a.structure, name
    dofs = 0
    for name, fun in corpus_funs:
        if is_discrete_opfibration(fun):
            assert len(enumerate_lens_structures(fun, 10**6)) == 1, name
            dofs += 1
    elapsed = time.monotonic() - t0
    assert eligible >= 60 and dofs >= 10
    assert elapsed < 120
    print(f"criterion 6: PASS ({eligible} bijections, {dofs} opfibrations unique, {elapsed:.1f}s)")


def test_criterion_7_lens_jr_correspondence(corpus_lens_list, corpus_sqs):
    t0 = time.monotonic()
    for name, l in corpus_lens_list:
        alg = jr_from_lens(l)
        assert lens_from_jr(alg).lifts == l.lifts, name
        assert jr_from_lens(lens_from_jr(alg)).structure == alg.structure, name
    by_key = {}
    for name, l in corpus_lens_list:
        by_key.setdefault(l.functor.key, []).append(l)
    agreements = matches = mismatches = 0
    for name, sq in corpus_sqs:
        for l1 in by_key.get(sq.left.key, ()):
            for l2 in by_key.get(sq.right.key, ()):
                lens_ok = validate_lens_morphism(sq, l1, l2).ok
                alg_ok = validate_jr_morphism(
                    sq, jr_from_lens(l1), jr_from_lens(l2)
                ).ok
                assert lens_ok == alg_ok, name
                agreements += 1
                matches += lens_ok
                mismatches += not lens_ok
    elapsed = time.monotonic() - t0
    assert matches > 50 and mismatches >= 10
    assert elapsed < 60
    print(
        f"criterion 7: PASS ({len(corpus_lens_list)} round trips; "
        f"{agreements} morphism checks agree, {elapsed:.1f}s)"
    )


def test_criterion_8_lifting_through_coalgebras(corpus_lens_list, corpus_sqs):
    t0 = time.monotonic()
    by_key = {}
    for name, l in corpus_lens_list:
        by_key.setdefault(l.functor.key, []).append(l)
    triples = 0
    for name, sq in corpus_sqs:
        for lens in by_key.get(sq.right.key, ()):
            f, g = sq.left, sq.right
            coalg = cofree_coalgebra(f)
            ef = e_object(f)
            lifted = CommutingSquare(
                ef.lf, g, sq.top, compose_functors(sq.bottom, ef.rf)
            )
            d = lift_against_coalgebra(lifted, coalg, lens)
            assert compose_functors(d, ef.lf) == lifted.top, name
            assert compose_functors(g, d) == lifted.bottom, name
            triples += 1
    elapsed = time.monotonic() - t0
    assert triples >= 20
    assert elapsed < 60
    print(f"criterion 8: PASS ({triples} lifting triples solved, {elapsed:.1f}s)")


def test_criterion_9_free_lens(corpus_funs):
    t0 = time.monotonic()
    for name, fun in corpus_funs:
        assert validate_lens(free_lens(fun)).ok, name
    ef = e_object(identity_functor(CORPUS["interval"]))
    assert len(ef.e.objects) == 3
    assert len(ef.e.morphisms) == 5
    elapsed = time.monotonic() - t0
    assert elapsed < 5
    print(f"criterion 9: PASS ({len(corpus_funs)} free lenses lawful, {elapsed:.1f}s)")
