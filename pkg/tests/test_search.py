import pytest

from deltalens.fixtures import CORPUS
from deltalens.kernel import (
    FinFunctor,
    GuardExceededError,
    compose_functors,
    enumerate_functors,
    identity_functor,
)
from deltalens.factorization import is_discrete_opfibration
from deltalens.lens import validate_lens
from deltalens.search import (
    discrete_opfibrations,
    enumerate_commuting_squares,
    enumerate_jr_algebras,
    enumerate_l_coalgebras,
    enumerate_lens_structures,
    enumerate_r_algebra_structures,
)
from deltalens.semimonad import validate_jr_algebra
from deltalens.awfs import validate_l_coalgebra, validate_r_algebra


def test_lens_structures_are_lawful_and_guarded():
    wi = CORPUS["walking-iso"]
    found = enumerate_lens_structures(identity_functor(wi), 10**6)
    assert len(found) == 1
    for l in found:
        assert validate_lens(l).ok
    with pytest.raises(GuardExceededError):
        f = FinFunctor(
            CORPUS["walking-retraction"], CORPUS["terminal"],
            {"0": "*", "1": "*"},
            {m: "1_*" for m in CORPUS["walking-retraction"].morphisms},
        )
        enumerate_lens_structures(f, 2)


def test_discrete_opfibration_search_agrees_with_predicate():
    wi = CORPUS["walking-iso"]
    direct = discrete_opfibrations(wi, wi, 10**6)
    filtered = [
        f for f in enumerate_functors(wi, wi, 10**6) if is_discrete_opfibration(f)
    ]
    assert len(direct) == len(filtered) == 2
    assert {f.key for f in direct} == {f.key for f in filtered}


def test_square_enumeration_matches_commutation_filter():
    iv = CORPUS["interval"]
    f = identity_functor(iv)
    squares = enumerate_commuting_squares(f, f, 10**6)
    tops = enumerate_functors(iv, iv, 10**6)
    slow = [
        (h.key, k.key)
        for h in tops
        for k in tops
        if compose_functors(f, h) == compose_functors(k, f)
    ]
    assert len(squares) == len(slow)
    assert {(sq.top.key, sq.bottom.key) for sq in squares} == set(slow)


def test_algebra_enumerations_return_lawful_values():
    iv, term = CORPUS["interval"], CORPUS["terminal"]
    bang = FinFunctor(
        iv, term,
        {"0": "*", "1": "*"},
        {"1_0": "1_*", "1_1": "1_*", "u": "1_*"},
    )
    jr = enumerate_jr_algebras(bang, 10**6)
    assert len(jr) == 1 and validate_jr_algebra(jr[0]).ok
    ra = enumerate_r_algebra_structures(bang, 10**6)
    assert len(ra) == 1 and validate_r_algebra(ra[0]).ok
    lc = enumerate_l_coalgebras(bang, 10**6)
    assert lc == []
    lc_id = enumerate_l_coalgebras(identity_functor(term), 10**6)
    assert len(lc_id) == 1 and validate_l_coalgebra(lc_id[0]).ok
