import pytest
from hypothesis import settings

from deltalens.laws import (
    corpus_functors,
    corpus_lenses,
    corpus_squares,
    default_scope,
)

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def scope():
    return default_scope()


@pytest.fixture(scope="session")
def corpus_funs(scope):
    functors, skipped = corpus_functors(scope)
    assert not skipped
    return functors


@pytest.fixture(scope="session")
def corpus_sqs(scope, corpus_funs):
    return corpus_squares(scope, corpus_funs)


@pytest.fixture(scope="session")
def corpus_lens_list(scope, corpus_funs):
    return corpus_lenses(scope, corpus_funs)
