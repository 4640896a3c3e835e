import pytest

from machlog import corpus, replay
from machlog.engine import extract_theorem


@pytest.fixture(scope="session")
def bundled_store():
    return corpus.load_bundled_store()


@pytest.fixture(scope="session")
def corpus_texts():
    return {label: corpus.proof_text(label) for label in corpus.proof_labels()}


@pytest.fixture(scope="session")
def replayed():
    """Every corpus proof replayed in order, theorems registered as the
    store grows; yields (store, {label: ReplayReport})."""
    store = corpus.load_bundled_store()
    reports = {}
    for label in corpus.proof_labels():
        report = replay(corpus.proof_text(label), store)
        assert report.ok, f"{label} failed: {report.failures()[:1]}"
        reports[label] = report
        result = extract_theorem(report.state)
        store.register(label, result.premises, (result.conclusion,))
    return store, reports
