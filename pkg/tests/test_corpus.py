import pytest

from constdepth.corpus import CorpusSpec, corpus_sweep, parse_corpus_spec


def test_empty_spec_gives_empty_summary():
    assert corpus_sweep(None).to_dict() == {}
    assert parse_corpus_spec("") is None
    assert corpus_sweep(CorpusSpec("graphs", 0, 4)).to_dict() == {}


def test_graph_sweep_has_no_disagreements():
    s = corpus_sweep(CorpusSpec("graphs", 100, 6), seed=42, k_max=3)
    assert s.disagreements == 0
    assert s.checked + s.skipped == 100


def test_squarefree_sweep_has_no_radical_violations():
    s = corpus_sweep(CorpusSpec("squarefree", 100, 5), seed=42, k_max=2)
    assert s.violations == 0 and s.checked == 100


def test_collection_sweep_is_constant():
    s = corpus_sweep(CorpusSpec("collections", 30, 4), seed=1, k_max=3)
    assert s.violations == 0 and s.checked > 0


def test_sweeps_are_deterministic():
    a = corpus_sweep(CorpusSpec("squarefree", 20, 4), seed=7, k_max=2).to_dict()
    b = corpus_sweep(CorpusSpec("squarefree", 20, 4), seed=7, k_max=2).to_dict()
    assert a == b


def test_spec_parsing_and_validation():
    spec = parse_corpus_spec("family: squarefree\ncount: 5\nn: 4\n")
    assert spec == CorpusSpec("squarefree", 5, 4)
    with pytest.raises(ValueError):
        CorpusSpec("trees", 1, 3)
