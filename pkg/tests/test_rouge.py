import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from summ.errors import EmptyReference, MissingReference
from summ.greedy import Summary
from summ.rouge import (RougeConfig, RougeScore, bootstrap_ci, evaluate_corpus, evaluate_texts, lcs_length,
                        rouge_l, rouge_n, rouge_tokens)

PLAIN = RougeConfig(use_stemming=False, word_limit=None, bootstrap_samples=0)


def test_unigram_examples():
    s = rouge_n("the cat sat", ["the cat ran"], 1, PLAIN)
    assert (s.recall, s.precision, s.f1) == pytest.approx((2 / 3, 2 / 3, 2 / 3), abs=1e-12)
    s = rouge_n("a a a", ["a"], 1, PLAIN)
    assert (s.precision, s.recall) == pytest.approx((1 / 3, 1.0), abs=1e-12)
    for n in range(1, 5):
        assert rouge_n("w x y z", "w x y z", n, PLAIN).f1 == 1.0


def test_lcs_examples():
    s = rouge_l("a b c d", ["a c d"], PLAIN)
    assert (s.recall, s.precision) == pytest.approx((1.0, 0.75), abs=1e-12)
    assert rouge_l("p q", ["r s"], PLAIN) == RougeScore(0.0, 0.0, 0.0)
    assert rouge_l("a b", ["a b c"], PLAIN).precision == 1.0
    assert lcs_length(list("abcbdab"), list("bdcaba")) == 4


def test_stemming_and_truncation():
    cfg = RougeConfig(word_limit=2, bootstrap_samples=0)
    assert rouge_tokens("Running dogs, ran!", cfg) == ["run", "dog", "ran"]
    assert rouge_tokens("Running dogs, ran!", cfg, truncate=True) == ["run", "dog"]
    # truncation applies to the candidate only
    assert rouge_n("x y z", "x y z", 1, cfg).recall == pytest.approx(2 / 3)


def test_multi_reference():
    avg = RougeConfig(use_stemming=False, word_limit=None, multi_ref="average")
    best = RougeConfig(use_stemming=False, word_limit=None, multi_ref="best")
    s = rouge_n("a b", ["a b", "c d"], 1, avg)
    assert (s.recall, s.precision, s.f1) == pytest.approx((0.5, 0.5, 0.5))
    assert rouge_n("a b", ["a b", "c d"], 1, best).f1 == 1.0


def test_empty_reference():
    with pytest.raises(EmptyReference):
        rouge_n("a", ["", "  ..."], 1, PLAIN)


toks = st.lists(st.sampled_from("abcdef"), min_size=1, max_size=12).map(" ".join)


@given(toks, toks, st.integers(1, 3))
def test_symmetry(cand, ref, n):
    a, b = rouge_n(cand, ref, n, PLAIN), rouge_n(ref, cand, n, PLAIN)
    assert (a.recall, a.precision) == pytest.approx((b.precision, b.recall))
    assert a.f1 == pytest.approx(b.f1)


@given(toks, toks, st.lists(st.sampled_from("abcdef"), max_size=5))
def test_appending_never_lowers_recall(cand, ref, extra):
    longer = cand + " " + " ".join(extra) if extra else cand
    assert rouge_n(longer, ref, 1, PLAIN).recall >= rouge_n(cand, ref, 1, PLAIN).recall - 1e-12


@given(toks, st.data())
def test_extractive_subset_recall(doc, data):
    words = doc.split()
    sub = data.draw(st.lists(st.sampled_from(range(len(words))), min_size=1, unique=True))
    ref = " ".join(words[i] for i in sub)
    assert rouge_n(doc, ref, 1, RougeConfig(word_limit=None)).recall == 1.0


def test_bootstrap():
    assert bootstrap_ci([0.3] * 7, 200) == pytest.approx((0.3, 0.3))
    vals = np.random.default_rng(0).random(30)
    lo, hi = bootstrap_ci(vals, 500, 95, seed=4)
    assert lo <= vals.mean() <= hi
    assert bootstrap_ci(vals, 500, 95, seed=4) == (lo, hi)


def test_evaluate_corpus():
    refs = {"d1": ["a b c d"], "d2": ["a b c d e"]}
    cfg = RougeConfig(use_stemming=False, word_limit=None, bootstrap_samples=50)
    one = evaluate_corpus([Summary("d1", (0,), "a b", 2)], refs, cfg)
    assert one.corpus_mean["ROUGE-1"] == one.per_doc["d1"]["ROUGE-1"]
    rep = evaluate_texts({"d1": "a b", "d2": "a b c"}, refs, cfg)
    assert rep.corpus_mean["ROUGE-1"].recall == pytest.approx((0.5 + 0.6) / 2)
    with pytest.raises(MissingReference):
        evaluate_texts({"zz": "a"}, refs, cfg)


def test_report_csv():
    refs = {"d1": ["a b"]}
    rep = evaluate_texts({"d1": "a b"}, refs, RougeConfig(n_max=1, compute_lcs=False, bootstrap_samples=10))
    assert rep.to_csv().splitlines() == [
        "doc_id,metric,recall,precision,f1",
        "d1,ROUGE-1,1.000000,1.000000,1.000000",
        "MEAN,ROUGE-1,1.000000,1.000000,1.000000",
        "ci95_low,ROUGE-1,1.000000,1.000000,1.000000",
        "ci95_high,ROUGE-1,1.000000,1.000000,1.000000",
    ]


def test_config_validation():
    with pytest.raises(ValueError):
        RougeConfig(n_max=5)
    with pytest.raises(ValueError):
        RougeConfig(multi_ref="median")
