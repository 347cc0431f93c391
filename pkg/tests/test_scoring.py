import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from summ.errors import DomainError
from summ.scoring import (ScoringParams, TermWeights, combined_score, inverse_document_frequency, r_normalize,
                          sentence_raw_score, sentence_raw_scores, term_frequency, term_weights)
from summ.textproc import build_term_matrix, document_from_sentences


def matrix_of(*sentences):
    return build_term_matrix(document_from_sentences("d", list(sentences)))


def test_idf_examples():
    m = matrix_of("a b", "a", "a", "a", "a", "a", "a b", "a")
    idf = inverse_document_frequency(m).as_dict(m.terms)
    assert idf["a"] == 0.0
    assert idf["b"] == pytest.approx(math.log(4), rel=1e-12)
    assert inverse_document_frequency(matrix_of("x y")).values.tolist() == [0.0, 0.0]


def test_log_base_keeps_ranking():
    m = matrix_of("a b c", "a b", "a", "d c", "e")
    for beta in (0.5, 1.0, 1.7):
        p = ScoringParams(beta=beta)
        tf = term_frequency(m)
        e = combined_score(tf, inverse_document_frequency(m), p).values
        two = combined_score(tf, inverse_document_frequency(m, np.log2), p).values
        assert np.argsort(e, kind="stable").tolist() == np.argsort(two, kind="stable").tolist()


def test_tf_scopes():
    m = matrix_of("a b", "b c", "the")
    assert term_frequency(m).as_dict(m.terms)["b"] == 2
    per = term_frequency(m, "per_sentence").values
    row_b = m.terms.index("b")
    assert per[row_b].tolist() == [1, 1, 0]
    assert per[:, 2].sum() == 1  # "the" is a term here; nothing else lands in that column


def test_combined_examples():
    tf = TermWeights(np.array([2.0]))
    idf = TermWeights(np.array([math.log(4)]))
    v = combined_score(tf, idf, ScoringParams(alpha=1.2, beta=1.2)).values[0]
    assert v == pytest.approx(2 ** 1.2 * math.log(4) ** 1.2, rel=1e-12)
    # 2^1.2 = 2.2974 and (ln 4)^1.2 = 1.4799, so the product is 3.3999
    assert v == pytest.approx(3.3999, abs=1e-4)
    assert combined_score(tf, idf, ScoringParams(beta=0.0)).values[0] == 2.0
    assert combined_score(tf, idf, ScoringParams(metric="tf", alpha=2)).values[0] == 4.0


def test_zero_conventions():
    tf = TermWeights(np.array([0.0, 3.0]))
    idf = TermWeights(np.array([0.0, 1.0]))
    assert combined_score(tf, idf, ScoringParams(alpha=0, beta=0)).values.tolist() == [1.0, 1.0]
    with pytest.raises(DomainError):
        combined_score(tf, idf, ScoringParams(alpha=-1))
    out = combined_score(TermWeights(np.array([1.0, 2.0])), idf, ScoringParams(beta=-1)).values
    assert out.tolist() == [0.0, 2.0]


def test_stfidf_absent_pairs_stay_zero():
    m = matrix_of("a b", "b c")
    w = term_weights(m, ScoringParams(metric="stfidf", alpha=-1.0)).values
    assert w.shape == (3, 2)
    assert w[m.terms.index("a"), 1] == 0.0 and w[m.terms.index("c"), 0] == 0.0


def test_raw_score_examples():
    m = matrix_of("b b c", "x")
    w = np.zeros(m.m)
    w[m.terms.index("b")], w[m.terms.index("c")] = 1.0, 3.0
    tw = TermWeights(w)
    assert sentence_raw_score(0, m, tw) == 5.0
    assert sentence_raw_score(0, m, tw, distinct=True) == 4.0
    assert sentence_raw_score(1, m, tw) == 0.0
    assert sentence_raw_scores(m, tw).tolist() == [5.0, 0.0]


def test_r_normalize_examples():
    assert r_normalize(5, 10, 1) == 0.5
    assert r_normalize(5, 10, 0) == 5
    assert r_normalize(5, 10, -0.4) == pytest.approx(12.559, abs=1e-3)
    with pytest.raises(DomainError):
        r_normalize(5, 0, 1)
    np.testing.assert_allclose(r_normalize(np.array([4.0, 9.0]), np.array([4, 9]), 0.5), [2.0, 3.0])


pos = st.floats(1e-6, 1e6, allow_nan=False)


@given(pos, st.integers(1, 500), st.floats(-3, 3))
def test_scale_covariance(c, length, r):
    raw = 7.5
    assert r_normalize(c * raw, length, r) == pytest.approx(c * r_normalize(raw, length, r), rel=1e-12)


@given(st.lists(st.floats(0.01, 10), min_size=1, max_size=5))
def test_adding_positive_term_increases_score(weights):
    words = [f"t{k}" for k in range(len(weights))]
    m = matrix_of(" ".join(words[:-1]) or "filler", " ".join(words))
    w = np.zeros(m.m)
    for word, v in zip(words, weights):
        w[m.terms.index(word)] = v
    s = sentence_raw_scores(m, TermWeights(w))
    if len(words) > 1:
        assert s[1] > s[0]


def test_params_validation():
    with pytest.raises(ValueError):
        ScoringParams(r=float("nan"))
    with pytest.raises(ValueError):
        ScoringParams(metric="bm25")
