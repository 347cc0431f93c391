import pytest

from summ.corpus import load_dataset
from summ.errors import DegenerateVariance
from summ.greedy import Summary
from summ.harness import (ResultRow, SweepSpec, annotate_best, docs_as_summaries, export_frequencies,
                          flag_subsets, frange, length_stats, parse_range, pearson, results_to_csv, run_sweep)
from summ.rouge import RougeConfig
from summ.synthetic import generate_corpus
from summ.textproc import preprocess

FAST = RougeConfig(bootstrap_samples=0)


def test_ranges():
    assert frange((-1, 1, 0.5)) == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert frange((0.1, 0.3, 0.1)) == [0.1, 0.2, 0.3]
    assert frange((100, 150, 10)) == [100.0, 110.0, 120.0, 130.0, 140.0, 150.0]
    assert parse_range("-0.4") == (-0.4, -0.4, 1.0)
    assert parse_range("0:2:0.5") == (0.0, 2.0, 0.5)
    for bad in [(0, 1, 0), (1, 0, 0.1), (0, float("inf"), 1)]:
        with pytest.raises(ValueError):
            frange(bad)


def test_flags():
    assert flag_subsets("SW") == ["", "S", "W", "SW"]
    assert len(flag_subsets()) == 16
    assert SweepSpec(flag_grid=("ws", "SW")).flag_grid == ("SW",)
    with pytest.raises(ValueError):
        SweepSpec(flag_grid=("X",))


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(method="lexrank")
    with pytest.raises(ValueError):
        SweepSpec(method="ilp_budget", threshold_range=(50, 50, 1))
    assert len(SweepSpec(r_range=(0, 1, 1), threshold_range=(100, 150, 10)).grid()) == 12


def test_single_point_gives_one_row_per_metric(bundled):
    rows = run_sweep(SweepSpec(), bundled, FAST)
    assert [r.metric for r in rows] == ["ROUGE-1", "ROUGE-2", "ROUGE-3", "ROUGE-4", "ROUGE-L"]
    assert all(r.best for r in rows)
    assert all(r.avg_summary_len <= 100 for r in rows)


def test_r_ends_and_threshold_layout(bundled):
    rows = run_sweep(SweepSpec(r_range=(0, 1, 1), flag_grid=("", "SW")), bundled, FAST)
    assert [(r.flags, r.r) for r in rows if r.metric == "ROUGE-1"] == [("", 0.0), ("", 1.0), ("SW", 0.0), ("SW", 1.0)]
    spec = SweepSpec(method="ilp_budget", threshold_range=(100, 150, 10))
    rows = run_sweep(spec, bundled, RougeConfig(n_max=1, compute_lcs=False, bootstrap_samples=0))
    assert [r.threshold for r in rows] == [100, 110, 120, 130, 140, 150]
    assert rows == run_sweep(spec, bundled, RougeConfig(n_max=1, compute_lcs=False, bootstrap_samples=0))


def test_every_method_runs(bundled):
    cfg = RougeConfig(n_max=1, compute_lcs=False, bootstrap_samples=0)
    for method in ("ilp_set_cover", "ilp_score", "title_depth", "title_bfs", "title_filter_ilp"):
        rows = run_sweep(SweepSpec(method=method, flag_grid=("SW",)), bundled, cfg)
        assert len(rows) == 1 and 0 < rows[0].f1 < 1 and rows[0].avg_summary_len <= 100


def test_annotate_best_reports_ties():
    def row(r, f1):
        return ResultRow("greedy", "", r, 1.0, 1.0, 100, "ROUGE-1", f1, f1, f1, 100.0, 0.0, 20.0)
    rows = annotate_best([row(0.0, 0.5), row(0.5, 0.5), row(1.0, 0.4)])
    assert [r.best for r in rows] == [True, True, False]


def test_csv_layout():
    row = ResultRow("greedy", "SW", -0.4, 1.2, 1.2, 100, "ROUGE-1", 0.5, 0.25, 1 / 3, 99.0, 1.5, 20.0, True)
    assert results_to_csv([row]).splitlines() == [
        "method,flags,r,alpha,beta,threshold,metric,recall,precision,f1,avg_summary_len,std_summary_len,"
        "avg_sentence_len,best",
        "greedy,SW,-0.400000,1.200000,1.200000,100,ROUGE-1,0.500000,0.250000,0.333333,99.000000,1.500000,"
        "20.000000,1",
    ]


def test_docs_as_summaries(tmp_path):
    docs, refs = generate_corpus(tmp_path, n_docs=6, seed=3, oov_fraction=0.1)
    ds = load_dataset(docs, refs)
    rep = docs_as_summaries(ds, FAST)
    assert rep.corpus_mean["ROUGE-1"].recall == pytest.approx(0.9, abs=1e-12)
    docs, refs = generate_corpus(tmp_path / "clean", n_docs=4, seed=1, oov_fraction=0.0)
    rep = docs_as_summaries(load_dataset(docs, refs), FAST)
    assert all(v["ROUGE-1"].recall == 1.0 for v in rep.per_doc.values())
    filtered = docs_as_summaries(ds, FAST, title_filtered=True)
    assert filtered.corpus_mean["ROUGE-1"].recall <= rep.corpus_mean["ROUGE-1"].recall + 0.1


def test_length_stats():
    s = [Summary("a", (), "", 100), Summary("b", (), "", 100)]
    assert length_stats(s) == {"avg": 100.0, "std": 0.0}
    assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert pearson([3, 1, 2], [3, 1, 2]) == pytest.approx(1.0)
    with pytest.raises(DegenerateVariance):
        length_stats(s, [0.3, 0.4])
    assert length_stats([Summary("a", (), "", 4), Summary("b", (), "", 6)], [0.1, 0.2])["std"] == 1.0


def test_export_frequencies():
    a = preprocess("a", "a a b")
    assert export_frequencies([a], 2) == [("a", 2), ("b", 1)]
    assert export_frequencies([a], 5, subtract=[preprocess("x", "a")]) == [("b", 1)]
    docs = [preprocess("1", "The cat sat."), preprocess("2", "The dog, the cat."), preprocess("3", "Dog!")]
    joined = preprocess("all", "The cat sat. The dog, the cat. Dog!")
    assert export_frequencies(docs, 10) == export_frequencies([joined], 10)
    with pytest.raises(ValueError):
        export_frequencies([a], 0)
