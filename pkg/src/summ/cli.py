"""``summ`` command line: run sweeps, evaluate summaries, measure limits."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus import (Dataset, load_corpus_config, load_dataset, load_plaintext_dataset, load_references,
                     prepare_document, write_dedup_report)
from .errors import DataError, DomainError, SolverError
from .harness import (METHODS, SweepSpec, docs_as_summaries, export_frequencies, flag_subsets,
                      parse_range, results_to_csv, run_sweep)
from .ilp.summarize import NORM_SCOPES
from .rouge import RougeConfig, evaluate_texts
from .scoring import METRICS
from .textproc import PreprocessOptions, load_stopwords

log = logging.getLogger("summ")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag_grid(text: str) -> tuple:
    """``SW`` one set; ``S,SW`` several; ``SWDU*`` every subset; ``-`` no flags."""
    grid = []
    for part in text.split(","):
        part = part.strip()
        if part.endswith("*"):
            grid.extend(flag_subsets(part[:-1]))
        else:
            grid.append("" if part == "-" else part)
    return tuple(grid)


def _load(args) -> Dataset:
    cfg = load_corpus_config(args.config)
    dedup = cfg.dedup and not args.no_dedup
    root = Path(args.dataset)
    fmt = args.format
    if fmt == "auto":
        first = next((p for p in sorted(root.rglob("*")) if p.is_file()), None)
        fmt = "duc" if first is not None and "<DOC" in first.read_text(errors="replace")[:4096].upper() else "plain"
    if fmt == "duc":
        ds = load_dataset(root, args.refs, dedup=dedup, headline_blocklist=cfg.headline_blocklist,
                          workers=max(args.workers, 1))
    else:
        ds = load_plaintext_dataset(root, args.refs, dedup=dedup)
    if args.dedup_report:
        write_dedup_report(ds, args.dedup_report)
    return ds


def _rouge_config(args, **kw) -> RougeConfig:
    return RougeConfig(n_max=args.ngram, use_stemming=not args.no_rouge_stem, word_limit=kw.get("word_limit", args.limit),
                       bootstrap_samples=args.bootstrap, seed=args.seed, multi_ref=args.multi_ref)


def _write(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_run(args) -> int:
    spec = SweepSpec(
        method=args.method, flag_grid=_flag_grid(args.flags), r_range=parse_range(args.r),
        alpha_range=parse_range(args.alpha), beta_range=parse_range(args.beta),
        threshold_range=parse_range(args.threshold), word_limit=args.limit, metric=args.metric,
        depth=args.depth, norm_scope=args.norm_scope, lp_backend=args.lp_backend,
        node_limit=args.node_limit, headline_metric=args.headline_metric)
    ds = _load(args)
    rows = run_sweep(spec, ds, _rouge_config(args), workers=args.workers, stopwords=load_stopwords())
    _write(results_to_csv(rows), args.out)
    return 0


def cmd_eval(args) -> int:
    texts = {}
    for p in sorted(Path(args.summaries).iterdir()):
        if p.is_file():
            texts[p.name.split(".")[0]] = p.read_text(encoding="utf-8", errors="replace")
    report = evaluate_texts(texts, load_references(args.refs), _rouge_config(args))
    _write(report.to_csv(), args.out)
    return 0


def cmd_limit(args) -> int:
    ds = _load(args)
    report = docs_as_summaries(ds, _rouge_config(args, word_limit=None), title_filtered=args.title_filter,
                               options=PreprocessOptions.from_flags(args.flags), stopwords=load_stopwords())
    _write(report.to_csv(), args.out)
    return 0


def cmd_freq(args) -> int:
    opts = PreprocessOptions()
    docs = [prepare_document(a, opts) for a in _load(args).articles]
    subtract = None
    if args.subtract:
        args.dataset = args.subtract
        subtract = [prepare_document(a, opts) for a in _load(args).articles]
    lines = ["word,count"] + [f"{w},{c}" for w, c in export_frequencies(docs, args.top, subtract)]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="summ", description="Unsupervised extractive summarization experiments.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, refs_required=True):
        sp.add_argument("--dataset", required=True, help="directory of articles")
        sp.add_argument("--refs", required=refs_required, help="directory of <doc_id>.<k>.txt references")
        sp.add_argument("--format", choices=("auto", "duc", "plain"), default="auto")
        sp.add_argument("--config", help="INI file with a [corpus] section")
        sp.add_argument("--no-dedup", action="store_true")
        sp.add_argument("--dedup-report", help="write kept_id,removed_id CSV here")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", default="-")

    def rouge_opts(sp):
        sp.add_argument("--limit", type=int, default=100, help="summary word limit")
        sp.add_argument("--seed", type=int, default=0, help="bootstrap seed")
        sp.add_argument("--bootstrap", type=int, default=1000)
        sp.add_argument("--ngram", type=int, default=4)
        sp.add_argument("--multi-ref", choices=("average", "best"), default="average")
        sp.add_argument("--no-rouge-stem", action="store_true")

    run = sub.add_parser("run", help="parameter sweep")
    common(run)
    rouge_opts(run)
    run.add_argument("--method", choices=METHODS, default="greedy")
    run.add_argument("--flags", default="-", help="e.g. SW, S,SW or SWDU* for every subset")
    run.add_argument("--metric", choices=METRICS, default="tfidf")
    run.add_argument("--r", default="0", help="a:b:step")
    run.add_argument("--alpha", default="1")
    run.add_argument("--beta", default="1")
    run.add_argument("--threshold", default="100")
    run.add_argument("--depth", type=int, default=1)
    run.add_argument("--norm-scope", choices=NORM_SCOPES, default="sentence")
    run.add_argument("--lp-backend", choices=("simplex", "highs"), default="simplex")
    run.add_argument("--node-limit", type=int, default=200_000)
    run.add_argument("--headline-metric", default="ROUGE-1")
    run.set_defaults(func=cmd_run)

    ev = sub.add_parser("eval", help="score a directory of summaries")
    ev.add_argument("--summaries", required=True, help="directory of <doc_id>[.ext] files")
    ev.add_argument("--refs", required=True)
    ev.add_argument("--out", default="-")
    rouge_opts(ev)
    ev.set_defaults(func=cmd_eval)

    lim = sub.add_parser("limit", help="whole documents as summaries")
    common(lim)
    rouge_opts(lim)
    lim.add_argument("--title-filter", action="store_true", help="use the title-reduced text")
    lim.add_argument("--flags", default="SW", help="preprocessing for the title reduction")
    lim.set_defaults(func=cmd_limit)

    fq = sub.add_parser("freq", help="word frequencies")
    common(fq, refs_required=False)
    fq.add_argument("--top", type=int, default=100)
    fq.add_argument("--subtract", help="directory of articles whose words are removed")
    fq.set_defaults(func=cmd_freq)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command")
        logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
        return args.func(args)
    except UsageError as e:
        print(f"summ: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except DataError as e:
        print(f"summ: data error: {e}", file=sys.stderr)
        return 2
    except SolverError as e:
        print(f"summ: solver failure: {e}", file=sys.stderr)
        return 3
    except (DomainError, ValueError) as e:
        print(f"summ: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
