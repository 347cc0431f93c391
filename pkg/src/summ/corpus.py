"""Loading DUC-style news articles and their reference summaries."""
from __future__ import annotations

import configparser
import csv
import logging
import re
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import DataError, DuplicateId, EmptyBody, EmptyDocument, ParseError
from .textproc import Document, PreprocessOptions, normalize_terms, preprocess, read_word_list, tokenize

log = logging.getLogger(__name__)


class IoError(DataError):
    pass


@dataclass(frozen=True)
class RawArticle:
    doc_id: str
    headline: str | None
    body_text: str
    source_file: Path | None = None
    docset_id: str | None = None


@dataclass
class Dataset:
    name: str
    articles: list
    references: dict = field(default_factory=dict)
    dedup_report: list = field(default_factory=list)

    def article(self, doc_id: str) -> RawArticle:
        for a in self.articles:
            if a.doc_id == doc_id:
                return a
        raise KeyError(doc_id)

    @property
    def doc_ids(self) -> list:
        return [a.doc_id for a in self.articles]


@dataclass(frozen=True)
class CorpusConfig:
    dedup: bool = True
    headline_blocklist: frozenset = frozenset()
    no_overlap_list: frozenset = frozenset()


def _read_ids(path: Path) -> frozenset:
    return frozenset(x.upper() for x in read_word_list(path))


def load_corpus_config(path=None) -> CorpusConfig:
    """Read an INI file with a ``[corpus]`` section.

    Keys: ``dedup`` (bool), ``headline_blocklist`` and ``no_overlap_list``
    (paths to id lists, relative to the INI file). Without `path` the
    bundled defaults are used.
    """
    if path is None:
        with resources.as_file(resources.files("summ").joinpath("data", "default.ini")) as p:
            return load_corpus_config(p)
    path = Path(path)
    cp = configparser.ConfigParser()
    if not cp.read(path, encoding="utf-8"):
        raise IoError(f"cannot read config {path}")
    sec = cp["corpus"] if cp.has_section("corpus") else cp[cp.default_section]
    lists = {}
    for key in ("headline_blocklist", "no_overlap_list"):
        value = sec.get(key, "").strip()
        lists[key] = _read_ids(path.parent / value) if value else frozenset()
    return CorpusConfig(sec.getboolean("dedup", True), lists["headline_blocklist"], lists["no_overlap_list"])


# --- parsing ---------------------------------------------------------------

_BARE_AMP = re.compile(r"&(?!(?:amp|lt|gt|quot|apos|#\d+|#x[0-9a-fA-F]+);)")
_DOC_BLOCK = re.compile(r"<DOC>.*?</DOC>", re.S | re.I)
_HEADLINE_TAGS = ("HEAD", "HEADLINE", "HL", "TITLE", "H3")
_DOCSET = re.compile(r"^d\d{2,3}[a-z]?$", re.I)


def repair_ampersands(text: str) -> str:
    return _BARE_AMP.sub("&amp;", text)


def _text(el) -> str:
    return " ".join(" ".join(el.itertext()).split())


def _find_all(root, tag):
    return [el for el in root.iter() if el.tag.upper() == tag]


def parse_duc_document(raw_xml: str, repair: bool = False, source_file=None, docset_id=None) -> RawArticle:
    if repair:
        raw_xml = repair_ampersands(raw_xml)
    try:
        root = ET.fromstring(f"<ROOT>{raw_xml}</ROOT>")
    except ET.ParseError as e:
        raise ParseError(f"{source_file or '<string>'}: {e}") from None
    docnos = _find_all(root, "DOCNO")
    doc_id = _text(docnos[0]) if docnos else (Path(source_file).stem if source_file else "")
    headline = None
    for tag in _HEADLINE_TAGS:
        for el in _find_all(root, tag):
            t = _text(el)
            if tag == "HL":
                t = t.split("----")[0].strip()
            if t:
                headline = t
                break
        if headline:
            break
    bodies = _find_all(root, "TEXT")
    body = " ".join(_text(b) for b in bodies).strip()
    if not body:
        raise EmptyBody(f"{doc_id or source_file}: no body text")
    return RawArticle(doc_id, headline, body, Path(source_file) if source_file else None, docset_id)


def split_doc_blocks(text: str) -> list:
    blocks = _DOC_BLOCK.findall(text)
    return blocks or [text]


def _parse_file(path: Path, repair: bool) -> list:
    try:
        text = path.read_text(encoding="utf-8", errors="replace")
    except OSError as e:
        raise IoError(str(e)) from e
    docset = path.parent.name if _DOCSET.match(path.parent.name) else None
    return [parse_duc_document(b, repair, path, docset) for b in split_doc_blocks(text)]


def _files(root: Path) -> list:
    if not root.is_dir():
        raise IoError(f"not a directory: {root}")
    files = sorted(p for p in root.rglob("*") if p.is_file() and not p.name.startswith("."))
    if not files:
        raise IoError(f"no files under {root}")
    return files


def _body_key(body: str) -> str:
    return " ".join(body.lower().split())


def load_references(reference_root) -> dict:
    """``<doc_id>.<k>.txt`` files -> {doc_id: [texts ordered by k]}."""
    refs = {}
    pat = re.compile(r"^(.+)\.(\d+)\.txt$")
    for p in _files(Path(reference_root)):
        m = pat.match(p.name)
        if not m:
            continue
        refs.setdefault(m.group(1), []).append((int(m.group(2)), p.read_text(encoding="utf-8", errors="replace")))
    return {k: [t for _, t in sorted(v)] for k, v in sorted(refs.items())}


def _assemble(name, parsed, reference_root, dedup, headline_blocklist) -> Dataset:
    by_id = {}
    for art in parsed:
        prev = by_id.get(art.doc_id)
        if prev is not None:
            if _body_key(prev.body_text) != _body_key(art.body_text):
                raise DuplicateId(f"{art.doc_id} in {prev.source_file} and {art.source_file}")
            continue
        by_id[art.doc_id] = art

    report = []
    if dedup:
        groups = {}
        for doc_id in sorted(by_id):
            groups.setdefault(_body_key(by_id[doc_id].body_text), []).append(doc_id)
        for ids in groups.values():
            for removed in ids[1:]:
                report.append((ids[0], removed))
                del by_id[removed]
                log.info("duplicate body: kept %s, removed %s", ids[0], removed)
        report.sort()

    blocked = {x.upper() for x in headline_blocklist}
    articles = []
    for doc_id in sorted(by_id):
        art = by_id[doc_id]
        if doc_id.upper() in blocked and art.headline is not None:
            art = RawArticle(art.doc_id, None, art.body_text, art.source_file, art.docset_id)
        articles.append(art)

    refs = {}
    if reference_root is not None:
        all_refs = load_references(reference_root)
        refs = {k: v for k, v in all_refs.items() if k in by_id}
        dropped = sorted(set(all_refs) - set(refs))
        if dropped:
            log.info("references without an article ignored: %s", ", ".join(dropped))
    return Dataset(name, articles, refs, report)


def load_dataset(root, reference_root=None, dedup: bool = True, headline_blocklist=(),
                 repair: bool = True, workers: int = 1, name: str | None = None) -> Dataset:
    root = Path(root)
    files = _files(root)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(lambda p: _parse_file(p, repair), files))
    else:
        chunks = [_parse_file(p, repair) for p in files]
    parsed = [a for chunk in chunks for a in chunk]
    return _assemble(name or root.name, parsed, reference_root, dedup, headline_blocklist)


def load_plaintext_dataset(root, reference_root=None, dedup: bool = True, name: str | None = None) -> Dataset:
    """One article per file: first line is the title, the rest the body."""
    root = Path(root)
    parsed = []
    for p in _files(root):
        lines = p.read_text(encoding="utf-8", errors="replace").splitlines()
        title = lines[0].strip() if lines else ""
        body = " ".join(" ".join(lines[1:]).split())
        if not body:
            raise EmptyBody(f"{p}: no body text")
        parsed.append(RawArticle(p.name.split(".")[0], title or None, body, p, None))
    return _assemble(name or root.name, parsed, reference_root, dedup, ())


def write_dedup_report(dataset: Dataset, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kept_id", "removed_id"])
        w.writerows(dataset.dedup_report)


# --- titles ----------------------------------------------------------------

def effective_title(article: RawArticle, doc: Document, stopwords=None) -> list:
    """Normalized headline terms, or the first sentence's terms when the
    headline is missing or shares no term with the body.
    """
    if doc.n == 0:
        raise EmptyDocument(doc.doc_id)
    if article.headline:
        terms = normalize_terms(tokenize(article.headline), doc.options_applied, stopwords)
        vocab = {t for s in doc.sentences for t in s.terms}
        if vocab.intersection(terms):
            return terms
        log.debug("%s: headline has no overlap with the body; using first sentence", article.doc_id)
    for s in doc.sentences:
        if s.terms:
            return list(s.terms)
    return list(doc.sentences[0].terms)


def prepare_document(article: RawArticle, options: PreprocessOptions = PreprocessOptions(),
                     stopwords=None) -> Document:
    """Preprocess an article and attach its effective title terms."""
    doc = preprocess(article.doc_id, article.body_text, options, stopwords=stopwords)
    return doc.with_title(effective_title(article, doc, stopwords))
