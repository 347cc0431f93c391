"""Sentence splitting, tokenization and term normalization.

Everything downstream works on a :class:`Document` (sentences with their
surface tokens and normalized terms) and on the term-sentence count matrix
built from it by :func:`build_term_matrix`.
"""
from __future__ import annotations

import os
import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np
from nltk.stem.porter import PorterStemmer

from .errors import EmptyDocument, EmptyVocabulary

STOPWORDS_ENV = "SUMM_STOPWORDS"

_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def read_word_list(path) -> frozenset:
    """Read a one-word-per-line UTF-8 list; ``#`` starts a comment line."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(
            line.strip().lower()
            for line in fh
            if line.strip() and not line.lstrip().startswith("#")
        )


def _packaged(name):
    return resources.files("summ").joinpath("data", name)


@lru_cache(maxsize=None)
def _load_stopwords(path) -> frozenset:
    if path is None:
        with resources.as_file(_packaged("stopwords_english.txt")) as p:
            return read_word_list(p)
    return read_word_list(path)


def load_stopwords(path=None) -> frozenset:
    """Stopword set from `path`, else ``$SUMM_STOPWORDS``, else the bundled NLTK list."""
    if path is None:
        path = os.environ.get(STOPWORDS_ENV) or None
    return _load_stopwords(None if path is None else str(path))


@lru_cache(maxsize=None)
def load_abbreviations() -> frozenset:
    with resources.as_file(_packaged("abbreviations.txt")) as p:
        return read_word_list(p)


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Classic Porter stem of a lowercase word."""
    return _stemmer.stem(word, to_lowercase=False)


@dataclass(frozen=True)
class PreprocessOptions:
    """Preprocessing switches. ``stem`` is S and ``remove_stopwords`` is W.

    ``length_basis`` chooses what |s| means for length normalization:
    ``"surface"`` counts surface words, ``"normalized"`` counts the
    sentence's normalized terms.
    """

    stem: bool = False
    remove_stopwords: bool = False
    lowercase: bool = True
    strip_punctuation: bool = True
    length_basis: str = "surface"

    def __post_init__(self):
        if self.length_basis not in ("surface", "normalized"):
            raise ValueError(f"unknown length_basis {self.length_basis!r}")

    @classmethod
    def from_flags(cls, flags: str, **kw) -> "PreprocessOptions":
        flags = flags.upper()
        return cls(stem="S" in flags, remove_stopwords="W" in flags, **kw)


@dataclass(frozen=True)
class Sentence:
    index: int
    raw_text: str
    surface_tokens: tuple
    word_count: int
    terms: tuple = ()


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple
    title_terms: tuple = ()
    options_applied: PreprocessOptions = field(default_factory=PreprocessOptions)

    def __post_init__(self):
        if not self.sentences:
            raise EmptyDocument(f"document {self.doc_id} has no sentences")

    @property
    def n(self) -> int:
        return len(self.sentences)

    def eligible(self) -> list:
        """Indices of sentences with at least one normalized term."""
        return [s.index for s in self.sentences if s.terms]

    def sentence_length(self, i: int) -> int:
        s = self.sentences[i]
        if self.options_applied.length_basis == "normalized":
            return max(len(s.terms), 1)
        return max(s.word_count, 1)

    @property
    def word_count(self) -> int:
        return sum(s.word_count for s in self.sentences)

    def text(self) -> str:
        return " ".join(s.raw_text for s in self.sentences)

    def with_title(self, title_terms) -> "Document":
        return Document(self.doc_id, self.sentences, tuple(title_terms), self.options_applied)

    def subset(self, order) -> "Document":
        """New document made of the sentences at `order`, re-indexed 0..k-1."""
        sents = tuple(
            Sentence(k, s.raw_text, s.surface_tokens, s.word_count, s.terms)
            for k, s in enumerate(self.sentences[i] for i in order)
        )
        return Document(self.doc_id, sents, self.title_terms, self.options_applied)


# --- splitting -----------------------------------------------------------

_BOUNDARY = re.compile(r"""[.!?]+['"’”)\]]*(?=\s+['"‘“(\[]*[A-Z0-9])""")


def split_sentences(text: str) -> list:
    text = " ".join(text.split())
    if not text:
        return []
    abbrevs = load_abbreviations()
    out, start = [], 0
    for m in _BOUNDARY.finditer(text):
        if m.group().startswith(".") and m.group().rstrip("'\"’”)]") == ".":
            prev = text[start:m.start()].rsplit(" ", 1)[-1]
            word = prev.lstrip("'\"‘“([")
            # initials ("J. Smith") and listed abbreviations never end a sentence
            if word.lower() in abbrevs or (len(word) == 1 and word.isupper()):
                continue
        out.append(text[start:m.end()].strip())
        start = m.end()
    tail = text[start:].strip()
    if tail:
        out.append(tail)
    return out


# --- tokenizing ----------------------------------------------------------

def _is_alnum(ch: str) -> bool:
    return ch.isalnum()


def is_punctuation(token: str) -> bool:
    return not any(_is_alnum(c) for c in token)


def _runs(chars: str) -> list:
    return [m.group() for m in re.finditer(r"(.)\1*", chars, re.S)]


_POSSESSIVE = re.compile(r"^(.+?)(['’][sS])$")


def tokenize(sentence_text: str) -> list:
    tokens = []
    for chunk in sentence_text.split():
        if is_punctuation(chunk):
            tokens.append(chunk)
            continue
        lo = 0
        while not _is_alnum(chunk[lo]):
            lo += 1
        hi = len(chunk)
        while not _is_alnum(chunk[hi - 1]):
            hi -= 1
        core = chunk[lo:hi]
        tokens.extend(_runs(chunk[:lo]))
        m = _POSSESSIVE.match(core)
        if m and _is_alnum(m.group(1)[-1]):
            tokens.extend(m.groups())
        else:
            tokens.append(core)
        tokens.extend(_runs(chunk[hi:]))
    return tokens


def is_clitic(token: str) -> bool:
    return len(token) == 2 and token[0] in "'’" and token[1] in "sS"


def count_words(text: str) -> int:
    """Surface words: whitespace chunks holding at least one letter or digit."""
    return sum(1 for chunk in text.split() if not is_punctuation(chunk))


def _fold(token: str) -> str:
    return unicodedata.normalize("NFKD", token).encode("ascii", "ignore").decode("ascii")


def normalize_terms(tokens, options: PreprocessOptions = PreprocessOptions(), stopwords=None) -> list:
    if options.remove_stopwords and stopwords is None:
        stopwords = load_stopwords()
    out = []
    for tok in tokens:
        t = _fold(tok)
        if options.lowercase:
            t = t.lower()
        if options.strip_punctuation:
            if is_punctuation(t):
                continue
            t = t.strip("".join(c for c in set(t) if not c.isalnum()))
        if not t:
            continue
        if options.remove_stopwords and t in stopwords:
            continue
        if options.stem:
            t = stem(t)
        out.append(t)
    return out


def make_sentence(index: int, raw_text: str, options: PreprocessOptions, stopwords=None) -> Sentence:
    toks = tokenize(raw_text)
    wc = sum(1 for t in toks if not is_punctuation(t) and not is_clitic(t))
    return Sentence(index, raw_text, tuple(toks), wc, tuple(normalize_terms(toks, options, stopwords)))


def preprocess(doc_id: str, body_text: str, options: PreprocessOptions = PreprocessOptions(),
               title: str | None = None, stopwords=None) -> Document:
    """Split, tokenize and normalize a document body into a :class:`Document`.

    Sentences without any surface word are dropped; sentences whose words
    all normalize away are kept (they are simply never selectable).
    """
    raw = [s for s in split_sentences(body_text) if count_words(s)]
    if not raw:
        raise EmptyDocument(f"document {doc_id} has no sentences")
    sents = tuple(make_sentence(i, s, options, stopwords) for i, s in enumerate(raw))
    title_terms = ()
    if title:
        title_terms = tuple(normalize_terms(tokenize(title), options, stopwords))
    return Document(doc_id, sents, title_terms, options)


def title_terms_for(title: str, options: PreprocessOptions, stopwords=None) -> list:
    return normalize_terms(tokenize(title), options, stopwords)


@dataclass(frozen=True, eq=False)
class TermSentenceMatrix:
    """Terms x sentences occurrence counts."""

    terms: tuple
    counts: np.ndarray

    @property
    def m(self) -> int:
        return self.counts.shape[0]

    @property
    def n(self) -> int:
        return self.counts.shape[1]

    @property
    def presence(self) -> np.ndarray:
        return (self.counts > 0).astype(np.int64)

    @property
    def eligible(self) -> np.ndarray:
        """Boolean mask of sentences with a non-empty column."""
        return self.counts.sum(axis=0) > 0

    def index(self) -> dict:
        return {t: j for j, t in enumerate(self.terms)}


def build_term_matrix(doc: Document) -> TermSentenceMatrix:
    terms = sorted({t for s in doc.sentences for t in s.terms})
    if not terms:
        raise EmptyVocabulary(f"document {doc.doc_id} has no terms after preprocessing")
    row = {t: j for j, t in enumerate(terms)}
    counts = np.zeros((len(terms), doc.n), dtype=np.int64)
    for s in doc.sentences:
        for t in s.terms:
            counts[row[t], s.index] += 1
    counts.setflags(write=False)
    return TermSentenceMatrix(tuple(terms), counts)


def document_from_sentences(doc_id: str, sentences, options: PreprocessOptions = PreprocessOptions(),
                            title: str | None = None, stopwords=None) -> Document:
    """Build a document from already-split sentence strings."""
    sents = tuple(make_sentence(i, s, options, stopwords) for i, s in enumerate(sentences))
    tt = tuple(title_terms_for(title, options, stopwords)) if title else ()
    return Document(doc_id, sents, tt, options)
