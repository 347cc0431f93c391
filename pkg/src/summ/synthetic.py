"""Deterministic synthetic news corpora with reference summaries.

Documents are written in the same tagged layout as DUC articles, so the
regular loader reads them. Every reference is a bag of document words plus
a chosen share of words that never occur in any document, which makes the
whole-document ROUGE-1 recall known in advance.
"""
from __future__ import annotations

import random
from importlib import resources
from pathlib import Path
from xml.sax.saxutils import escape

from .textproc import stem

_CONTENT = """
storm river flood city council mayor budget school teacher student election
vote senator court judge trial jury police officer fire station hospital doctor
patient vaccine virus company market stock price oil gas energy plant factory
worker union strike contract bank loan interest rate inflation economy export
import farmer crop drought rain bridge road traffic accident airport flight
pilot airline ship port harbor navy army soldier border treaty minister
president parliament party campaign reform tax law bill agency report study
scientist research space rocket satellite launch museum artist festival music
film actor award coach team season league player stadium fans record victory
""".split()

_FUNCTION = """
the a of to in on for with by from at and that was were is are has had
will after before during while as its their his her this new
""".split()

_VERBS = """
said announced reported approved rejected opened closed raised cut expected
warned agreed planned visited won lost hit reached delayed signed
""".split()

_OOV_SYLLABLES = ["zor", "vex", "quil", "brak", "mip", "dral", "kesh", "plon", "wub", "fith"]

BUNDLED = "synthetic"


def _oov_words(count: int, forbidden_stems: set, rng: random.Random) -> list:
    out, seen = [], set()
    while len(out) < count:
        w = "".join(rng.choice(_OOV_SYLLABLES) for _ in range(3))
        st = stem(w)
        if st in forbidden_stems or st in seen:
            continue
        seen.add(st)
        out.append(w)
    return out


def _sentence(rng: random.Random, topic: list) -> str:
    words = []
    for _ in range(rng.randint(8, 22)):
        roll = rng.random()
        if roll < 0.35:
            words.append(rng.choice(_FUNCTION))
        elif roll < 0.75:
            words.append(rng.choice(topic))
        elif roll < 0.85:
            words.append(rng.choice(_VERBS))
        else:
            words.append(rng.choice(_CONTENT))
    text = " ".join(words)
    if rng.random() < 0.3:
        k = rng.randint(2, len(words) - 2)
        text = " ".join(words[:k]) + ", " + " ".join(words[k:])
    return text[0].upper() + text[1:] + "."


def make_article(doc_id: str, rng: random.Random, n_sentences: tuple = (12, 24)) -> tuple:
    """``(headline, body)`` for one random article."""
    topic = rng.sample(_CONTENT, 8)
    headline = " ".join(w.capitalize() for w in rng.sample(topic, rng.randint(3, 5)))
    body = " ".join(_sentence(rng, topic) for _ in range(rng.randint(*n_sentences)))
    return headline, body


def make_reference(body: str, rng: random.Random, length: int, oov: list) -> str:
    """`length` words: a sample of document words plus the `oov` words."""
    pool = [w.strip(".,").lower() for w in body.split()]
    inside = rng.sample(pool, min(length - len(oov), len(pool)))
    words = inside + oov
    rng.shuffle(words)
    return " ".join(words) + "\n"


def generate_corpus(root, n_docs: int = 20, seed: int = 0, refs_per_doc: int = 2,
                    ref_length: int = 100, oov_fraction: float = 0.1, docs_per_set: int = 5) -> tuple:
    """Write ``root/docs/<docset>/<id>`` articles and ``root/refs/<id>.<k>.txt``.

    With the default settings each reference has exactly
    ``round(oov_fraction * ref_length)`` words that appear in no document.
    Returns the two directory paths.
    """
    if not 0 <= oov_fraction < 1:
        raise ValueError("oov_fraction must be in [0, 1)")
    rng = random.Random(seed)
    root = Path(root)
    docs_dir, refs_dir = root / "docs", root / "refs"
    articles = []
    for k in range(n_docs):
        doc_id = f"SYN{seed:03d}-{k:04d}"
        articles.append((doc_id, *make_article(doc_id, rng)))
    forbidden = {stem(w.strip(".,").lower()) for _, h, b in articles for w in (h + " " + b).split()}
    n_oov = round(oov_fraction * ref_length)
    for k, (doc_id, headline, body) in enumerate(articles):
        docset = docs_dir / f"d{(k // docs_per_set) + 1:03d}s"
        docset.mkdir(parents=True, exist_ok=True)
        (docset / doc_id).write_text(
            f"<DOC>\n<DOCNO> {doc_id} </DOCNO>\n<HEAD>{escape(headline)}</HEAD>\n"
            f"<TEXT>\n{escape(body)}\n</TEXT>\n</DOC>\n", encoding="utf-8")
        refs_dir.mkdir(parents=True, exist_ok=True)
        for j in range(1, refs_per_doc + 1):
            oov = _oov_words(n_oov, forbidden, rng)
            (refs_dir / f"{doc_id}.{j}.txt").write_text(make_reference(body, rng, ref_length, oov), encoding="utf-8")
    return docs_dir, refs_dir


def bundled_corpus() -> tuple:
    """Paths of the packaged 20-document corpus (docs, refs)."""
    base = Path(str(resources.files("summ").joinpath("data", BUNDLED)))
    return base / "docs", base / "refs"
