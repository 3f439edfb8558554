"""On-disk cache of certificate documents keyed by (n, config hash)."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .certificates import classify
from .config import Config
from .documents import CertificateDocument, DocumentError, decode, document_from, encode


class DocumentCache:
    def __init__(self, path: Path | None):
        self.path = path
        self._entries: dict[str, str] = {}
        self._dirty = False
        if path is not None and path.exists():
            try:
                loaded = json.loads(path.read_text(encoding="utf-8"))
            except json.JSONDecodeError:
                loaded = {}
            if isinstance(loaded, dict):
                self._entries = {k: v for k, v in loaded.items() if isinstance(v, str)}

    @staticmethod
    def key(n: int, cfg: Config) -> str:
        return f"{n}:{cfg.config_hash}"

    def get(self, n: int, cfg: Config) -> CertificateDocument | None:
        text = self._entries.get(self.key(n, cfg))
        if text is None:
            return None
        try:
            doc = decode(text)
        except DocumentError:
            return None
        # entries written under another config are never reused
        return doc if doc.config_hash == cfg.config_hash and doc.n == n else None

    def put(self, doc: CertificateDocument, cfg: Config) -> None:
        self._entries[self.key(doc.n, cfg)] = encode(doc)
        self._dirty = True

    def flush(self) -> None:
        if self.path is None or not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(self._entries, fh, sort_keys=True)
        os.replace(tmp, self.path)
        self._dirty = False


def classify_document(n: int, cfg: Config, cache: DocumentCache | None = None) -> CertificateDocument:
    if cache is not None:
        hit = cache.get(n, cfg)
        if hit is not None:
            return hit
    doc = document_from(classify(n, cfg), cfg)
    if cache is not None:
        cache.put(doc, cfg)
    return doc
