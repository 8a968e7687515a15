"""Content-addressed, file-backed session store for the HTTP service.

Ids are hash prefixes of the content that defines an object, so re-uploading
identical bytes (or re-posting an identical ranking request) always yields
the same id. Everything lives as flat files under the root directory and is
re-indexed on startup; writes go through a temp file plus atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .dataset import Dataset, load_csv

ID_LENGTH = 16


def content_id(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:ID_LENGTH]


def ranking_id(dataset_id: str, request: dict) -> str:
    canonical = json.dumps(request, sort_keys=True, separators=(",", ":"))
    return content_id(f"{dataset_id}:{canonical}".encode("utf-8"))


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class StoredRanking:
    ranking_id: str
    dataset_id: str
    request: dict
    preview: list
    label_json: bytes


class SessionStore:
    """Datasets and rankings persisted under ``root``, indexed in memory."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.datasets_dir = self.root / "datasets"
        self.rankings_dir = self.root / "rankings"
        self.datasets_dir.mkdir(parents=True, exist_ok=True)
        self.rankings_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._datasets: dict[str, Dataset] = {}
        self._names: dict[str, str] = {}
        self._rankings: dict[str, StoredRanking] = {}
        self._scan()

    def _scan(self) -> None:
        for meta_path in sorted(self.datasets_dir.glob("*.meta.json")):
            meta = json.loads(meta_path.read_text("utf-8"))
            csv_path = self.datasets_dir / f"{meta['dataset_id']}.csv"
            if csv_path.exists():
                self._names[meta["dataset_id"]] = meta.get("name", meta["dataset_id"])
        for path in sorted(self.rankings_dir.glob("*.json")):
            doc = json.loads(path.read_text("utf-8"))
            stored = StoredRanking(
                ranking_id=doc["ranking_id"],
                dataset_id=doc["dataset_id"],
                request=doc["request"],
                preview=doc["preview"],
                label_json=doc["label"].encode("utf-8"),
            )
            self._rankings[stored.ranking_id] = stored

    # -- datasets ----------------------------------------------------------

    def put_dataset(self, data: bytes, name: Optional[str] = None) -> tuple[str, Dataset]:
        """Parse and persist CSV bytes; idempotent on identical content."""
        dataset = load_csv(data)
        dataset_id = content_id(data)
        with self._lock:
            if dataset_id not in self._names:
                _atomic_write(self.datasets_dir / f"{dataset_id}.csv", data)
                meta = {"dataset_id": dataset_id, "name": name or dataset_id}
                _atomic_write(
                    self.datasets_dir / f"{dataset_id}.meta.json",
                    json.dumps(meta, sort_keys=True).encode("utf-8"),
                )
                self._names[dataset_id] = name or dataset_id
            self._datasets[dataset_id] = dataset
        return dataset_id, dataset

    def get_dataset(self, dataset_id: str) -> Optional[Dataset]:
        with self._lock:
            cached = self._datasets.get(dataset_id)
        if cached is not None:
            return cached
        csv_path = self.datasets_dir / f"{dataset_id}.csv"
        if dataset_id not in self._names or not csv_path.exists():
            return None
        dataset = load_csv(csv_path.read_bytes())
        with self._lock:
            self._datasets[dataset_id] = dataset
        return dataset

    def dataset_name(self, dataset_id: str) -> Optional[str]:
        return self._names.get(dataset_id)

    def list_datasets(self) -> list[tuple[str, str]]:
        with self._lock:
            return sorted(self._names.items(), key=lambda pair: (pair[1], pair[0]))

    # -- rankings ----------------------------------------------------------

    def put_ranking(self, stored: StoredRanking) -> None:
        doc = {
            "ranking_id": stored.ranking_id,
            "dataset_id": stored.dataset_id,
            "request": stored.request,
            "preview": stored.preview,
            "label": stored.label_json.decode("utf-8"),
        }
        with self._lock:
            _atomic_write(
                self.rankings_dir / f"{stored.ranking_id}.json",
                json.dumps(doc, sort_keys=True).encode("utf-8"),
            )
            self._rankings[stored.ranking_id] = stored

    def get_ranking(self, rid: str) -> Optional[StoredRanking]:
        with self._lock:
            return self._rankings.get(rid)
