"""Persistence of census results as JSON-lines files.

One file per group order, `census_<n>.jsonl`, one morphism per line
with a fixed key order, entries sorted by image sequence.  Output is
byte-deterministic so census files can be diffed across runs.  Loading
re-verifies every permutation and every stored attribute; a tampered
file fails loudly rather than poisoning downstream checks.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .enumeration import CensusRecord
from .skew_core import SkewMorphism, SkewMorphismError, verify

SCHEMA_VERSION = 1
ENV_STORE_DIR = "SKEWCYC_STORE"


class StoreError(Exception):
    """Base class for persistence failures."""


class NotComputedError(StoreError):
    """No census stored for the requested order."""


class SchemaMismatchError(StoreError):
    """Stored file uses an unknown schema version."""


class VerificationFailedOnLoadError(StoreError):
    """A stored entry does not re-verify; the file was corrupted or edited."""


@dataclass(frozen=True)
class StoreEntry:
    """One line of a census file."""

    n: int
    images: tuple[int, ...]
    order: int
    kernel_order: int
    pi: tuple[int, ...]
    coset_preserving: bool
    automorphism: bool
    class_id: int
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_morphism(cls, phi: SkewMorphism, class_id: int) -> "StoreEntry":
        return cls(
            n=phi.n,
            images=phi.images,
            order=phi.order,
            kernel_order=phi.kernel_order,
            pi=phi.pi,
            coset_preserving=phi.coset_preserving,
            automorphism=phi.automorphism,
            class_id=class_id,
        )

    def to_json(self) -> str:
        # fixed key order keeps files byte-deterministic
        payload = {
            "n": self.n,
            "images": list(self.images),
            "order": self.order,
            "kernel_order": self.kernel_order,
            "pi": list(self.pi),
            "coset_preserving": self.coset_preserving,
            "automorphism": self.automorphism,
            "class_id": self.class_id,
            "schema_version": self.schema_version,
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "StoreEntry":
        raw = json.loads(line)
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise SchemaMismatchError(
                f"schema_version {raw.get('schema_version')!r} != {SCHEMA_VERSION}"
            )
        try:
            return cls(
                n=raw["n"],
                images=tuple(raw["images"]),
                order=raw["order"],
                kernel_order=raw["kernel_order"],
                pi=tuple(raw["pi"]),
                coset_preserving=raw["coset_preserving"],
                automorphism=raw["automorphism"],
                class_id=raw["class_id"],
            )
        except (KeyError, TypeError) as exc:
            raise SchemaMismatchError(f"malformed store entry: {exc}") from exc


def _reverify(entry: StoreEntry) -> SkewMorphism:
    try:
        phi = verify(entry.n, entry.images)
    except SkewMorphismError as exc:
        raise VerificationFailedOnLoadError(
            f"stored images {entry.images} are not a skew morphism: {exc}"
        ) from exc
    mismatches = [
        name
        for name, stored, actual in [
            ("order", entry.order, phi.order),
            ("kernel_order", entry.kernel_order, phi.kernel_order),
            ("pi", entry.pi, phi.pi),
            ("coset_preserving", entry.coset_preserving, phi.coset_preserving),
            ("automorphism", entry.automorphism, phi.automorphism),
        ]
        if stored != actual
    ]
    if mismatches:
        raise VerificationFailedOnLoadError(
            f"stored metadata disagrees with recomputation for {entry.images}: "
            + ", ".join(mismatches)
        )
    return phi


class Store:
    """Directory-backed census store with an in-memory cache.

    Records are written atomically (single writer per order); readers
    re-verify on first load and are served from the cache afterwards.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._cache: dict[int, CensusRecord] = {}

    def path_for(self, n: int) -> Path:
        return self.directory / f"census_{n}.jsonl"

    def has(self, n: int) -> bool:
        return n in self._cache or self.path_for(n).exists()

    def save(self, record: CensusRecord) -> Path:
        path = self.path_for(record.n)
        lines = [
            StoreEntry.from_morphism(phi, cid).to_json()
            for phi, cid in zip(record.morphisms, record.class_ids)
        ]
        tmp = path.with_suffix(".jsonl.tmp")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(path)
        self._cache[record.n] = record
        return path

    def load(self, n: int) -> CensusRecord:
        if n in self._cache:
            return self._cache[n]
        path = self.path_for(n)
        if not path.exists():
            raise NotComputedError(f"no census stored for n={n} in {self.directory}")
        entries = [
            StoreEntry.from_json(line)
            for line in path.read_text().splitlines()
            if line.strip()
        ]
        morphisms = []
        class_ids = []
        for entry in entries:
            if entry.n != n:
                raise SchemaMismatchError(f"entry for n={entry.n} in file for n={n}")
            morphisms.append(_reverify(entry))
            class_ids.append(entry.class_id)
        # CensusRecord's own postconditions catch unsorted/duplicated/misaligned data;
        # full class-id recomputation is left to the invariant suite.
        record = CensusRecord(n=n, morphisms=tuple(morphisms), class_ids=tuple(class_ids))
        self._cache[n] = record
        return record


class MemoryStore:
    """Ephemeral store for library use and tests."""

    def __init__(self):
        self._records: dict[int, CensusRecord] = {}

    def has(self, n: int) -> bool:
        return n in self._records

    def save(self, record: CensusRecord) -> None:
        self._records[record.n] = record

    def load(self, n: int) -> CensusRecord:
        if n not in self._records:
            raise NotComputedError(f"no census computed for n={n}")
        return self._records[n]


def default_store_dir() -> Path:
    return Path(os.environ.get(ENV_STORE_DIR, "./skewcyc-store"))


def emit_table(first: int, last: int, store, fmt: str = "csv") -> str:
    """Census-count rows for orders in [first, last] that admit a proper morphism.

    csv: header `n,proper,automorphisms,total,classes`, one row per
    qualifying order.  md: the same as a markdown pipe table.
    """
    if fmt not in ("csv", "md"):
        raise ValueError(f"unknown table format {fmt!r}")
    rows = []
    for n in range(first, last + 1):
        record = store.load(n)
        if record.proper_count == 0:
            continue
        rows.append(
            (
                record.n,
                record.proper_count,
                record.automorphism_count,
                record.total,
                record.class_count,
            )
        )
    header = ("n", "proper", "automorphisms", "total", "classes")
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(str(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(v) for v in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"
