"""Local store of best-known minimum distances for [n, k]_q linear codes.

The bundled CSV holds the handful of tuples this package reproduces; point
``GMPKIT_BKP`` (or ``--bkp``) at a larger file to extend it.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

FIELDS = ("q", "n", "k", "d_best", "source")
ENV_VAR = "GMPKIT_BKP"


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class BkpEntry:
    q: int
    n: int
    k: int
    d_best: int
    source: str = ""

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise RegistryError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.d_best < 1:
            raise RegistryError(f"d_best must be >= 1, got {self.d_best}")


@dataclass(frozen=True)
class Verdict:
    status: str  # best-known | suboptimal | exceeds-reference | unknown
    d: int
    d_best: int | None = None

    @property
    def gap(self) -> int | None:
        return None if self.d_best is None else self.d_best - self.d

    def __str__(self) -> str:
        if self.status == "suboptimal":
            return f"suboptimal({self.gap})"
        return self.status


class BkpStore:
    def __init__(self, entries: list[BkpEntry] | None = None) -> None:
        self._entries: dict[tuple[int, int, int], BkpEntry] = {}
        for e in entries or []:
            self._entries[(e.q, e.n, e.k)] = e

    @classmethod
    def load(cls, path: str | Path) -> BkpStore:
        try:
            with open(path, newline="", encoding="utf-8") as fh:
                return cls._read(fh, str(path))
        except OSError as exc:
            raise RegistryError(f"{path}: {exc.strerror}") from None

    @classmethod
    def bundled(cls) -> BkpStore:
        ref = resources.files("gmpkit") / "data" / "bkp.csv"
        with ref.open("r", encoding="utf-8", newline="") as fh:
            return cls._read(fh, "bundled bkp.csv")

    @classmethod
    def default(cls, path: str | Path | None = None) -> BkpStore:
        """Explicit path, else ``$GMPKIT_BKP``, else the bundled table."""
        path = path or os.environ.get(ENV_VAR)
        return cls.load(path) if path else cls.bundled()

    @classmethod
    def _read(cls, fh, name: str) -> BkpStore:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != FIELDS:
            raise RegistryError(f"{name}: header must be {','.join(FIELDS)}")
        entries = []
        for lineno, row in enumerate(reader, start=2):
            try:
                entries.append(
                    BkpEntry(int(row["q"]), int(row["n"]), int(row["k"]), int(row["d_best"]), row["source"] or "")
                )
            except (TypeError, ValueError) as exc:
                raise RegistryError(f"{name}: line {lineno}: {exc}") from None
        return cls(entries)

    def save(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(FIELDS)
            for e in self.entries():
                writer.writerow([e.q, e.n, e.k, e.d_best, e.source])

    def entries(self) -> list[BkpEntry]:
        return [self._entries[key] for key in sorted(self._entries)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BkpStore):
            return NotImplemented
        return self._entries == other._entries

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, q: int, n: int, k: int) -> BkpEntry | None:
        return self._entries.get((q, n, k))

    def classify(self, q: int, n: int, k: int, d: int) -> Verdict:
        entry = self.lookup(q, n, k)
        if entry is None:
            return Verdict("unknown", d)
        if d == entry.d_best:
            return Verdict("best-known", d, entry.d_best)
        if d < entry.d_best:
            return Verdict("suboptimal", d, entry.d_best)
        return Verdict("exceeds-reference", d, entry.d_best)
