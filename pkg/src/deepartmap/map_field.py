"""Inter-ART map field: a write-once child -> parent category table."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import MapFieldConflict


class Verdict(Enum):
    ACCEPT = "accept"
    CONFLICT = "conflict"


@dataclass
class MapField:
    assoc: dict = field(default_factory=dict)

    def parent_of(self, child: int) -> Optional[int]:
        return self.assoc.get(child)

    def verify(self, child: int, parent: int) -> Verdict:
        stored = self.assoc.get(child)
        if stored is None or stored == parent:
            return Verdict.ACCEPT
        return Verdict.CONFLICT

    def associate(self, child: int, parent: int) -> None:
        if self.verify(child, parent) is Verdict.CONFLICT:
            raise MapFieldConflict(
                f"child {child} already maps to {self.assoc[child]}, refusing {parent}"
            )
        self.assoc[child] = parent

    def children_of(self, parent: int) -> list:
        return sorted(c for c, p in self.assoc.items() if p == parent)

    def __len__(self) -> int:
        return len(self.assoc)
