from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    """Outcome of a validation.  Truthy iff the check passed.

    ``witness`` names the first violation found (a basis triple, an edge,
    a vertex, ...); it is ``None`` when the check passes.
    """

    ok: bool
    name: str
    witness: Any = None
    payload: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def raise_if_failed(self, exc=ValueError):
        if not self.ok:
            raise exc(f"{self.name} failed: {self.witness}")
        return self
