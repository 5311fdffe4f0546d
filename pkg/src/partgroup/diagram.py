from __future__ import annotations

from dataclasses import dataclass, field

from .core import PartialGroup, PartialGroupError
from .morphism import Morphism, check_morphism


class DiagramError(PartialGroupError):
    pass


@dataclass
class Diagram:
    """Finite diagram: objects by index, arrows as ``(source, target, morphism)``."""
    objects: list[PartialGroup]
    arrows: list[tuple[int, int, Morphism]] = field(default_factory=list)

    def validate(self, max_len: int | None = None) -> None:
        n = len(self.objects)
        for k, (s, t, m) in enumerate(self.arrows):
            if not (0 <= s < n and 0 <= t < n):
                raise DiagramError(f"arrow {k}: endpoint out of range")
            if not (m.source.same_as(self.objects[s]) and m.target.same_as(self.objects[t])):
                raise DiagramError(f"arrow {k}: morphism endpoints do not match objects {s}->{t}")
            report = check_morphism(m, max_len)
            if not report.ok:
                raise DiagramError(f"arrow {k} is not a morphism: {report.violations[0]}")
