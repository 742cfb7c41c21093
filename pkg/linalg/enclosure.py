"""
Certified intervals for computed scalars (w, r, ‖·‖)
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict


class EnclosureKind(str, Enum):
    EXACT = "exact"
    SWEPT = "swept"
    FASTPATH = "fastpath"


@dataclass(frozen=True)
class Enclosure:
    """Interval [lo, hi] guaranteed to contain the exact value"""
    lo: float
    hi: float
    kind: EnclosureKind = EnclosureKind.EXACT

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"enclosure lower end {self.lo} exceeds upper end {self.hi}")

    @classmethod
    def around(cls, value: float, radius: float, kind: EnclosureKind = EnclosureKind.EXACT) -> "Enclosure":
        return cls(float(value) - radius, float(value) + radius, kind)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def to_dict(self) -> Dict:
        return {"lo": self.lo, "hi": self.hi, "kind": self.kind.value}
