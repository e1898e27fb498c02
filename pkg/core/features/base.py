from dataclasses import dataclass, field
from typing import Dict, Iterable, Set


@dataclass
class FeatureBlock:
    """Named feature values plus the names whose preconditions failed."""
    values: Dict[str, float] = field(default_factory=dict)
    masked: Set[str] = field(default_factory=set)

    def mask(self, names: Iterable[str]) -> "FeatureBlock":
        """Set each name to 0 and mark it masked."""
        for name in names:
            self.values[name] = 0.0
            self.masked.add(name)
        return self

    def update(self, other: "FeatureBlock") -> "FeatureBlock":
        self.values.update(other.values)
        self.masked |= other.masked
        return self

    @classmethod
    def all_masked(cls, names: Iterable[str]) -> "FeatureBlock":
        return cls().mask(names)
