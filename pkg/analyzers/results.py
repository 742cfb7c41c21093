"""
Bound results shared by the block and single-operator catalogues
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from analyzers.radius import w_nonneg
from linalg.enclosure import Enclosure


@dataclass(frozen=True)
class BoundResult:
    """One evaluated bound: w(A) ≤ w(Ã) = value"""
    id: str
    params: Dict[str, Any]
    aux: np.ndarray
    value: Enclosure
    entry_argmins: Optional[Dict[str, float]] = field(default=None)

    @classmethod
    def from_aux(cls, bound_id: str, aux: np.ndarray, params: Optional[Dict[str, Any]] = None,
                 entry_argmins: Optional[Dict[str, float]] = None) -> "BoundResult":
        """Evaluate w(Ã) through the nonnegative fast path"""
        aux = np.asarray(aux, dtype=np.float64)
        return cls(
            id=bound_id,
            params=dict(params or {}),
            aux=aux,
            value=w_nonneg(aux),
            entry_argmins=entry_argmins,
        )

    @classmethod
    def scalar(cls, bound_id: str, value: float, params: Optional[Dict[str, Any]] = None) -> "BoundResult":
        """A closed-form bound carried by the 1×1 auxiliary matrix [[value]]"""
        return cls.from_aux(bound_id, np.array([[max(float(value), 0.0)]]), params)

    @property
    def label(self) -> str:
        if "t" in self.params:
            return f"{self.id}(t={self.params['t']:g})"
        return self.id
