"""Violation certificates and the infeasible verdict that carries them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class SubsetCertificate:
    """A named inequality ``lhs <relation> rhs`` that the witnessing subsets violate.

    ``subsets`` maps a role name (``"A"``, ``"B"``, ``"I"``, ``"K"``, ``"symbol"``, ...)
    to the witnessing set, stored as a sorted tuple (or a scalar for single indices).
    """

    family: str
    subsets: dict[str, Any]
    lhs: int
    rhs: int
    relation: str = "<="
    note: str = ""

    def __bool__(self) -> bool:
        # a certificate stands for a failed check, so it is falsy like Infeasible
        return False

    @property
    def inequality_holds(self) -> bool:
        if self.relation == "<=":
            return self.lhs <= self.rhs
        if self.relation == ">=":
            return self.lhs >= self.rhs
        if self.relation == "==":
            return self.lhs == self.rhs
        raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def violated(self) -> bool:
        return not self.inequality_holds

    def as_dict(self) -> dict:
        def plain(v):
            if isinstance(v, (tuple, list, frozenset, set)):
                return [plain(x) for x in (sorted(v) if isinstance(v, (set, frozenset)) else v)]
            return v

        out = {
            "family": self.family,
            "subsets": {key: plain(val) for key, val in sorted(self.subsets.items())},
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Infeasible:
    """Verdict: no object with the requested properties exists."""

    certificate: SubsetCertificate
    stage: str = field(default="")

    def __bool__(self) -> bool:
        return False

    def as_dict(self) -> dict:
        return {"verdict": "infeasible", "stage": self.stage, "certificate": self.certificate.as_dict()}
