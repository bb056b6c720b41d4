"""Check outcomes: named congruence reports with residual p-adic valuation."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .modring import residual_valuation

# A report's status:
#   pass / fail  - congruence computed and judged against required_exponent
#   identity     - both sides equal as exact integers (small-prime cases)
#   n/a          - preconditions exclude this prime; nothing computed
#   data         - value recorded for inspection, never gates an exit code
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_IDENTITY = "identity"
STATUS_NA = "n/a"
STATUS_DATA = "data"


@dataclass(frozen=True)
class CongruenceReport:
    name: str
    p: int
    required_exponent: int
    working_exponent: int
    lhs: int | None
    rhs: int | None
    residual_valuation: int | None
    holds: bool | None
    status: str

    def to_json_dict(self) -> dict:
        return {
            "check": self.name,
            "p": self.p,
            "required_exp": self.required_exponent,
            "residual_valuation": self.residual_valuation,
            "holds": self.holds,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "status": self.status,
        }

    def json_line(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    @property
    def gates(self) -> bool:
        """True when a failure of this report should fail a verification run."""
        return self.status in (STATUS_PASS, STATUS_FAIL)


def make_report(
    name: str,
    p: int,
    required: int,
    lhs: int,
    rhs: int,
    working: int,
    *,
    identity: bool = False,
    data_only: bool = False,
) -> CongruenceReport:
    """Judge lhs against rhs in Z/p^working and package the outcome.

    The residual valuation saturates at the working exponent, so a report can
    distinguish 'holds exactly at the required exponent' from 'holds one
    level higher' whenever working > required.
    """
    m = p**working
    v = residual_valuation(lhs - rhs, p, working)
    holds = v >= required
    if identity:
        status = STATUS_IDENTITY
    elif data_only:
        status = STATUS_DATA
    else:
        status = STATUS_PASS if holds else STATUS_FAIL
    return CongruenceReport(
        name=name,
        p=p,
        required_exponent=required,
        working_exponent=working,
        lhs=lhs % m,
        rhs=rhs % m,
        residual_valuation=v,
        holds=holds,
        status=status,
    )


def not_applicable(name: str, p: int, required: int) -> CongruenceReport:
    return CongruenceReport(
        name=name,
        p=p,
        required_exponent=required,
        working_exponent=required + 1,
        lhs=None,
        rhs=None,
        residual_valuation=None,
        holds=None,
        status=STATUS_NA,
    )
