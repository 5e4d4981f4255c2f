"""Check outcomes and their JSON/text serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .ncalg.scalars import as_scalar

__all__ = ["Report", "combine_reports", "compare", "format_u", "reports_to_json", "reports_to_text", "sort_reports"]


def format_u(u) -> str:
    """Rational ``u`` as ``a/b`` (``-`` when the check has no parameter)."""
    if u is None:
        return "-"
    q = as_scalar(u)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Report:
    check: str
    family: str = "-"
    u: str = "-"
    N: int = 0
    passed: bool = False
    first_residual_order: int | None = None
    max_terms: int = 0
    detail: str = field(default="", compare=False)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "family": self.family,
            "u": self.u,
            "N": self.N,
            "status": self.status,
            "first_residual_order": self.first_residual_order,
            "max_terms": self.max_terms,
        }

    def expect_failure(self, check: str | None = None, detail: str = "") -> "Report":
        """Turn a negative claim into a passing check: passes iff this one failed."""
        return replace(
            self,
            check=check or self.check + "-fails",
            passed=not self.passed and self.first_residual_order is not None,
            detail=detail or self.detail,
        )

    def line(self) -> str:
        order = "-" if self.first_residual_order is None else str(self.first_residual_order)
        extra = f"  {self.detail}" if self.detail else ""
        return f"{self.status.upper():4}  {self.check}  family={self.family} u={self.u} N={self.N} residual_order={order} terms={self.max_terms}{extra}"


def compare(check: str, lhs, rhs, *, family="-", u=None, N=None, detail="") -> Report:
    """Exact comparison of two series; the residual's lowest kappa power is reported."""
    diff = lhs - rhs
    order = diff.lowest_order()
    return Report(
        check=check,
        family=str(family),
        u=format_u(u),
        N=lhs.order if N is None else N,
        passed=order is None,
        first_residual_order=order,
        max_terms=max(len(lhs), len(rhs)),
        detail=detail,
    )


def combine_reports(check: str, parts, *, family="-", u=None, N=0, detail="") -> Report:
    """AND of several reports; the residual order is the smallest failing one."""
    parts = list(parts)
    orders = [p.first_residual_order for p in parts if p.first_residual_order is not None]
    return Report(
        check=check,
        family=str(family),
        u=format_u(u),
        N=N,
        passed=all(p.passed for p in parts),
        first_residual_order=min(orders) if orders else None,
        max_terms=max((p.max_terms for p in parts), default=0),
        detail=detail,
    )


def sort_reports(reports):
    return sorted(reports, key=lambda r: (r.check, r.family, r.u, r.N))


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in sort_reports(reports)], indent=2)


def reports_to_text(reports) -> str:
    reports = sort_reports(reports)
    lines = [r.line() for r in reports]
    n_pass = sum(r.passed for r in reports)
    lines.append(f"{n_pass}/{len(reports)} checks passed")
    return "\n".join(lines)
