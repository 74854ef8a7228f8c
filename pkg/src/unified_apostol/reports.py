"""Identity reports, residual kinds and exact sequence comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .exact_algebra import XPoly

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


def fmt(q) -> str:
    """Lossless text form of a rational: ``p/q`` or ``p``."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ExactZero:
    def to_dict(self) -> dict:
        return {"kind": "ExactZero"}


@dataclass(frozen=True)
class FirstMismatch:
    n: int
    lhs: Fraction
    rhs: Fraction
    power: int | None = None  # x-power for polynomial comparisons

    def to_dict(self) -> dict:
        d = {"kind": "FirstMismatch", "n": self.n, "lhs": fmt(self.lhs), "rhs": fmt(self.rhs)}
        if self.power is not None:
            d["x_power"] = self.power
        return d


@dataclass(frozen=True)
class NumericDiagnostic:
    """Residual magnitudes at increasing truncation levels."""

    levels: tuple[int, ...]
    magnitudes: tuple[Fraction, ...]

    @property
    def monotone(self) -> bool:
        return all(b <= a for a, b in zip(self.magnitudes, self.magnitudes[1:]))

    def to_dict(self) -> dict:
        return {
            "kind": "NumericDiagnostic",
            "levels": list(self.levels),
            "magnitudes": [fmt(v) for v in self.magnitudes],
            "approx": [f"{float(v):.6e}" for v in self.magnitudes],
            "monotone": self.monotone,
        }


Residual = Union[ExactZero, FirstMismatch, NumericDiagnostic]


@dataclass(frozen=True)
class IdentityReport:
    id: str
    equation: str
    params: str
    order: int
    residual: Residual
    verdict: str
    notes: tuple[str, ...] = ()
    variants: tuple[tuple[str, str, Residual], ...] = field(default=())

    def __post_init__(self):
        if self.verdict == PASS and not isinstance(self.residual, ExactZero):
            raise ValueError("PASS requires an exact-zero residual")
        if isinstance(self.residual, NumericDiagnostic) and self.id != "LAH_9999":
            raise ValueError("numeric diagnostics are reserved for the Lah expansion")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "equation": self.equation,
            "params": self.params,
            "order": self.order,
            "verdict": self.verdict,
            "residual": self.residual.to_dict(),
            "notes": list(self.notes),
        }
        if self.variants:
            d["variants"] = [
                {"name": name, "verdict": verdict, "residual": res.to_dict()}
                for name, verdict, res in self.variants
            ]
        return d


def first_mismatch(lhs: Sequence, rhs: Sequence) -> Residual:
    """Compare two sequences of scalars or XPolys exactly."""
    if len(lhs) != len(rhs):
        raise ValueError(f"length mismatch {len(lhs)} vs {len(rhs)}")
    for n, (a, b) in enumerate(zip(lhs, rhs)):
        if a == b:
            continue
        if isinstance(a, XPoly) or isinstance(b, XPoly):
            pa = a if isinstance(a, XPoly) else XPoly((a,))
            pb = b if isinstance(b, XPoly) else XPoly((b,))
            for i in range(max(len(pa.coeffs), len(pb.coeffs))):
                if pa.coeff(i) != pb.coeff(i):
                    return FirstMismatch(n, pa.coeff(i), pb.coeff(i), i)
        return FirstMismatch(n, Fraction(a), Fraction(b))
    return ExactZero()


def verdict_for(residual: Residual) -> str:
    return PASS if isinstance(residual, ExactZero) else FAIL


def combine(*residuals: Residual) -> Residual:
    """First non-zero residual, else ExactZero."""
    for r in residuals:
        if not isinstance(r, ExactZero):
            return r
    return ExactZero()
