"""Verification reports: identity suites plus per-delta space computations."""

from __future__ import annotations

import json
import time
from collections.abc import Sequence
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, check_involution, check_jordan_operator_identity, check_structurable, check_unit
from .catalog import build, summands
from .linalg import subspace_contains
from .solver import (
    DeltaParams,
    LinearMapSpace,
    resolve_mode,
    block_diagonal,
    centroid_with_certificate,
    delta_derivation_space,
    generalized_space,
    half_derivation_normal_form,
)

DEFAULT_DELTAS = (Fraction(-1), Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2))

CAVEAT = (
    "All computations are exact over Q. Kernel dimensions of rational linear systems do not change "
    "under field extension, so every dimension and containment reported here also holds over the "
    "algebraic closure of Q. Catalog members other than 'complex' are central over Q; 'complex' has a "
    "two-dimensional centroid over Q, which its delta-derivation space matches."
)


@dataclass
class Check:
    id: str
    claim_ref: str
    status: str
    detail: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class DeltaResult:
    delta: Fraction
    space_dim: int
    centroid_dim: int
    nontrivial: bool
    method: str
    primes: list[int]

    def to_dict(self) -> dict:
        return {
            "delta": f"{self.delta.numerator}/{self.delta.denominator}",
            "space_dim": self.space_dim,
            "centroid_dim": self.centroid_dim,
            "nontrivial": self.nontrivial,
            "certificate": {"method": self.method, "primes": list(self.primes)},
        }


@dataclass
class VerificationReport:
    algebra_name: str
    dim: int
    checks: list[Check] = field(default_factory=list)
    delta_results: list[DeltaResult] = field(default_factory=list)
    timing: dict[str, int] = field(default_factory=dict)
    caveat: str = CAVEAT

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "algebra": self.algebra_name,
            "dim": self.dim,
            "caveat": self.caveat,
            "checks": [{"id": c.id, "claim_ref": c.claim_ref, "status": c.status, "detail": c.detail} for c in self.checks],
            "delta_results": [d.to_dict() for d in self.delta_results],
            "timings_ms": dict(self.timing) if timings else {},
        }


class _Recorder:
    def __init__(self, report: VerificationReport):
        self.report = report

    def add(self, cid: str, claim: str, ok: bool, detail: str) -> None:
        self.report.checks.append(Check(cid, claim, "pass" if ok else "fail", detail))

    @contextmanager
    def timed(self, key: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.report.timing[key] = int(round((time.perf_counter() - t0) * 1000))

    @contextmanager
    def guard(self, cid: str, claim: str):
        """Turn an exception inside the block into a failing check."""
        try:
            yield
        except Exception as exc:  # noqa: BLE001 - every solver error becomes a report entry
            self.add(cid, claim, False, f"{type(exc).__name__}: {exc}")


def _identity_checks(a: Algebra, rec: _Recorder) -> None:
    with rec.timed("unit"), rec.guard("unit", "unit-axioms"):
        if a.unit is None:
            rec.add("unit", "unit-axioms", False, "algebra has no unit")
        else:
            r = check_unit(a)
            rec.add("unit", "unit-axioms", r.holds, "unit acts as identity on every basis vector" if r else f"fails on e{r.witness[0]}")
    with rec.timed("involution"), rec.guard("involution", "involution-anti-automorphism"):
        if a.involution is None:
            rec.add("involution", "involution-anti-automorphism", False, "algebra has no involution")
        else:
            r = check_involution(a)
            detail = "J^2 = 1 and J(xy) = J(y)J(x) on all basis pairs" if r else f"violated at {r.witness}"
            rec.add("involution", "involution-anti-automorphism", r.holds, detail)
    with rec.timed("structurable"), rec.guard("structurable", "structurable-identity"):
        r = check_structurable(a)
        detail = f"{r.checked} scalar identities hold" if r else f"first violation at (x, y, z, w) = {r.witness}"
        rec.add("structurable", "structurable-identity", r.holds, detail)


def identity_report(a: Algebra) -> VerificationReport:
    """Unit, involution and structurable checks, plus the Jordan operator form for trivial involutions."""
    report = VerificationReport(a.name, a.dim)
    rec = _Recorder(report)
    _identity_checks(a, rec)
    if a.involution is not None and a.involution == type(a.involution).identity(a.dim):
        with rec.timed("jordan-operator"), rec.guard("jordan-operator", "jordan-operator-identity"):
            r = check_jordan_operator_identity(a)
            detail = f"{r.checked} scalar identities hold" if r else f"first violation at {r.witness}"
            rec.add("jordan-operator", "jordan-operator-identity", r.holds, detail)
    return report


def _fmt(d: Fraction) -> str:
    return str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"


def run_verification(
    a: Algebra,
    deltas: Sequence = DEFAULT_DELTAS,
    mode: str = "auto",
    primes: Sequence[int] | None = None,
    seed: int = 0,
    blocks: Sequence[int] | None = None,
) -> VerificationReport:
    """Identity suite, centroid, and for each delta the space, triviality verdict and side checks.

    ``blocks`` gives the summand dimensions of a direct sum; when present, every
    basis map is also checked for block-diagonality.
    """
    report = VerificationReport(a.name, a.dim)
    rec = _Recorder(report)
    _identity_checks(a, rec)
    mode = resolve_mode(a, mode)
    cen: LinearMapSpace | None = None
    with rec.timed("centroid"), rec.guard("centroid", "centroid"):
        cen, ccert = centroid_with_certificate(a, mode, primes, seed)
        rec.add("centroid", "centroid", cen.contains_identity(), f"dim {cen.dim} ({ccert.method}), contains the identity")
    if cen is None:
        return report
    solved: dict[Fraction, tuple] = {}

    def space_for(delta: Fraction):
        if delta not in solved:
            solved[delta] = delta_derivation_space(a, delta, mode, primes, seed, centroid_space=cen)
        return solved[delta]

    for raw in deltas:
        d = DeltaParams(raw)
        tag = f"delta={_fmt(d.delta)}"
        with rec.timed(tag), rec.guard(f"{tag}:space", "delta-derivation-space"):
            space, cert = space_for(d.delta)
            nontrivial = d.delta not in (0, 1) and not space.issubspace(cen)
            report.delta_results.append(
                DeltaResult(d.delta, space.dim, cen.dim, nontrivial, cert.method, cert.primes_used)
            )
            rec.add(
                f"{tag}:no-nontrivial",
                "no-nontrivial-delta-derivations",
                not nontrivial,
                f"space dim {space.dim}, centroid dim {cen.dim}",
            )
            if a.unit is not None and d.delta not in (Fraction(1, 2), 1):
                rec.add(f"{tag}:vanishing", "unital-vanishing", space.dim == 0, f"space dim {space.dim}")
            if blocks and len(blocks) > 1:
                ok = all(block_diagonal(phi, blocks) for phi in space.basis)
                rec.add(f"{tag}:block-diagonal", "semisimple-direct-sum-invariance", ok, f"blocks {list(blocks)}")
            if d.delta == Fraction(1, 2) and a.unit is not None:
                for phi in space.basis:
                    half_derivation_normal_form(a, phi)
                rec.add(
                    f"{tag}:normal-form",
                    "half-derivation-normal-form",
                    True,
                    f"all {space.dim} basis maps equal L_a = R_a with a = phi(1)",
                )
        if d.delta == Fraction(1, 2):
            with rec.timed("generalized"), rec.guard("generalized", "generalized-delta-in-der-plus-centroid"):
                der = space_for(Fraction(1))[0]
                pairs = generalized_space(a, d, mode, primes, seed, centroid_space=cen)
                chi = pairs.chi_projection()
                span = der.vectors() + cen.vectors()
                ok = all(subspace_contains(span, v) for v in chi.vectors()) if span else chi.dim == 0
                rec.add(
                    "generalized",
                    "generalized-delta-in-der-plus-centroid",
                    ok,
                    f"pair space dim {pairs.dim}, chi projection dim {chi.dim}, Der dim {der.dim}, centroid dim {cen.dim}",
                )
    return report


def verify_named(name: str, deltas=DEFAULT_DELTAS, mode="auto", primes=None, seed=0) -> VerificationReport:
    a = build(name)
    parts = summands(name)
    blocks = [build(p).dim for p in parts] if len(parts) > 1 else None
    return run_verification(a, deltas, mode, primes, seed, blocks)


def emit(report: VerificationReport | Sequence[VerificationReport], fmt: str = "json", timings: bool = False) -> str:
    """Serialize one report (or a list of them) as JSON or markdown."""
    reports = [report] if isinstance(report, VerificationReport) else list(report)
    if fmt == "json":
        data = [r.to_dict(timings) for r in reports]
        return json.dumps(data[0] if isinstance(report, VerificationReport) else data, indent=2) + "\n"
    if fmt in ("md", "markdown"):
        return "\n".join(_markdown(r, timings) for r in reports)
    raise ValueError(f"unknown format {fmt!r}")


def _markdown(r: VerificationReport, timings: bool) -> str:
    lines = [f"## {r.algebra_name} (dim {r.dim})", "", f"> {r.caveat}", ""]
    lines += ["| check | claim | status | detail |", "|---|---|---|---|"]
    lines += [f"| {c.id} | {c.claim_ref} | {c.status} | {c.detail} |" for c in r.checks]
    if r.delta_results:
        lines += ["", "| delta | space dim | centroid dim | nontrivial | method | primes |", "|---|---|---|---|---|---|"]
        for d in r.delta_results:
            primes = ", ".join(str(p) for p in d.primes) or "-"
            lines.append(f"| {_fmt(d.delta)} | {d.space_dim} | {d.centroid_dim} | {str(d.nontrivial).lower()} | {d.method} | {primes} |")
    if timings and r.timing:
        lines += ["", "| step | ms |", "|---|---|"] + [f"| {k} | {v} |" for k, v in r.timing.items()]
    lines.append("")
    return "\n".join(lines)


def exit_status(reports: Sequence[VerificationReport]) -> int:
    return 0 if all(r.ok for r in reports) else 1
