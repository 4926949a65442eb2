"""Verification report assembly.

Reports are line-oriented text, deterministic byte-for-byte for a fixed
input, seed and package version: `key: value` lines for artifacts and
`check <ID>: pass|fail [witness]` lines for verification results.  A
static manifest pins the full set of check IDs so a finished run can be
audited for completeness (each ID appears exactly once).
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Check IDs by pipeline stage; a full run emits each exactly once.
STAGE_CHECKS = {
    "validate": ["Hopf.Axioms"],
    "integrals": [],
    "blocks": [],
    "uv": [
        "Prop3.20.1",
        "Prop3.20.2",
        "Prop3.20.3",
        "Prop3.20.4",
        "Prop3.20.5",
        "U.Conjugation",
        "Prop2.1",
        "Prop2.2",
        "Prop2.3",
        "Prop2.4",
        "Prop2.5",
        "Prop2.6",
    ],
    "smash": [
        "Smash.Axioms",
        "Smash.Embedding",
        "Smash.S2Conj",
        "Smash.Integral",
        "Smash.U",
    ],
    "simples": [
        "Thm3.Distinct",
        "Thm3.Trivial",
        "Thm3.Modules",
        "Thm3.Simplicity",
        "Thm3.Complete",
        "DualProp",
    ],
    "fusion": [
        "NTable",
        "LTable",
        "Remark6",
        "Remark9",
        "SmashTable",
        "Prop1.1",
        "Prop1.2",
        "Prop1.3",
    ],
    "theorem": [
        "Theta",
        "Thm1.1",
        "Thm1.2",
        "Thm1.3",
        "C.Closure",
        "PropP1",
        "Corollary",
    ],
    "qdims": ["QDim.ChiV", "QDim.Spherical"],
}

STAGES = list(STAGE_CHECKS)

FULL_MANIFEST = tuple(cid for stage in STAGES for cid in STAGE_CHECKS[stage])


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    ok: bool
    witness: str | None = None

    def line(self) -> str:
        tail = "pass" if self.ok else "fail"
        if not self.ok and self.witness:
            tail += f" [{self.witness}]"
        return f"check {self.check_id}: {tail}"


@dataclass
class Report:
    header: dict = field(default_factory=dict)
    artifacts: list = field(default_factory=list)  # (key, value) pairs in order
    checks: list = field(default_factory=list)  # CheckResult in order

    def add(self, key: str, value):
        self.artifacts.append((key, value))

    def extend_checks(self, results):
        self.checks.extend(results)

    def all_passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def check_ids(self) -> list[str]:
        return [c.check_id for c in self.checks]

    def verify_manifest(self, stages_run) -> bool:
        """Every check of every executed stage present exactly once."""
        want = [cid for s in stages_run for cid in STAGE_CHECKS[s]]
        return self.check_ids() == want

    def render(self) -> str:
        lines = [f"{k}: {v}" for k, v in self.header.items()]
        lines += [f"{k}: {v}" for k, v in self.artifacts]
        lines += [c.line() for c in self.checks]
        failed = [c.check_id for c in self.checks if not c.ok]
        lines.append(f"checks-total: {len(self.checks)}")
        lines.append(f"checks-failed: {len(failed)}")
        lines.append("result: " + ("ALL-PASS" if not failed else "FAIL " + " ".join(failed)))
        return "\n".join(lines) + "\n"
