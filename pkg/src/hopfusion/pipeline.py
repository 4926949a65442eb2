"""Staged end-to-end verification runs.

A run takes one presented algebra and walks the stage list: axiom
validation, integrals, block decomposition, the elements u and v, the
twisted product with a cyclic group of order n = 2*dim, simple-module
classification, product tables, the graded decomposition, and quantum
dimensions.  Every stage contributes check results under stable IDs;
the assembled report is deterministic byte-for-byte for a fixed input,
seed and package version.

The working field is extended upfront so a primitive n-th root of
unity exists, and again on demand (square roots, character splitting)
by catching FieldExtensionNeeded and retrying with a larger extension.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import (FieldExtensionNeeded, HypothesisViolation,
                     InternalInconsistency, InvalidInputError)
from .field import embed_field, gf_construct
from .grothendieck import (check_fusion_stage, check_qdim_stage,
                           check_theorem_stage, compute_fusion)
from .hopf import HopfAlgebra, change_field
from .rep import check_simples_stage, enumerate_simples
from .report import STAGES, CheckResult, Report
from .semisimple import (check_u_properties, check_v_properties,
                         compute_blocks, compute_integrals, compute_u,
                         compute_v, resolve_lambda_convention)
from .smash import build_smash, check_smash_stage, root_of_unity

__all__ = ["PipelineResult", "hypothesis_gate", "run_pipeline", "dump_table"]

MAX_EXTENSION_RETRIES = 8


@dataclass
class PipelineResult:
    report: Report
    stages_run: list
    objects: dict = field(default_factory=dict)

    def all_passed(self) -> bool:
        return self.report.all_passed()


def hypothesis_gate(H: HopfAlgebra) -> None:
    """Reject inputs outside the standing hypotheses on p and dim."""
    p, d = H.field.p, H.dim
    if p * p <= d:
        raise HypothesisViolation(f"p^2 = {p * p} must exceed dim = {d}")
    if (2 * d) % p == 0:
        raise HypothesisViolation(f"p = {p} divides 2*dim = {2 * d}")


def _mult_order(p: int, n: int) -> int:
    if n == 1:
        return 1
    e, acc = 1, p % n
    while acc != 1:
        acc = acc * p % n
        e += 1
    return e


def run_pipeline(H0: HopfAlgebra, name: str = "input", seed: int = 0,
                 through: str = "qdims") -> PipelineResult:
    """Run all stages up to and including `through` (a report.STAGES name)."""
    if through not in STAGES:
        raise InvalidInputError(
            f"unknown stage {through!r}; stages: {', '.join(STAGES)}")
    hypothesis_gate(H0)
    p, k0 = H0.field.p, H0.field.k
    n = 2 * H0.dim
    k = math.lcm(k0, _mult_order(p, n))
    last = None
    for _ in range(MAX_EXTENSION_RETRIES):
        if k == k0:
            H = H0
        else:
            F = gf_construct(p, k)
            H = change_field(H0, embed_field(H0.field, F))
        try:
            return _run_stages(H, name, seed, through, base_k=k0)
        except FieldExtensionNeeded as exc:
            last = exc
            k *= exc.factor
    raise InternalInconsistency(f"field extension did not stabilize: {last}")


def _run_stages(H, name, seed, through, base_k):
    F, d = H.field, H.dim
    n = 2 * d
    rng = np.random.default_rng(seed)
    rep = Report()
    rep.header["tool"] = f"hopfusion {__version__}"
    rep.header["input"] = name
    rep.header["dim"] = d
    rep.header["base-field"] = f"GF({F.p}^{base_k})"
    rep.header["working-field"] = f"GF({F.p}^{F.k}) modulus={F.modulus_str()}"
    rep.header["seed"] = seed
    rep.header["through"] = through

    result = PipelineResult(rep, [], {"H": H})

    def finish():
        if not rep.verify_manifest(result.stages_run):
            raise InternalInconsistency(
                "emitted check IDs do not match the manifest for "
                + ",".join(result.stages_run))
        return result

    # -- validate -------------------------------------------------------
    result.stages_run.append("validate")
    axioms = H.validate()
    bad = [a for a in axioms if not a.ok]
    rep.extend_checks([CheckResult(
        "Hopf.Axioms", not bad,
        None if not bad else f"{bad[0].axiom} witness={bad[0].witness}")])
    if bad or through == "validate":
        return finish()

    # -- integrals ------------------------------------------------------
    result.stages_run.append("integrals")
    ints = compute_integrals(H)
    rep.add("eps-integral", ints.eps_Lambda)
    result.objects["integrals"] = ints
    if through == "integrals":
        return finish()

    # -- blocks ---------------------------------------------------------
    result.stages_run.append("blocks")
    blocks = compute_blocks(H, rng)
    rep.add("block-dims", " ".join(str(x) for x in blocks.dims))
    rep.add("dual-permutation", " ".join(str(x) for x in blocks.dualperm))
    result.objects["blocks"] = blocks
    if through == "blocks":
        return finish()

    # -- uv ---------------------------------------------------------------
    result.stages_run.append("uv")
    u = compute_u(H, ints)
    ints, convention = resolve_lambda_convention(H, ints, blocks, u)
    if convention == "unresolved":
        raise InternalInconsistency(
            "dual integral fits neither slot convention")
    rep.add("lambda-convention", convention)
    result.objects["integrals"] = ints
    result.objects["u"] = u
    rep.extend_checks(check_u_properties(H, ints, blocks, u))
    vd = compute_v(H, ints, blocks, u)
    rep.add("sqrt-eps-integral", vd.s_Lambda)
    rep.add("block-sqrt-branches", " ".join(vd.branch_rules))
    rep.add("v-is-unit", str(bool(np.array_equal(vd.v, H.unit))).lower())
    result.objects["v"] = vd
    rep.extend_checks(check_v_properties(H, u, vd, n))
    if through == "uv":
        return finish()

    # -- smash ------------------------------------------------------------
    result.stages_run.append("smash")
    smash = build_smash(H)
    checks, u_sm, closed = check_smash_stage(H, ints, u, smash)
    rep.extend_checks(checks)
    result.objects["smash"] = smash
    result.objects["u_sm"] = u_sm
    result.objects["smash_integrals"] = closed
    if through == "smash":
        return finish()

    # -- simples ----------------------------------------------------------
    result.stages_run.append("simples")
    psi = root_of_unity(F, n)
    rep.add("psi", psi)
    simples = enumerate_simples(H, blocks, vd, psi)
    rep.add("simple-count", len(simples.labels))
    result.objects["simples"] = simples
    rep.extend_checks(
        check_simples_stage(H, blocks, vd, smash, simples, u_sm, closed.lam, rng))
    if through == "simples":
        return finish()

    # -- fusion -----------------------------------------------------------
    result.stages_run.append("fusion")
    fusion = compute_fusion(H, blocks, vd, smash, simples)
    result.objects["fusion"] = fusion
    rep.extend_checks(check_fusion_stage(H, blocks, vd, simples, fusion))
    if through == "fusion":
        return finish()

    # -- theorem ----------------------------------------------------------
    result.stages_run.append("theorem")
    rep.extend_checks(check_theorem_stage(H, blocks, simples, fusion))
    if through == "theorem":
        return finish()

    # -- qdims ------------------------------------------------------------
    result.stages_run.append("qdims")
    rep.extend_checks(check_qdim_stage(H, blocks, vd, simples))
    return finish()


# -- table export -----------------------------------------------------------

TABLE_STAGE = {"N": "fusion", "L": "fusion", "smash": "fusion", "C": "fusion"}


def dump_table(result: PipelineResult, which: str) -> str:
    """Deterministic text dump of one product table.

    One `label` line per basis element and one `entry a b c value` line
    per nonzero structure constant, in lexicographic index order.  The
    dump carries no table name, so equal tables dump to equal bytes.
    """
    if which not in TABLE_STAGE:
        raise InvalidInputError(
            f"unknown table {which!r}; choose from {', '.join(TABLE_STAGE)}")
    fusion = result.objects.get("fusion")
    blocks = result.objects.get("blocks")
    if fusion is None or blocks is None:
        raise InvalidInputError(
            f"table {which!r} wants the fusion stage; run --through fusion or later")
    n = 2 * result.objects["H"].dim
    m = blocks.m
    if which in ("N", "L"):
        T = fusion.N if which == "N" else fusion.L
        labels = [f"chi{i} dim={blocks.dims[i]}" for i in range(m)]
    elif which == "smash":
        T = fusion.T
        labels = [f"({i},{j}) dim={blocks.dims[i]}"
                  for i in range(m) for j in range(n)]
    else:
        T = fusion.ctable
        labels = [f"({i},{j}) dim={blocks.dims[i]}"
                  for i in range(m) for j in (0, n // 2)]
    out = [f"basis: {len(labels)}"]
    out += [f"label {a}: {lab}" for a, lab in enumerate(labels)]
    for a, b, c in np.argwhere(T != 0):
        out.append(f"entry {a} {b} {c} {int(T[a, b, c])}")
    return "\n".join(out) + "\n"
