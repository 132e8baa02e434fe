"""Decomposition reports: assembly, JSON and text rendering.

Serialized output is deterministic: two runs on the same instance produce
byte-identical bytes.  Wall-clock timing is therefore kept out of the
serialized report and surfaced separately on stderr by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import decomposition as dec
from . import pointmodel as pm
from .exactlin import Matrix, Subspace
from .instancefile import to_dict
from .splitting import (
    Check,
    ProblemInstance,
    build_chain,
    dim_formulas,
)


@dataclass(frozen=True)
class Report:
    instance: dict
    dims: dict[str, int]
    slice_dim_H: int
    witt_g: dict
    witt_h: dict
    checks: tuple[Check, ...]
    elapsed_seconds: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _matrix_strings(M: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M.entries]


def _subspace_strings(S: Subspace) -> list[list[str]]:
    return [[str(x) for x in v] for v in S.basis_vectors()]


def build_report(inst: ProblemInstance, instance_doc: dict | None = None) -> Report:
    """Decompose one instance and collect the block data."""
    chain = build_chain(inst)
    model = pm.build_model(chain, inst)
    g_dec = dec.decompose_G(model)
    h_dec = dec.decompose_H(model)
    form = dec.slice_form(h_dec, model)
    dims = dim_formulas(chain)

    from .exactlin import gram_on

    def block(space):
        return {
            "basis": _subspace_strings(space),
            "gram": _matrix_strings(gram_on(model.omega, space)),
        }

    witt_g = {
        "T0": block(g_dec.T0),
        "T1": block(g_dec.T1),
        "N0": block(g_dec.N0),
        "N1": block(g_dec.N1),
        "gram_T1": _matrix_strings(g_dec.gram_T1),
        "gram_N1": _matrix_strings(g_dec.gram_N1),
    }
    witt_h = {
        "TH0": block(h_dec.TH0),
        "TH1": block(h_dec.TH1),
        "NH0": block(h_dec.NH0),
        "N1_tilde": block(h_dec.NH1),
        "N1_tilde_blocks": {
            "s_m": block(h_dec.s_block),
            "X_m": block(h_dec.Xm_block),
            "N1": block(h_dec.N1_block),
        },
        "Y_m": block(h_dec.Ym),
        "Z_m": block(h_dec.Zm),
        "slice_form_gram": _matrix_strings(form.gram),
        "dim_X_m": h_dec.Xm_block.dim,
        "dim_N1_tilde": h_dec.NH1.dim,
        # One quadratic form per h_m basis vector; an empty list states
        # explicitly that the momentum of the slice action is the zero
        # covector in a zero-dimensional dual.
        "slice_momentum": {
            "h_m_dim": chain.h_m.dim,
            "quadratic_forms": [
                _matrix_strings(S)
                for S in dec.slice_momentum_forms(h_dec, model)
            ],
        },
    }
    checks = (
        Check("report.decompositions_built", True),
        Check("report.slice_dim_matches_formula",
              h_dec.NH1.dim == dims.slice_dim_H),
    )
    return Report(
        instance=to_dict(instance_doc if instance_doc is not None else inst),
        dims=dims.dims,
        slice_dim_H=dims.slice_dim_H,
        witt_g=witt_g,
        witt_h=witt_h,
        checks=checks,
    )


def report_to_dict(report: Report) -> dict:
    return {
        "format": "wittartin-report/1",
        "instance": report.instance,
        "dims": report.dims,
        "dim_N1_tilde": report.slice_dim_H,
        "witt_G": report.witt_g,
        "witt_H": report.witt_h,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
    }


_DIM_ORDER = ("g", "g_mu", "h_mu", "h_m", "h_alpha", "h_perp_mu",
              "p", "b", "a", "s", "q", "ntilde", "r", "m", "n", "N1")

_DIM_LABEL = {
    "g": "g", "g_mu": "g_mu", "h_mu": "h_mu", "h_m": "h_m",
    "h_alpha": "h_alpha", "h_perp_mu": "h_perp_mu",
    "p": "p", "b": "b", "a": "a", "s": "s(G,H,mu)", "q": "q",
    "ntilde": "ntilde", "r": "r", "m": "m", "n": "n", "N1": "N1",
}


def render_text(report: Report) -> str:
    lines = []
    lines.append("dims:")
    for key in _DIM_ORDER:
        lines.append(f"  {_DIM_LABEL[key]:<10} {report.dims[key]}")
    lines.append(f"  {'N1_tilde':<10} {report.slice_dim_H}")
    lines.append("")

    def block(title: str, data: dict):
        rows = data["basis"]
        lines.append(f"{title}  (dim {len(rows)})")
        for v in rows:
            lines.append("  [" + ", ".join(v) + "]")

    lines.append("Witt-Artin decomposition for G:")
    for name in ("T0", "T1", "N0", "N1"):
        block(f" {name}", report.witt_g[name])
    lines.append(" gram on T1 (KKS block):")
    for row in report.witt_g["gram_T1"]:
        lines.append("  [" + ", ".join(row) + "]")
    lines.append("")
    lines.append("Witt-Artin decomposition for H:")
    for name in ("TH0", "TH1", "NH0", "N1_tilde"):
        block(f" {name}", report.witt_h[name])
    lines.append(" N1_tilde blocks:")
    for name in ("s_m", "X_m", "N1"):
        block(f"  {name}", report.witt_h["N1_tilde_blocks"][name])
    lines.append(" form on N1_tilde (blocks s | b | Y_m | N1):")
    for row in report.witt_h["slice_form_gram"]:
        lines.append("  [" + ", ".join(row) + "]")
    momentum = report.witt_h["slice_momentum"]
    if momentum["quadratic_forms"]:
        lines.append(" slice momentum quadratic forms (one per h_m basis vector):")
        for t, S in enumerate(momentum["quadratic_forms"]):
            lines.append(f"  eta_{t}:")
            for row in S:
                lines.append("   [" + ", ".join(row) + "]")
    else:
        lines.append(" slice momentum: zero covector (h_m is trivial)")
    lines.append("")
    lines.append("checks:")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        suffix = f"  ({c.detail})" if c.detail else ""
        lines.append(f"  {status} {c.name}{suffix}")
    return "\n".join(lines) + "\n"
