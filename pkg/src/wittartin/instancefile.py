"""Versioned JSON instance files.

Numbers are exact rational strings ("p/q" or "p"); no floating point ever
appears in an instance file.  Structural problems (bad JSON, missing keys,
wrong shapes) raise InstanceFormatError and map to exit code 2; semantic
problems (non-Jacobi constants, dependent bases, indefinite inner products)
raise InstanceDataError and map to a failed named check and exit code 1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .exactlin import Matrix, NotPositiveDefinite, Subspace, Vec
from .liecore import InnerProduct, LieAlgebra, StructureConstantError, killing_form
from .splitting import ProblemInstance, SliceRep
from .exactlin import BilinearForm

FORMAT = "wittartin-instance/1"


class InstanceFormatError(ValueError):
    """Malformed file: not an instance of the documented schema."""


class InstanceDataError(ValueError):
    """Well-formed file whose mathematical content is invalid."""

    def __init__(self, check_name: str, detail: str):
        self.check_name = check_name
        self.detail = detail
        super().__init__(f"{check_name}: {detail}")


def _parse_fraction(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise InstanceFormatError(f"{where}: booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise InstanceFormatError(f"{where}: bad rational {x!r} ({e})")
    raise InstanceFormatError(
        f"{where}: expected a rational string or integer, got {type(x).__name__}")


def _parse_vector(v: Any, length: int, where: str) -> Vec:
    if not isinstance(v, list) or len(v) != length:
        raise InstanceFormatError(f"{where}: expected a list of length {length}")
    return tuple(_parse_fraction(x, f"{where}[{i}]") for i, x in enumerate(v))


def _parse_matrix(m: Any, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(m, list) or len(m) != rows:
        raise InstanceFormatError(f"{where}: expected {rows} rows")
    data = [_parse_vector(r, cols, f"{where}[{i}]") for i, r in enumerate(m)]
    return Matrix.from_rows(data, cols=cols)


def _fmt(x: Fraction) -> str:
    return str(x)


def loads(text: str) -> ProblemInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    return from_dict(doc)


def load(path: str) -> ProblemInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def from_dict(doc: Any) -> ProblemInstance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level must be a JSON object")
    if doc.get("format") != FORMAT:
        raise InstanceFormatError(
            f"field 'format' must be {FORMAT!r}, got {doc.get('format')!r}")
    n = doc.get("dim")
    if not isinstance(n, int) or n < 0:
        raise InstanceFormatError("field 'dim' must be a nonnegative integer")

    sc = doc.get("structure_constants")
    if not isinstance(sc, list) or len(sc) != n:
        raise InstanceFormatError("'structure_constants' must be an n-list")
    table = []
    for i, ci in enumerate(sc):
        if not isinstance(ci, list) or len(ci) != n:
            raise InstanceFormatError(f"'structure_constants'[{i}] must be an n-list")
        table.append(tuple(
            _parse_vector(cij, n, f"structure_constants[{i}][{j}]")
            for j, cij in enumerate(ci)))
    try:
        algebra = LieAlgebra(n, tuple(table))
    except StructureConstantError as e:
        raise InstanceDataError("structure_constants", str(e))

    def basis_subspace(key: str) -> tuple[Subspace, list[Vec]]:
        raw = doc.get(key)
        if not isinstance(raw, list):
            raise InstanceFormatError(f"'{key}' must be a list of vectors")
        vectors = [_parse_vector(v, n, f"{key}[{i}]") for i, v in enumerate(raw)]
        space = Subspace.span(n, vectors)
        if space.dim != len(vectors):
            raise InstanceDataError(f"{key}_independent",
                                    f"{key} vectors are linearly dependent")
        return space, vectors

    h, _ = basis_subspace("h_basis")
    gm, gm_given = basis_subspace("gm_basis")
    mu = _parse_vector(doc.get("mu"), n, "mu")

    ip_raw = doc.get("inner_product", "identity")
    if ip_raw == "identity":
        gram = Matrix.identity(n)
    elif ip_raw == "neg_killing":
        gram = -killing_form(algebra).gram
    else:
        gram = _parse_matrix(ip_raw, n, n, "inner_product")
    try:
        ip = InnerProduct(gram)
    except NotPositiveDefinite as e:
        raise InstanceDataError("inner_product_positive_definite", str(e))

    reps: list[Matrix] = []
    raw_reps = doc.get("gm_component_reps")
    if raw_reps is not None:
        if not isinstance(raw_reps, list):
            raise InstanceFormatError("'gm_component_reps' must be a list")
        for t, rep in enumerate(raw_reps):
            reps.append(_parse_matrix(rep, n, n, f"gm_component_reps[{t}]"))
        # Average the inner product over the supplied representatives so
        # complements stay invariant under the listed components as well.
        acc = ip.gram
        for rep in reps:
            acc = acc + rep.transpose() @ ip.gram @ rep
        averaged = acc.scale(Fraction(1, len(reps) + 1))
        try:
            ip = InnerProduct(averaged)
        except NotPositiveDefinite as e:
            raise InstanceDataError("inner_product_positive_definite",
                                    f"after averaging over reps: {e}")

    slice_rep = _parse_slice(doc.get("slice"), gm, gm_given)

    return ProblemInstance(
        algebra=algebra, h=h, gm=gm, mu=mu, ip=ip,
        slice_rep=slice_rep, gm_component_reps=tuple(reps),
    )


def _parse_slice(raw: Any, gm: Subspace, gm_given: list[Vec]) -> SliceRep:
    if raw is None:
        if gm.dim == 0:
            return SliceRep.trivial()
        return SliceRep(BilinearForm(Matrix.zeros(0, 0)),
                        tuple(Matrix.zeros(0, 0) for _ in range(gm.dim)))
    if not isinstance(raw, dict):
        raise InstanceFormatError("'slice' must be null or an object")
    d = raw.get("dim")
    if not isinstance(d, int) or d < 0:
        raise InstanceFormatError("'slice.dim' must be a nonnegative integer")
    omega = BilinearForm(_parse_matrix(raw.get("omega", []), d, d, "slice.omega"))
    actions_raw = raw.get("action", [])
    if not isinstance(actions_raw, list) or len(actions_raw) != len(gm_given):
        raise InstanceFormatError(
            "'slice.action' must list one matrix per gm_basis vector")
    given_actions = [
        _parse_matrix(a, d, d, f"slice.action[{t}]")
        for t, a in enumerate(actions_raw)
    ]
    # Actions are supplied for the file's gm basis; re-express them for the
    # canonical basis so everything downstream keys off canonical columns.
    if gm.dim:
        given = Matrix.from_cols(gm_given, rows=gm.ambient_dim)
        canonical_actions = []
        for w in gm.basis_vectors():
            coords = given.solve(w)
            if coords is None:
                raise InstanceDataError("gm_basis_independent",
                                        "cannot rebase slice actions")
            A = Matrix.zeros(d, d)
            for t, c in enumerate(coords):
                if c != 0:
                    A = A + given_actions[t].scale(c)
            canonical_actions.append(A)
        actions = tuple(canonical_actions)
    else:
        actions = ()
    return SliceRep(omega, actions)


def to_dict(doc_or_inst) -> dict:
    """Serialize either an already-built dict (kept as-is) or an instance."""
    if isinstance(doc_or_inst, dict):
        return doc_or_inst
    inst = doc_or_inst
    n = inst.dim
    return {
        "format": FORMAT,
        "dim": n,
        "structure_constants": [
            [[_fmt(x) for x in cij] for cij in ci] for ci in inst.algebra.c
        ],
        "h_basis": [[_fmt(x) for x in v] for v in inst.h.basis_vectors()],
        "gm_basis": [[_fmt(x) for x in v] for v in inst.gm.basis_vectors()],
        "mu": [_fmt(x) for x in inst.mu],
        "inner_product": [[_fmt(x) for x in row] for row in inst.ip.gram.entries],
        "slice": {
            "dim": inst.slice_rep.dim,
            "omega": [[_fmt(x) for x in row]
                      for row in inst.slice_rep.omega.gram.entries],
            "action": [[[_fmt(x) for x in row] for row in A.entries]
                       for A in inst.slice_rep.action],
        },
    }


def dumps(doc_or_inst) -> str:
    return json.dumps(to_dict(doc_or_inst), indent=2, sort_keys=True) + "\n"
