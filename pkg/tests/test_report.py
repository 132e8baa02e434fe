"""Report assembly and the version-controlled golden reports.

The golden files pin the exact bytes of `decompose --format json` for every
catalog instance; any change to canonical bases, block ordering or
serialization shows up as a diff here.
"""

import json
from pathlib import Path

import pytest

from wittartin.catalog import all_examples
from wittartin.instancefile import from_dict
from wittartin.report import build_report, render_text, report_to_dict

GOLDEN_DIR = Path(__file__).parent / "golden"


def render_json(name, doc) -> str:
    inst = from_dict(doc)
    rep = build_report(inst, instance_doc=doc)
    return json.dumps(report_to_dict(rep), indent=2, sort_keys=True) + "\n"


@pytest.mark.parametrize("name,doc", all_examples())
def test_reports_match_golden_files(name, doc):
    expected = (GOLDEN_DIR / f"{name}.report.json").read_text()
    assert render_json(name, doc) == expected


@pytest.mark.parametrize("name,doc", all_examples())
def test_report_serialization_round_trips(name, doc):
    text = render_json(name, doc)
    payload = json.loads(text)
    assert json.dumps(payload, indent=2, sort_keys=True) + "\n" == text
    assert payload["format"] == "wittartin-report/1"
    assert payload["instance"] == doc


def test_text_rendering_is_deterministic():
    name, doc = all_examples()[0]
    inst = from_dict(doc)
    a = render_text(build_report(inst, instance_doc=doc))
    b = render_text(build_report(inst, instance_doc=doc))
    assert a == b


def test_golden_dims_match_worked_cases():
    generic = json.loads((GOLDEN_DIR / "so3-generic.report.json").read_text())
    assert generic["dims"]["s"] == 0 and generic["dims"]["b"] == 1
    collinear = json.loads(
        (GOLDEN_DIR / "so3-collinear.report.json").read_text())
    assert collinear["dims"]["s"] == 2 and collinear["dims"]["b"] == 0
    zero = json.loads((GOLDEN_DIR / "so3-zero.report.json").read_text())
    assert zero["dims"]["s"] == 0 and zero["dims"]["b"] == 2
    assert zero["witt_H"]["dim_X_m"] == 4
