from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ainfty.cli import run

GOLDEN = Path(__file__).parent / "golden"
CATS = GOLDEN / "categories"


def call(*argv):
    out = io.StringIO()
    code, rep = run(list(argv), out=out)
    return code, rep, out.getvalue()


def test_zdelta_text():
    code, _, text = call("dk", "--zdelta", "1")
    assert code == 0
    assert "degree 1: g00 - g01" in text
    assert "g0 - g1" in text


def test_check_pass_and_fail():
    assert call("check", str(CATS / "A3-F3.json"))[0] == 0
    code, rep, _ = call("check", str(CATS / "A3-F3-flipped.json"), "--json")
    assert code == 1
    rel = next(c for c in rep["checks"] if c["name"] == "relations")
    assert not rel["ok"] and rel["witnesses"]


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert call("check", str(bad))[0] == 2
    assert call("check", str(tmp_path / "none.json"))[0] == 2
    assert call("check")[0] == 2
    assert call("nerve", str(CATS / "ch-F3.json"), "--field", "Q")[0] == 2
    assert call("compare", str(CATS / "K.json"), str(CATS / "Kprime.json"), "--functor", "nope")[0] == 2


def test_cap_refusal():
    assert call("nerve", str(CATS / "K.json"), "--level", "4", "--cap", "1000")[0] == 3


def test_nerve_signs():
    assert call("nerve", str(CATS / "A3-F3.json"), "--level", "3")[0] == 1
    assert call("nerve", str(CATS / "A3-F3.json"), "--level", "3", "--signs", "functor")[0] == 0


def test_golden_roundtrip(tmp_path):
    g = tmp_path / "r.json"
    code, rep, text = call("check", str(CATS / "min2.json"), "--json", "--golden", str(g))
    assert code == 0 and g.read_text(encoding="utf-8") == text
    assert call("check", str(CATS / "min2.json"), "--golden", str(g))[0] == 0
    g.write_text(text.replace("true", "false", 1), encoding="utf-8")
    assert call("check", str(CATS / "min2.json"), "--golden", str(g))[0] == 1


@pytest.mark.parametrize("name", ["check-K", "dk-zdelta1", "nerve-min2", "compare-retract"])
def test_golden_reports_reproduce(name):
    from golden.build_corpus import commands
    code, rep, text = call(*commands()[name], "--json")
    assert text == (GOLDEN / "reports" / f"{name}.json").read_text(encoding="utf-8")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "ainfty.cli", "dk", "--zdelta", "0", "--json"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert json.loads(r.stdout)["ok"] is True
