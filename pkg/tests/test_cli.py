import io
import subprocess
import sys

import pytest

from obkit.cli import run

ANNULUS5 = "page 0 2\ntwist 5 1\n"
PANTS = "page 0 3\ntwist 1 1\ntwist -2 2\ntwist -3 outer\n"


@pytest.fixture
def books(tmp_path):
    files = {
        "a5": ANNULUS5,
        "pants": PANTS,
        "disk": "page 0 1\n",
        "genus": "page 1 2\n",
        "bad": "page 0 2\ntwist 0 1\n",
    }
    paths = {}
    for name, text in files.items():
        path = tmp_path / f"{name}.ob"
        path.write_text(text)
        paths[name] = str(path)
    return paths


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_h1(books):
    assert call("h1", books["a5"]) == (0, "Z/5\n", "")
    assert call("h1", books["pants"])[1] == "0\n"


def test_norm(books):
    assert call("norm", books["pants"])[1] == "2\n"
    assert call("norm", books["genus"])[1] == "3\n"


def test_seifert():
    assert call("seifert", "2", "3", "5")[1] == "Z/31\n"
    assert call("seifert", "-2", "3", "-5")[1] == "Z/11\n"
    assert call("seifert", "2", "3", "-5")[1] == "Z/19\n"


def test_d3():
    assert call("d3", "-1/2", "-1/2")[1] == "-1/2\n"
    assert call("d3", "1/2", "1/2")[1] == "3/2\n"
    assert call("d3", "1/3", "0")[0] == 1


def test_plumb(books):
    code, out, _ = call("plumb", books["a5"], books["a5"])
    assert code == 0
    assert out == "page 0 3\ntwist 5 1\ntwist 5 2\n"


def test_stabilize(books):
    code, out, _ = call("stabilize", books["a5"], "--sign", "+", "--holes", "1")
    assert out == "page 0 3\ntwist 5 1\ntwist 1 outer\n"
    code, out, _ = call("stabilize", books["disk"], "--sign", "-")
    assert out == "page 0 2\ntwist -1 1\n"
    assert call("stabilize", books["a5"], "--holes", "3")[0] == 1


def test_catalog(books):
    code, out, _ = call("catalog", books["pants"])
    assert code == 0
    assert "manifold: S^3" in out
    assert "xi_d(-1/2)" in out
    assert "hg_upper_bound: 2" in out


def test_catalog_miss(tmp_path):
    path = tmp_path / "x.ob"
    path.write_text("page 0 3\ntwist 1 outer\n")
    assert call("catalog", str(path)) == (0, "not in catalog\n", "")


def test_verify_annulus():
    code, out, _ = call("verify-annulus", "10")
    assert code == 0
    assert len([l for l in out.splitlines() if l and l[0] in "-0123456789"]) == 21


def test_search_modes():
    code, out, _ = call("search", "--max-boundary", "2", "--max-total-exponent", "6", "--mode", "cg", "--target", "Z/5")
    assert code == 0
    assert out.splitlines()[1:] == ["page 0 2", "twist 5 1"]
    code, out, _ = call("search", "--max-boundary", "3", "--max-total-exponent", "8", "--mode", "cg", "--target", "Z/31")
    assert out.startswith("no open book")
    assert call("search", "--mode", "cg")[0] == 1
    assert call("search", "--target", "Q")[0] == 1
    code, out, _ = call("search", "--max-total-exponent", "2", "--mode", "additivity")
    assert out.startswith("left,right")


def test_exit_codes(books):
    assert call("h1", books["genus"])[0] == 2
    assert call("plumb", books["genus"], books["a5"])[0] == 2
    code, _, err = call("h1", books["bad"])
    assert code == 1 and "line 2" in err
    assert call("h1", "/nonexistent/file.ob")[0] == 1
    assert call("frobnicate")[0] == 1


def test_module_entry_point(books):
    proc = subprocess.run(
        [sys.executable, "-m", "obkit", "h1", books["a5"]], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == "Z/5\n"


def test_search_output_is_stable():
    first = call("search", "--max-boundary", "3", "--max-total-exponent", "3")
    assert first == call("search", "--max-boundary", "3", "--max-total-exponent", "3")
