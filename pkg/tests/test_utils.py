import json
import re

from pyfabgupta.bounds import BoundParams
from pyfabgupta.utils import (
    pretty_json,
    render_csv,
    timestamp_filename,
    write_csv_safe,
    write_json_safe,
    write_text_safe,
)


def test_pretty_json_sorts_and_serializes():
    text = pretty_json({"b": (1, 2), "a": BoundParams(d=2, m=1), "c": b"\x01"})
    assert text.index('"a"') < text.index('"b"')
    data = json.loads(text)
    assert data["b"] == [1, 2]
    assert data["a"]["d"] == 2
    assert data["c"] == "01"


def test_render_csv():
    rows = [{"n": 0, "gamma": 3}, {"n": 1, "gamma": 21, "extra": "x"}]
    assert render_csv(rows, ["n", "gamma", "beta"]) == "n,gamma,beta\n0,3,\n1,21,\n"
    assert render_csv(rows[:1]) == "n,gamma\n0,3\n"


def test_atomic_writers(tmp_path):
    p = write_json_safe(tmp_path / "sub" / "r.json", {"x": 1})
    assert json.loads(p.read_text()) == {"x": 1}
    assert not (tmp_path / "sub" / "r.json.tmp").exists()

    p = write_csv_safe(tmp_path / "g.csv", [{"n": 0}])
    assert p.read_text() == "n\n0\n"

    p = write_text_safe(tmp_path / "t.dot", "digraph {}\n")
    assert p.read_text() == "digraph {}\n"


def test_timestamp_filename():
    name = timestamp_filename("growth", "csv")
    assert re.fullmatch(r"growth_\d{8}_\d{6}\.csv", name)
