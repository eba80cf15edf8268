import pytest

from probelab import Trace
from probelab.errors import TraceFormatError


def test_roundtrip_text():
    ops = [
        ("tag", "3"),
        ("L", 1, 2),
        ("F", 5, None),
        ("F", 5, 2),
        ("I", 0, 9),
        ("D", 0, 9),
        ("Q", 1, 2, 0),
        ("snap",),
        ("restore",),
        ("endtag",),
    ]
    t = Trace(ops=ops)
    text = t.to_text()
    assert "F 5 expect 2" in text
    assert "# tag 3" in text
    back = Trace.from_text(text)
    assert back.ops == ops


def test_node_count_scans_every_op_kind():
    t = Trace(ops=[("L", 1, 2), ("Q", 0, 7, 1), ("F", 4, None)])
    assert t.node_count() == 8


def test_balance_checks():
    assert Trace(ops=[("tag", "a"), ("endtag",)]).check_balance()
    assert not Trace(ops=[("tag", "a"), ("tag", "b")]).check_balance()
    assert not Trace(ops=[("restore",)]).check_balance()


def test_bad_lines_raise():
    with pytest.raises(TraceFormatError):
        Trace.from_text("L 1\n")
    with pytest.raises(TraceFormatError):
        Trace.from_text("Z 1 2\n")
    with pytest.raises(TraceFormatError):
        Trace.from_text("# wat\n")


def test_content_hash_stable_and_sensitive():
    a = Trace(ops=[("L", 1, 2)])
    b = Trace(ops=[("L", 1, 2)])
    c = Trace(ops=[("L", 2, 1)])
    assert a.content_hash() == b.content_hash()
    assert a.content_hash() != c.content_hash()


def test_file_roundtrip_with_params(tmp_path):
    t = Trace(ops=[("L", 0, 1)], seed=7, params={"family": "inc", "n": 16})
    path = tmp_path / "w.trace"
    t.write(path)
    t.write_params(path)
    back = Trace.read(path)
    assert back.ops == t.ops
    assert back.seed == 7
    assert back.params["family"] == "inc"
