import io
import json

import pytest

from plumbroot.cli import attach_vectors, run

from tests.conftest import sample_path


def invoke(*argv):
    out = io.StringIO()
    code = run([str(arg) for arg in argv], out)
    return code, out.getvalue()


def test_check():
    code, out = invoke("check", sample_path("s3_one_vertex.json"))
    assert code == 0
    assert json.loads(out) == {"negative_definite": True, "det": -1, "spinc_count": 1}


def test_spinc_text_and_json():
    code, out = invoke("spinc", sample_path("lens_3.json"))
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert lines[:3] == [[1], [3], [5]]
    assert lines[3] == {"det": -3, "count": 3, "h1": [3], "self_conjugate": [[3]]}

    code, out = invoke("spinc", sample_path("lens_3.json"), "--format", "json")
    assert json.loads(out)["classes"] == [[1], [3], [5]]

    code, _ = invoke("spinc", sample_path("lens_3.json"), "--format", "dot")
    assert code == 2


def test_series_commands_on_s3():
    code, out = invoke("zz", sample_path("s3_two_vertex.json"), "--spinc", "auto")
    assert code == 0
    assert json.loads(out) == [
        {"q": "-1/2", "t": 0, "c": "-2"}, {"q": "1/2", "t": -1, "c": "1"}, {"q": "1/2", "t": 1, "c": "1"},
    ]
    expected = [{"q": "-1/2", "c": "-2"}, {"q": "1/2", "c": "2"}]
    assert json.loads(invoke("zhat", sample_path("s3_two_vertex.json"))[1]) == expected
    assert json.loads(invoke("oracle", sample_path("s3_one_vertex.json"))[1]) == expected


def test_lens_needs_an_explicit_class():
    code, out = invoke("zz", sample_path("lens_3.json"))
    assert code == 2 and out == ""

    code, out = invoke("zz", sample_path("lens_3.json"), "--k", "-3", "--order", "5/2")
    assert code == 0
    assert json.loads(out) == [{"q": "0", "t": 0, "c": "-2"}]


def test_root_formats():
    code, out = invoke("root", sample_path("s3_one_vertex.json"), "--k", "-1", "--top", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["top"] == 1 and payload["stab_level"] == 0 and payload["d"] == "0"
    assert [vertex["level"] for vertex in payload["vertices"]] == [0, 1]

    code, out = invoke("root", sample_path("s3_one_vertex.json"), "--k", "-1", "--format", "text")
    assert out.splitlines()[-1] == "[0] -2*q^(-1/2) + t*q^(1/2)"

    code, out = invoke("root", sample_path("lens_2.json"), "--k", "-2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    assert 'label="1/4"' in out


def test_conjcheck():
    code, out = invoke("conjcheck", sample_path("s3_two_vertex.json"), "--k=-1,0")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] and payload["conjugate"] == [1, 0] and payload["mismatches"] == []

    code, out = invoke("conjcheck", sample_path("s3_two_vertex.json"), "--family", "fhat+")
    assert code == 1
    assert json.loads(out)["error"] == "A3Violated"


def test_verify_random():
    code, out = invoke("verify", "random", "--trials", 2, "--moves", 1, "--seed", 3)
    assert code == 0
    summary = json.loads(out)
    assert summary["failures"] == 0 and summary["trials"] == 2


@pytest.mark.parametrize("content, error", [
    ('{"weights": [1]}', "NotNegativeDefinite"),
    ("not json", "MalformedInput"),
    ('{"weights": [-1, -2], "edges": [[0, 5]]}', "BadIndex"),
    ('{"weights": [-1, -2, -2], "edges": [[0, 1]]}', "NotATree"),
])
def test_domain_errors(tmp_path, content, error):
    path = tmp_path / "plumbing.json"
    path.write_text(content)
    code, out = invoke("zz", path, "--k", "1")
    assert code == 1
    assert json.loads(out)["error"] == error


def test_other_domain_errors():
    code, out = invoke("root", sample_path("s3_one_vertex.json"), "--k", "0")
    assert code == 1 and json.loads(out)["error"] == "NotCharacteristic"
    code, out = invoke("zz", sample_path("s3_one_vertex.json"), "--family", "bogus")
    assert code == 1 and json.loads(out)["error"] == "UnknownFamily"


def test_usage_errors():
    assert invoke("explode", sample_path("s3_one_vertex.json"))[0] == 2
    assert invoke("zz", sample_path("s3_one_vertex.json"), "--order", "1.5")[0] == 2
    assert invoke("root", sample_path("s3_one_vertex.json"), "--top", "high")[0] == 2


def test_negative_vector_after_its_flag():
    path = sample_path("conjugate_star_769.json")
    code, detached = invoke("oracle", path, "--k", "-5,5,8,9,1", "--order", "4")
    assert code == 0
    assert detached == invoke("oracle", path, "--k=-5,5,8,9,1", "--order", "4")[1]

    code, out = invoke("conjcheck", sample_path("s3_two_vertex.json"), "--k", "-1,0")
    assert code == 0 and json.loads(out)["k"] == [-1, 0]


def test_attach_vectors():
    assert attach_vectors(["zz", "f", "--k", "-1,0", "--order", "3"]) == ["zz", "f", "--k=-1,0", "--order", "3"]
    assert attach_vectors(["zz", "f", "--k", "3"]) == ["zz", "f", "--k=3"]
    assert attach_vectors(["zz", "f", "--k", "--order", "3"]) == ["zz", "f", "--k", "--order", "3"]
    assert attach_vectors(["zz", "f", "--k"]) == ["zz", "f", "--k"]


def test_spinc_index_selects_a_class():
    path = sample_path("lens_3.json")
    code, out = invoke("zz", path, "--spinc", "1", "--order", "5/2")
    assert code == 0
    assert json.loads(out) == json.loads(invoke("zz", path, "--k", "-3", "--order", "5/2")[1])

    assert invoke("zz", path, "--spinc", "0")[0] == 0
    assert invoke("zz", path, "--spinc", "3") == (2, "")
    assert invoke("zz", path, "--spinc", "x")[0] == 2
    assert invoke("zz", path, "--spinc", "-1")[0] == 2
