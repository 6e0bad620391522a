import json

import pytest

from caspas.problem_io import (SchemaError, bundled, dumps_problem, load_problem, load_replacement, parse_json,
                               problem_from_dict, problem_to_dict, solar_problem)


@pytest.fixture
def doc():
    return json.loads(bundled("solar.json").read_text())


def test_bundled_problem_shape(solar):
    assert solar.alternatives == ("P1", "P2", "P3", "P4", "P5")
    assert [c.kind for c in solar.criteria] == ["benefit", "cost", "benefit", "cost"]
    assert solar.expert_weights == (0.4, 0.4, 0.2)
    assert len(solar.assessments) == 3 and all(len(m) == 5 for m in solar.assessments)


def test_round_trip_is_idempotent(solar):
    text = dumps_problem(solar)
    again = problem_from_dict(json.loads(text))
    assert again == solar
    assert dumps_problem(again) == text


def test_key_order_does_not_matter(doc):
    shuffled = {k: doc[k] for k in reversed(list(doc))}
    shuffled["assessments"] = {e: {a: dict(reversed(list(row.items()))) for a, row in per.items()}
                               for e, per in doc["assessments"].items()}
    assert dumps_problem(problem_from_dict(shuffled)) == dumps_problem(problem_from_dict(doc))


def test_scale_override_round_trips(doc):
    doc["scale"] = {"M": [0.5, 0.4, 0.3]}
    p = problem_from_dict(doc)
    assert p.scale["M"].astuple() == (0.5, 0.4, 0.3)
    assert problem_to_dict(p)["scale"] == {"M": [0.5, 0.4, 0.3]}


def test_invalid_json_reports_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "alternatives": [\n    "P1",\n  ]\n}\n')
    with pytest.raises(SchemaError, match=r"broken\.json:4:3"):
        load_problem(path)
    with pytest.raises(SchemaError, match="<input>:1:"):
        parse_json("{")


@pytest.mark.parametrize("mutate, fragment", [
    (lambda d: d.pop("experts"), "'experts' is a required property"),
    (lambda d: d["criteria"][0].update(kind="neutral"), "$['criteria'][0]['kind']"),
    (lambda d: d["experts"][0].update(weight=1.5), "$['experts'][0]['weight']"),
    (lambda d: d["assessments"]["E1"]["P1"].pop("T3"), "missing entry 'T3'"),
    (lambda d: d["assessments"]["E1"]["P1"].update(T9="M"), "unknown criteria ['T9']"),
    (lambda d: d["assessments"].update(E9={}), "unknown experts ['E9']"),
    (lambda d: d["assessments"]["E2"]["P2"].update(T1="ZZ"), "unknown term"),
    (lambda d: d["experts"][2].update(weight=0.3), "expert weights"),
    (lambda d: d.update(scale={"M": [0.7, 0.6, 0.5]}), "$['scale']"),
])
def test_schema_errors(doc, mutate, fragment):
    mutate(doc)
    with pytest.raises(SchemaError) as info:
        problem_from_dict(doc, "solar.json")
    assert fragment in str(info.value)
    assert str(info.value).startswith("solar.json")


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError, match="cannot read"):
        load_problem(tmp_path / "nope.json")


def test_replacement_file(solar):
    target, ratings, name = load_replacement(bundled("solar_p3_prime.json"), solar)
    assert target == "P3" and name == "P3'"
    assert ratings[0] == ["M", "L", "L", "ML"]
    assert len(ratings) == 3


def test_replacement_missing_expert(solar, tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"alternative": "P3", "assessments": {"E1": {"T1": "M"}}}))
    with pytest.raises(SchemaError, match="missing entry"):
        load_replacement(path, solar)


def test_solar_problem_is_fresh_each_time():
    assert solar_problem() == solar_problem()
