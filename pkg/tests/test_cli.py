import io
import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from divlog.cli import (COMMANDS, Document, ParseError, ValidationError, dumps, main, parse,
                        print_document, run)

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"
CORPUS = sorted(FIXTURES.glob("*.json"))

# name -> (argv with fixture names, expected exit code)
GOLDEN_CASES = {
    "blowup_maximal_ideal": (["blowup", "fan_a2", "ideal_n2_maximal"], 0),
    "divided_eq_refinement": (["divided", "eq", "rep_a2_identity", "rep_a2_refined"], 0),
    "square_check_not_nested": (["deform", "square-check", "ideal_n2_e1", "ideal_n2_e2"], 1),
    "square_check_witness": (["deform", "square-check", "ideal_n_two", "ideal_n_one",
                              "--n-max", "3", "--deg-max", "4"], 0),
    "square_check_regular": (["deform", "square-check", "ideal_n2_e2", "ideal_n2_maximal",
                              "--n-max", "2", "--deg-max", "3"], 0),
    "space_glue_p1": (["space", "glue", "space_p1"], 0),
    "fan_star_text": (["fan", "star", "fan_a2", "--ray", "1,1", "--output", "text"], 0),
    "fan_validate_defect": (["fan", "validate", "fan_overlapping"], 0),
    "request_star": (["run", "request_star"], 0),
}


def fixture_args(argv):
    return [str(FIXTURES / f"{a}.json") if (FIXTURES / f"{a}.json").exists() else a for a in argv]


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(fixture_args(argv), stdout=out, stdin=io.StringIO(stdin), stderr=err)
    return code, out.getvalue(), err.getvalue()


def load(name):
    return parse((FIXTURES / f"{name}.json").read_text())


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    d = parse(path.read_text())
    assert parse(print_document(d)) == d
    assert print_document(parse(print_document(d))) == print_document(d)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_outputs(name):
    argv, code = GOLDEN_CASES[name]
    got_code, out, _ = call(argv)
    assert got_code == code
    assert out == (GOLDEN / f"{name}.out").read_text()
    # byte-stable across repeated runs
    assert call(argv)[1] == out


def test_parse_examples():
    d = parse('{"kind":"fan","version":"1","ambient_rank":2,"max_cones":[[[1,0],[0,1]]]}')
    assert d.kind == "fan" and d.data["max_cones"] == [[[0, 1], [1, 0]]]
    with pytest.raises(ValidationError):
        parse('{"kind":"fan","ambient_rank":2,"max_cones":[]}')
    with pytest.raises(ValidationError) as exc:
        parse('{"kind":"fan","version":"1","ambient_rank":2,"max_cones":[[[0,0]]]}')
    assert exc.value.message == "rays must be nonzero"
    with pytest.raises(ParseError) as perr:
        parse('{"kind": "fan",\n  "version": }')
    assert perr.value.line == 2


@pytest.mark.parametrize("text", [
    '{"kind":"monoid","version":"1","ambient_rank":1,"generators":[[1.5]]}',
    '{"kind":"monoid","version":"1","ambient_rank":1,"generators":[[1]],"extra":0}',
    '{"kind":"monoid","version":"2","ambient_rank":1,"generators":[[1]]}',
    '{"kind":"monoid","version":"1","ambient_rank":1,"ambient_rank":1,"generators":[[1]]}',
    '{"kind":"monoid","version":"1","ambient_rank":2,"generators":[[1]]}',
    '{"kind":"widget","version":"1"}',
    '[1, 2]',
])
def test_strict_parsing(text):
    with pytest.raises(ValidationError):
        parse(text)


def test_big_integers_survive():
    big = 10 ** 30
    d = parse(json.dumps({"kind": "ideal", "version": "1",
                          "monoid": {"kind": "monoid", "version": "1", "ambient_rank": 1,
                                     "generators": [[1]]},
                          "generators": [[big]]}))
    assert d.data["generators"] == [[big]]
    assert parse(print_document(d)) == d


# every registered verb with one successful input
VERB_CASES = [
    (["monoid", "saturate", "monoid_unsaturated"], 0),
    (["monoid", "hilbert", "monoid_cone_a1"], 0),
    (["monoid", "sharpen", "monoid_with_units"], 0),
    (["monoid", "pushout", "hom_times2", "hom_times2"], 0),
    (["monoid", "exact", "hom_times2"], 0),
    (["monoid", "kummer", "hom_times2"], 0),
    (["monoid", "neat", "hom_identity_n2"], 0),
    (["monoid", "neat", "hom_times2"], 1),
    (["monoid", "lemma-equiv10", "hom_diagonal"], 0),
    (["fan", "validate", "fan_a2"], 0),
    (["fan", "subdivision-check", "fan_a2_star", "fan_a2"], 0),
    (["fan", "star", "fan_a2", "--ray", "1,2"], 0),
    (["fan", "star", "fan_a2", "--ray=-1,0"], 1),
    (["fan", "refine", "fan_a2_star", "fan_a2"], 0),
    (["fan", "refine", "fan_a2", "fan_p1_a1"], 1),
    (["fan", "pullback", "fan_a2", "subdivision_a2_star"], 0),
    (["fan", "cone-monoid", "fan_p1_a1", "--cone", "1"], 0),
    (["blowup", "fan_a2", "ideal_n2_e1"], 0),
    (["divided", "hom", "fan_a2_star", "fan_a2"], 0),
    (["divided", "hom", "fan_p1_a1", "fan_a2"], 1),
    (["divided", "eq", "rep_a2_identity", "rep_star_to_a2"], 0),
    (["divided", "compose", "rep_a2_refined", "rep_a2_identity"], 0),
    (["divided", "iso", "rep_star_to_a2"], 0),
    (["divided", "exactify", "rep_a2_refined"], 0),
    (["deform", "build", "ideal_n2_e2"], 0),
    (["deform", "generic-fiber", "ideal_n2_e2"], 0),
    (["deform", "zero-fiber", "ideal_n2_e2", "--n-max", "2", "--deg-max", "3"], 0),
    (["deform", "square-check", "ideal_n2_e2", "ideal_n2_maximal"], 0),
    (["space", "validate", "space_star"], 0),
    (["space", "glue", "space_star"], 0),
    (["space", "cover", "space_p1", "--opens", "0"], 0),
    (["space", "union", "space_star", "--opens", "0:0,1"], 0),
    (["space", "cover", "space_p1", "--opens", "7"], 2),
]


@pytest.mark.parametrize("argv,code", VERB_CASES, ids=lambda v: " ".join(v) if isinstance(v, list) else str(v))
def test_exit_codes_per_verb(argv, code):
    got, out, _ = call(argv)
    assert got == code
    result = json.loads(out)
    assert ("error" in result) == (code != 0)


def test_every_verb_is_exercised():
    covered = {tuple(a[:1]) if a[0] == "blowup" else tuple(a[:2]) for a, _ in VERB_CASES}
    assert set(COMMANDS) <= covered


def test_usage_and_validation_exit_two():
    assert call(["fan", "star"], stdin="{")[0] == 2
    assert call(["fan", "frobnicate", "fan_a2"])[0] == 2
    assert call(["fan", "refine", "fan_a2"])[0] == 2
    assert call(["fan", "star", "ideal_n2_e1", "--ray", "1,1"])[0] == 2
    assert call(["fan", "validate", "does_not_exist.json"])[0] == 2
    code, out, _ = call(["fan", "validate", "-"], stdin='{"kind":"fan","version":"1",'
                        '"ambient_rank":2,"max_cones":[[[0,0]]]}')
    assert code == 2 and json.loads(out)["error"]["message"] == "rays must be nonzero"


def test_stdin_and_trace():
    text = (FIXTURES / "fan_a2.json").read_text()
    code, out, err = call(["fan", "star", "--ray", "1,1", "--trace"], stdin=text)
    assert code == 0 and json.loads(out)["max_cones"] == [[[0, 1], [1, 1]], [[1, 0], [1, 1]]]
    code, _, err = call(["blowup", "fan_a2", "ideal_n2_maximal", "--trace"])
    assert code == 0 and err.startswith("trace:")
    assert call(["blowup", "fan_a2", "ideal_n2_maximal"])[2] == ""


def test_run_request_matches_direct_call():
    direct = run(("blowup",), [load("fan_a2"), load("ideal_n2_maximal")])
    via = run(("run",), [load("request_blowup")])
    assert direct.result == via.result and via.exit_code == 0


# -- property tests over generated documents --------------------------------

vec2 = st.lists(st.integers(-40, 40), min_size=2, max_size=2)


@st.composite
def monoid_docs(draw):
    n = draw(st.integers(1, 3))
    gens = draw(st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), max_size=5))
    return {"kind": "monoid", "version": "1", "ambient_rank": n, "generators": gens}


@st.composite
def fan_docs(draw):
    from catalog import random_quadrant_subdivision
    import random
    f = random_quadrant_subdivision(random.Random(draw(st.integers(0, 10 ** 6))))
    return {"kind": "fan", "version": "1", "ambient_rank": 2,
            "max_cones": [[list(r) for r in reversed(c.rays)] for c in reversed(f.max_cones)]}


@st.composite
def documents(draw):
    m = draw(monoid_docs())
    n = m["ambient_rank"]
    f = draw(fan_docs())
    kind = draw(st.sampled_from(["monoid", "hom", "fan", "ideal", "subdivision", "rep", "request"]))
    if kind == "monoid":
        return m
    if kind == "hom":
        mat = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                            min_size=n, max_size=n))
        return {"kind": "hom", "version": "1", "source": m, "target": m, "matrix": mat}
    if kind == "ideal":
        gens = draw(st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n), max_size=4))
        return {"kind": "ideal", "version": "1", "monoid": m, "generators": gens}
    a2 = {"kind": "fan", "version": "1", "ambient_rank": 2, "max_cones": [[[1, 0], [0, 1]]]}
    if kind == "subdivision":
        return {"kind": "subdivision", "version": "1", "base": a2, "fan": f}
    if kind == "rep":
        return {"kind": "rep", "version": "1", "source": a2, "source_subdivision": f,
                "target": a2, "matrix": [[1, 0], [0, 1]]}
    if kind == "request":
        return {"kind": "request", "version": "1", "command": ["fan", "star"], "inputs": [f],
                "flags": {"ray": draw(vec2)}}
    return f


@given(documents())
def test_round_trip_property(obj):
    d = parse(json.dumps(obj))
    assert parse(print_document(d)) == d
    # order of input keys and vectors does not change the printed form
    shuffled = json.dumps(dict(reversed(list(obj.items()))))
    assert print_document(parse(shuffled)) == print_document(d)


@given(st.sampled_from(CORPUS), st.integers(0, 3))
def test_output_is_deterministic(path, _):
    d = parse(path.read_text())
    assert print_document(d) == dumps(d.data)
    assert print_document(d).encode() == print_document(parse(path.read_text())).encode()
