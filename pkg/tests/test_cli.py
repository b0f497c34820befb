import io
import json

import pytest

from skewpbw.cli import main
from skewpbw.errors import InhomogeneousError, ParseError, UndeclaredNameError
from skewpbw.fileformat import bundled_names, bundled_text, parse_presentation, render_presentation

MINIMAL = "generators x\ngroup g\ndegree x g\nbound 3\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_minimal():
    pf = parse_presentation(MINIMAL)
    assert pf.generators == ("x",) and pf.bound == 3 and pf.relations == () and pf.coideal is None
    assert pf.table[0][0] == 1


def test_parse_qserre_relation():
    pf = parse_presentation(bundled_text("qserre"))
    ctx = pf.context()
    assert pf.relations[0] == "x1.x1.x2 + ((-q-1)/q) * x1.x2.x1 + (1/q) * x2.x1.x1"
    assert ctx.parse(pf.relations[0]) == ctx.parse("[x1,[x1,x2]]")


def test_parse_errors():
    with pytest.raises(UndeclaredNameError, match="line 5"):
        parse_presentation(MINIMAL.replace("bound 3", "bound 3\np x g3 q"))
    with pytest.raises(ParseError, match="line 1"):
        parse_presentation("generatorz x\n")
    with pytest.raises(ParseError, match="degree"):
        parse_presentation("generators x y\ngroup g\ndegree x g\nbound 2\n")
    with pytest.raises(InhomogeneousError, match=r"\(2,\).*\(3,\)|\(3,\).*\(2,\)"):
        parse_presentation(MINIMAL + "relation x^2 + x^3\n")
    with pytest.raises(ParseError, match="line 5"):
        parse_presentation(MINIMAL + "relation x +\n")
    with pytest.raises(ParseError):
        parse_presentation(MINIMAL.replace("bound 3", "bound 0"))


@pytest.mark.parametrize("name", bundled_names())
def test_render_round_trip(name):
    pf = parse_presentation(bundled_text(name))
    again = parse_presentation(render_presentation(pf))
    assert again == pf
    assert render_presentation(again) == render_presentation(pf)


def test_pbw_qserre():
    code, out, _ = run("--format", "machine", "pbw", "@qserre")
    assert code == 0
    report = json.loads(out)
    assert [h["word"] for h in report["hard_letters"]] == ["[x2]", "[x1.x2]", "[x1]"]
    assert {h["height"] for h in report["hard_letters"]} == {"inf"}


def test_machine_output_is_deterministic():
    outs = {run("pbw", "@qserre", "--format", "machine")[1] for _ in range(3)}
    outs |= {run("--format", "machine", "pbw", "@qserre")[1]}
    assert len(outs) == 1
    a = run("--format", "machine", "coideal", "@coideal_commuting")[1]
    assert a == run("--format", "machine", "coideal", "@coideal_commuting")[1]


def test_member_false_with_certificate():
    code, out, _ = run("--format", "machine", "member", "@coideal_commuting", "--expr", "x2")
    assert code == 0
    report = json.loads(out)
    assert report["member"] is False and report["offending_letter"] == "[x2]"
    code, out, _ = run("member", "@coideal_commuting", "--expr", "x1^2")
    assert code == 0 and "member" in out


def test_noncoideal_exit_3_with_witness():
    code, out, _ = run("--format", "machine", "coideal", "@noncoideal")
    assert code == 3
    assert json.loads(out)["witness"] == "((q-1)/q) * g1 * x2 (x) x1"
    code, _, err = run("coideal", "@noncoideal")
    assert code == 3 and "witness" in err


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.pres"
    bad.write_text("generators x\ngroup g\nbound x\n")
    assert run("pbw", str(bad))[0] == 2
    assert run("pbw", str(tmp_path / "missing.pres"))[0] == 2
    cube = tmp_path / "cube.pres"
    cube.write_text(MINIMAL.replace("bound 3", "bound 4") + "p x g q\nrelation x^3\n")
    assert run("pbw", str(cube))[0] == 3
    assert run("check-hopf", str(cube))[0] == 3
    assert run("pbw", "--no-hopf-check", str(cube))[0] == 4
    assert run("reduce", "@qserre", "--expr", "x1^7")[0] == 5
    assert run("reduce", "@qserre", "--expr", "x9")[0] == 2
    assert run("member", "@qserre", "--expr", "x1")[0] == 0
    assert run("member", "@free2", "--expr", "x1")[0] == 2
    assert run("check-hopf", "@qserre")[0] == 0


def test_reduce_and_coproduct():
    code, out, _ = run("--format", "machine", "reduce", "@free2", "--expr", "x1 x2")
    assert code == 0
    assert json.loads(out)["superwords"] == "[x1.x2] + (1/q) * [x2][x1]"
    code, out, _ = run("--format", "machine", "coproduct", "@free2", "--expr", "x1 x2")
    assert json.loads(out)["coproduct"] == (
        "x1.x2 (x) 1 + (1/q) * g2 * x1 (x) x2 + g1 * x2 (x) x1 + g1.g2 (x) x1.x2"
    )
