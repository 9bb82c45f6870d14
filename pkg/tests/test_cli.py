import json

import pytest
from click.testing import CliRunner

from fincat.cli import main
from fincat.core import FinCat, Morphism, builtin
from fincat.funcat import evaluation_functor, functor_category
from fincat.serialize import functor_to_dict


@pytest.fixture()
def workdir(tmp_path):
    two = builtin("arrow")
    (tmp_path / "arrow.json").write_text(json.dumps(two.to_dict() | {"label": "arrow"}))

    power = functor_category(builtin("free_iso"), two)
    cod = evaluation_functor(power, "1")
    (tmp_path / "cod.json").write_text(json.dumps(functor_to_dict(cod)))

    z3 = FinCat(
        ["*"],
        [Morphism(f"g{k}", "*", "*") for k in range(3)],
        {"*": "g0"},
        {(f"g{i}", f"g{j}"): f"g{(i + j) % 3}" for i in range(3) for j in range(3)},
    )
    broken = z3.to_dict()
    for entry in broken["comp"]:
        if entry["g"] == "g1" and entry["f"] == "g1":
            entry["gf"] = "g1"
    (tmp_path / "broken.json").write_text(json.dumps(broken))

    one = builtin("terminal")
    from fincat.core import FinFunctor

    bang = FinFunctor(
        two, one, {a: "*" for a in two.objects}, {m.name: "id_*" for m in two.morphisms}
    )
    (tmp_path / "bang.json").write_text(json.dumps(functor_to_dict(bang)))
    (tmp_path / "tower.json").write_text(
        json.dumps({"base": "builtin:terminal", "maps": ["bang.json"]})
    )
    (tmp_path / "fragment.json").write_text(
        json.dumps(
            {
                "objects": ["builtin:terminal", "builtin:arrow", "builtin:free_iso"],
                "chosen": "normal",
            }
        )
    )
    return tmp_path


def invoke(args, cwd):
    runner = CliRunner()
    import os

    prev = os.getcwd()
    os.chdir(cwd)
    try:
        return runner.invoke(main, args, catch_exceptions=False)
    finally:
        os.chdir(prev)


def payload(result):
    return json.loads(result.output.strip().splitlines()[-1])


def test_validate_ok(workdir):
    res = invoke(["validate", "arrow.json"], workdir)
    assert res.exit_code == 0
    body = payload(res)
    assert body["pass"] is True
    assert body["inputs"]["category"]["sha256"]


def test_validate_broken_exits_one_with_locus(workdir):
    res = invoke(["validate", "broken.json"], workdir)
    assert res.exit_code == 1
    body = payload(res)
    assert body["result"]["error"] == "AssociativityViolation"
    assert "comp(" in body["result"]["detail"]


def test_malformed_json_exits_two(workdir):
    (workdir / "garbage.json").write_text("{not json")
    res = invoke(["validate", "garbage.json"], workdir)
    assert res.exit_code == 2


def test_classify_cod_projection(workdir):
    res = invoke(["classify", "--functor", "cod.json"], workdir)
    assert res.exit_code == 0
    flags = payload(res)["result"]["fibration"]["flags"]
    assert flags["representable_isofibration"] and flags["normal_isofibration"]


def test_factorize_and_wf(workdir):
    res = invoke(["factorize", "--functor", "bang.json"], workdir)
    assert res.exit_code == 0
    res = invoke(["wf", "--functor", "bang.json"], workdir)
    assert res.exit_code == 0
    assert payload(res)["result"]["biconditionals"]["representable_iff"] is True


def test_limit_commands(workdir):
    res = invoke(["limit", "pullback", "--f", "bang.json", "--g", "bang.json"], workdir)
    assert res.exit_code == 0
    res = invoke(["limit", "pseudolimit", "--f", "bang.json"], workdir)
    assert res.exit_code == 0
    res = invoke(["limit", "pullback-nif", "--f", "bang.json", "--g", "bang.json"], workdir)
    assert res.exit_code == 0
    assert payload(res)["result"]["strict_oracle_agrees"] is True
    res = invoke(["limit", "tower", "--tower", "tower.json"], workdir)
    assert res.exit_code == 0


def test_counterexample_and_unknown_name(workdir):
    res = invoke(["counterexample", "groth_leibniz"], workdir)
    assert res.exit_code == 0
    res = invoke(["counterexample", "missing"], workdir)
    assert res.exit_code == 2


def test_cosmos_check(workdir):
    res = invoke(["cosmos-check", "--fragment", "fragment.json"], workdir)
    assert res.exit_code == 0
    assert payload(res)["result"]["passed"] is True


def test_nip_command(workdir):
    res = invoke(["nip", "--space", "finset", "--size-bound", "2"], workdir)
    assert res.exit_code == 0
    assert payload(res)["result"]["all_fill"] is True


def test_nerve_command(workdir):
    res = invoke(["nerve", "--category", "arrow.json"], workdir)
    assert res.exit_code == 0
    body = payload(res)
    assert len(body["result"]["simplices"][0]) == 2


def test_determinism_modulo_timing(workdir):
    a = payload(invoke(["classify", "--functor", "cod.json"], workdir))
    b = payload(invoke(["classify", "--functor", "cod.json"], workdir))
    a.pop("timing_ms")
    b.pop("timing_ms")
    assert a == b


def test_budget_propagates(workdir):
    res = invoke(["--budget", "1", "limit", "pseudolimit", "--f", "bang.json"], workdir)
    assert res.exit_code == 2


def test_suite_envelopes_are_deterministic(workdir):
    def run():
        res = invoke(["suite", "acceptance", "--only", "5"], workdir)
        assert res.exit_code == 0
        bodies = [json.loads(line) for line in res.output.strip().splitlines()]
        for body in bodies:
            body.pop("timing_ms")
        return bodies

    assert run() == run()


def test_suite_rejects_unknown_name(workdir):
    res = invoke(["suite", "everything"], workdir)
    assert res.exit_code == 2
