import inspect
import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

import ainf
from ainf import cli
from ainf import serialize as S
from ainf.cochains import Cochain
from ainf.core import QQ, ZZ, GradedModule, IntegersMod, parse_ring
from ainf.core.report import Report
from ainf.generators import random_cochain, random_module, random_su_algebra
from ainf.representations import ShamashSystem, identity_rep_morphism, shamash_convert
from ainf.unital import SplitUnitAlgebra, SplitUnitModule, koszul_build, mu_su_build
from corpus import representation_candidate

R5 = IntegersMod(5)


# -- round trips --------------------------------------------------------------------


def _through_text(doc):
    text = S.dumps(doc)
    assert S.dumps(json.loads(text)) == text
    return json.loads(text)


def _random_object(rng, i):
    ring = [ZZ, QQ, R5, IntegersMod(6)][i % 4]
    kind = i % 5
    if kind == 0:
        M = random_module(rng, rng.randrange(1, 4))
        c = random_cochain(rng, M, M, rng.choice([-1, 0, 1]), 3, ring, 0.4)
        if ring is QQ:
            c = c + c.scale(Fraction(-7, 3))
        return "cochain", c
    if kind == 1:
        return "algebra", random_su_algebra(rng, ring, 4)
    if kind == 2:
        return "algebra", random_su_algebra(rng, ring, 4).nu
    if kind == 3:
        return "adjoint", representation_candidate(rng, ring, 4, su=bool(rng.random() < 0.5))[1]
    a, b = rng.randrange(-5, 6), rng.randrange(-5, 6)
    M = GradedModule({0: ["x"], 1: ["y"]})
    return "shamash", ShamashSystem(-a * b, M, {0: {"y": {"x": a}}, 1: {"x": {"y": b}}}, 4, ring)


def _round_trip(kind, obj):
    if kind == "cochain":
        doc = _through_text(S.cochain_to_json(obj))
        back = S.cochain_from_json(doc, obj.source, obj.target, obj.ring)
        assert back == obj
        return S.cochain_to_json(back), doc
    if kind == "algebra":
        doc = _through_text(S.algebra_to_json(obj))
        back = S.algebra_from_json(doc)
        if isinstance(obj, SplitUnitAlgebra):
            assert back.carrier == obj.carrier
            assert back.mu_bar == obj.mu_bar and back.h == obj.h
        else:
            assert back == obj
        return S.algebra_to_json(back), doc
    if kind == "adjoint":
        doc = _through_text(S.adjoint_to_json(obj))
        back = S.adjoint_from_json(doc, obj.algebra)
        assert back == obj
        return S.adjoint_to_json(back), doc
    doc = _through_text(S.shamash_to_json(obj))
    back = S.shamash_from_json(doc)
    assert (back.f, back.module, back.sigma, back.max_arity, back.ring) == \
        (obj.f, obj.module, obj.sigma, obj.max_arity, obj.ring)
    return S.shamash_to_json(back), doc


def test_hundred_objects_round_trip():
    rng = random.Random(0)
    kinds = set()
    for i in range(100):
        kind, obj = _random_object(rng, i)
        again, doc = _round_trip(kind, obj)
        assert S.dumps(again) == S.dumps(doc)
        kinds.add(kind)
    assert kinds == {"cochain", "algebra", "adjoint", "shamash"}


def test_fraction_is_preserved():
    M = GradedModule({0: ["a"]})
    c = Cochain(M, M, -1, 2, {2: {("a", "a"): {"a": Fraction(-7, 3)}}}, QQ)
    doc = S.cochain_to_json(c)
    assert doc["components"][0]["entries"][0]["output"] == {"a": "-7/3"}
    assert S.cochain_from_json(doc, M, M, QQ)(("a", "a")) == {"a": Fraction(-7, 3)}


def test_module_json_is_canonical():
    doc = {"degrees": {"1": ["e"], "0": ["1"]}}
    M = S.module_from_json(doc)
    assert S.dumps(S.module_to_json(M)) == S.dumps(doc)


def test_map_json():
    M = GradedModule({0: ["1"], 1: ["e"]})
    doc = {"degree": -1, "entries": [{"from": "e", "to": "1", "coeff": "3"}]}
    f = S.gmap_from_json(doc, M, M, ZZ)
    assert f.image("e") == {"1": 3}
    assert S.gmap_to_json(f) == doc


@pytest.mark.parametrize("doc,path", [
    ({"degrees": {"x": ["a"]}}, "module.degrees"),
    ({"degrees": {"0": "a"}}, "module.degrees.0"),
    ({}, "module"),
])
def test_schema_errors_locate_the_node(doc, path):
    with pytest.raises(S.SchemaError) as e:
        S.module_from_json(doc)
    assert e.value.path == path


def test_bad_scalars_and_arities():
    M = GradedModule({0: ["a"]})
    with pytest.raises(S.SchemaError):
        S.cochain_from_json({"degree": -1, "max_arity": 2, "components": [
            {"arity": 2, "entries": [{"inputs": ["a", "a"], "output": {"a": "1/0"}}]}]}, M, M, QQ)
    with pytest.raises(S.SchemaError):
        S.cochain_from_json({"degree": -1, "max_arity": 2, "components": [
            {"arity": 2, "entries": [{"inputs": ["a"], "output": {"a": "1"}}]}]}, M, M, ZZ)
    with pytest.raises(S.SchemaError):
        S.cochain_from_json({"degree": True, "max_arity": 2, "components": []}, M, M, ZZ)


# -- command line ------------------------------------------------------------------------


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(S.dumps(doc))
    return str(p)


def _koszul_doc(f=3, ring=ZZ, N=5):
    return S.algebra_to_json(koszul_build(f, ring, N))


def _mutated_koszul(tmp_path):
    K = koszul_build(3, ZZ, 4)
    nu = K.nu + Cochain(K.module, K.module, -1, 4, {2: {("1", "1"): {"1": 1}}}, ZZ)
    return _write(tmp_path, "bad.json", S.algebra_to_json(nu))


def test_koszul_pipe_curved_bar():
    koszul = subprocess.run([sys.executable, "-m", "ainf.cli", "koszul", "--f", "3", "--ring",
                             "Z", "--max-arity", "5"], capture_output=True, text=True, check=True)
    bar = subprocess.run([sys.executable, "-m", "ainf.cli", "curved-bar"], input=koszul.stdout,
                         capture_output=True, text=True)
    assert bar.returncode == 0
    doc = json.loads(bar.stdout)
    assert doc["d"] == []
    assert doc["xi"] == [{"word": ["e"], "value": "-3"}]
    assert doc["report"]["valid"] and doc["report"]["max_arity"] == 5


def test_exit_codes(tmp_path, capsys):
    K = _write(tmp_path, "k.json", _koszul_doc())
    assert run(["check-ainf", "--algebra", K], capsys)[0] == 0
    code, out, _ = run(["check-ainf", "--algebra", _mutated_koszul(tmp_path)], capsys)
    rep = json.loads(out)
    assert code == 1 and not rep["valid"]
    # doubling 1.1 breaks the Leibniz rule on [e|1] since d(e) = 3
    assert rep["violations"][0]["arity"] == 2
    trivial = GradedModule({0: ["1"]})
    mu_su = mu_su_build(SplitUnitModule(trivial, "1"), 4, ZZ)
    T = _write(tmp_path, "t.json", S.algebra_to_json(mu_su))
    assert run(["check-ainf", "--algebra", T], capsys)[0] == 0


@pytest.mark.parametrize("text,needle", [
    ("{", "invalid JSON"),
    ('{"type": "split_unit_algebra"}', "missing key 'module'"),
    ('{"type": "what", "module": {"degrees": {}}}', "unknown algebra type"),
    ('{"type": "ainf_algebra", "ring": "R", "module": {"degrees": {}}}', "ring"),
])
def test_malformed_input(tmp_path, capsys, text, needle):
    p = tmp_path / "m.json"
    p.write_text(text)
    code, out, err = run(["check-ainf", "--algebra", str(p)], capsys)
    assert code == 2 and out == ""
    assert str(p) in err and needle in err


def test_usage_errors(tmp_path, capsys):
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["check-ainf", "--algebra", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["koszul", "--f", "1", "--max-arity", "0"], capsys)[0] == 2
    K = _write(tmp_path, "k.json", _koszul_doc())
    assert run(["check-ainf", "--algebra", K, "--ring", "Q"], capsys)[0] == 2
    assert run(["koszul", "--f", "x"], capsys)[0] == 2


def test_out_and_in_flags(tmp_path, capsys):
    out = tmp_path / "k.json"
    assert run(["koszul", "--f", "2", "--out", str(out)], capsys) == (0, "", "")
    assert json.loads(out.read_text())["ring"] == "Z"
    code, text, _ = run(["curved-bar", "--in", str(out), "--max-arity", "3"], capsys)
    assert code == 0 and json.loads(text)["max_arity"] == 3


def test_verbose_lists_everything(tmp_path, capsys):
    bad = _mutated_koszul(tmp_path)
    _, short, _ = run(["check-ainf", "--algebra", bad], capsys)
    _, long, _ = run(["check-ainf", "--algebra", bad, "--verbose"], capsys)
    s, l = json.loads(short), json.loads(long)
    assert s["violation_count"] == l["violation_count"] == len(l["violations"])
    assert len(s["violations"]) <= len(l["violations"])


def test_repeated_runs_are_byte_identical(tmp_path):
    K = _write(tmp_path, "k.json", _koszul_doc(6, IntegersMod(6), 4))
    outs = set()
    for _ in range(3):
        r = subprocess.run([sys.executable, "-m", "ainf.cli", "bar", "--algebra", K],
                           capture_output=True)
        outs.add(r.stdout)
    assert len(outs) == 1


# -- the coverage audit --------------------------------------------------------------------


def _fixtures(tmp_path):
    """One input set per command, all against the f = 6 Shamash fixture."""
    K = koszul_build(6, ZZ, 4)
    M = GradedModule({0: ["x"], 1: ["y"]})
    sys_ = ShamashSystem(6, M, {0: {"y": {"x": 2}}, 1: {"x": {"y": -3}}}, 4)
    lam = shamash_convert("to_adjoint", sys_, K)
    eta = Cochain(K.module, K.module, -1, 4, {1: {("e",): {"1": 5}}}, ZZ)
    u = Cochain(K.module, K.module, 0, 4, {1: {("e",): {"e": 1}}}, ZZ)
    zero = Cochain(K.module, K.module, 0, 4, {}, ZZ)
    f = {
        "su": _write(tmp_path, "su.json", S.algebra_to_json(K)),
        "nu": _write(tmp_path, "nu.json", S.algebra_to_json(K.nu)),
        "rep": _write(tmp_path, "rep.json", S.adjoint_to_json(lam)),
        "gid": _write(tmp_path, "gid.json", S.adjoint_to_json(identity_rep_morphism(lam, 1))),
        "sys": _write(tmp_path, "sys.json", S.shamash_to_json(sys_)),
        "eta": _write(tmp_path, "eta.json", S.cochain_to_json(eta)),
        "alpha": _write(tmp_path, "alpha.json", S.cochain_to_json(u)),
        "g": _write(tmp_path, "g.json", {"g": S.cochain_to_json(Cochain.identity(K.module, 4, ZZ))}),
        "gsu": _write(tmp_path, "gsu.json", {"g_bar": S.cochain_to_json(u), "a": S.cochain_to_json(zero)}),
    }
    return f


AUDIT = {
    "check_stasheff": "check-ainf --algebra {nu}",
    "check_stasheff_su": "check-ainf --algebra {su} --route stasheff",
    "mc_check_su": "check-ainf --algebra {su}",
    "bracket_structure_check": "check-ainf --algebra {su} --route bracket",
    "check_morphism": "check-morphism --source {nu} --target {nu} --morphism {g}",
    "su_morphism_check": "check-morphism --source {su} --target {su} --morphism {gsu}",
    "check_su_morphism_full": "check-morphism --source {su} --target {su} --morphism {gsu} --route full",
    "check_curved_morphism": "check-morphism --source {su} --target {su} --morphism {gsu} --route curved",
    "check_stasheff_by_square": "bar --algebra {su}",
    "check_curved_coalgebra": "curved-bar --algebra {su}",
    "check_representation": "check-rep --algebra {nu} --rep {rep}",
    "check_su_representation": "check-rep --algebra {su} --rep {rep} --strict-unital",
    "check_dg_comodule": "check-rep --algebra {nu} --rep {rep} --route comodule",
    "check_curved_comodule": "check-rep --algebra {su} --rep {rep} --strict-unital --route comodule",
    "check_rep_morphism": "check-rep --algebra {su} --rep {rep} --strict-unital --morphism {gid} --target-rep {rep}",
    "comodule_morphism_check": "check-rep --algebra {su} --rep {rep} --strict-unital --route comodule --morphism {gid} --target-rep {rep}",
    "ShamashSystem.relations": "mf --shamash {sys}",
    "first_order_check": "deform-check --algebra {nu} --eta {eta}",
    "su_first_order_check": "deform-check --algebra {su} --eta {eta} --strict-unital",
}


def _library_checkers():
    names = set()
    for mod in (ainf.ainfinity, ainf.unital, ainf.representations, ainf.comodules,
                ainf.deformations):
        for name, fn in vars(mod).items():
            if name.startswith("_") or not inspect.isfunction(fn) or fn.__module__ != mod.__name__:
                continue
            if inspect.signature(fn).return_annotation in (Report, "Report"):
                names.add(name)
    names.add("ShamashSystem.relations")
    return names


def test_every_checker_has_a_command():
    assert set(cli.COVERAGE) == _library_checkers() == set(AUDIT)
    for name, cmd in AUDIT.items():
        assert cli.COVERAGE[name].split()[0] == cmd.split()[0]


@pytest.mark.parametrize("name", sorted(AUDIT))
def test_checker_is_reached(name, tmp_path, capsys, monkeypatch):
    calls = []
    if name == "ShamashSystem.relations":
        orig = ShamashSystem.relations

        def spy(self, *a, **k):
            calls.append(1)
            return orig(self, *a, **k)

        monkeypatch.setattr(ShamashSystem, "relations", spy)
    else:
        orig = getattr(cli, name)

        def spy(*a, **k):
            calls.append(1)
            return orig(*a, **k)

        monkeypatch.setattr(cli, name, spy)
    argv = AUDIT[name].format(**_fixtures(tmp_path)).split()
    code, out, err = run(argv, capsys)
    assert code in (0, 1), err
    assert calls
    json.loads(out)


def test_command_results_on_the_fixture(tmp_path, capsys):
    fx = _fixtures(tmp_path)
    for name in ("check_su_representation", "check_curved_comodule", "mc_check_su",
                 "check_rep_morphism", "comodule_morphism_check"):
        assert run(AUDIT[name].format(**fx).split(), capsys)[0] == 0, name
    # lambda is strictly unital but not a representation of the plain nu
    assert run(AUDIT["check_representation"].format(**fx).split(), capsys)[0] == 1
    code, out, _ = run(AUDIT["ShamashSystem.relations"].format(**fx).split(), capsys)
    mf = json.loads(out)
    assert code == 0 and mf["f"] == "6"
    assert mf["phi"]["entries"] == [{"from": "x", "to": "y", "coeff": "3"}]
    assert mf["psi"]["entries"] == [{"from": "y", "to": "x", "coeff": "2"}]
    code, out, _ = run((AUDIT["su_first_order_check"] + " --coboundary").format(**fx).split(), capsys)
    assert code == 0 and json.loads(out)["coboundary"] == "undecided"
    code, out, _ = run(f"gauge --algebra {fx['su']} --eta {fx['eta']} --alpha {fx['alpha']} "
                       "--strict-unital".split(), capsys)
    assert code == 0 and json.loads(out)["type"] == "cochain"


def test_mf_rejects_bad_systems(tmp_path, capsys):
    M = GradedModule({0: ["x"], 1: ["y"], 3: ["z"]})
    bad = ShamashSystem(5, M, {0: {"y": {"x": 2}}, 1: {"x": {"y": -3}}}, 4, validate=False)
    code, out, _ = run(["mf", "--shamash", _write(tmp_path, "b.json", S.shamash_to_json(bad))],
                       capsys)
    assert code == 1 and not json.loads(out)["valid"]
    high = ShamashSystem(0, M, {2: {"x": {"z": 1}}}, 4, validate=False)
    code, _, err = run(["mf", "--shamash", _write(tmp_path, "h.json", S.shamash_to_json(high))],
                       capsys)
    assert code == 2 and "sigma^2" in err
    M2 = GradedModule({0: ["x"], 1: ["y"]})
    ok = ShamashSystem(6, M2, {0: {"y": {"x": 2}}, 1: {"x": {"y": -3}}}, 4)
    code, _, _ = run(["mf", "--koszul", "5", "--shamash",
                      _write(tmp_path, "k.json", S.shamash_to_json(ok))], capsys)
    assert code == 1


def test_ring_spec_round_trip():
    for spec in ("Z", "Q", "Zmod:6"):
        assert parse_ring(spec).spec == spec
