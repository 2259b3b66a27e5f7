import io
import json
import subprocess
import sys

import pytest

from ordrel.cli import COMMANDS, main
from ordrel.config import ENV_VAR
from ordrel.applications import hoare_theory
from ordrel.io import serialize, serialize_many
from ordrel.lattice import DLRel, DLSpan, chain_dl, dl_tabulate, validate_dl_morphism
from ordrel.poset import chain, identity_map
from ordrel.relations import identity_rel, total_rel, weakening_closure
from ordrel.spans import cocomma, graph, make_square


def run(monkeypatch, capsys, argv, text=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def rel():
    return identity_rel(chain(2))


def test_every_documented_subcommand_exists():
    assert set(COMMANDS) == {
        "validate", "dual", "dual-rel", "comma", "cocomma", "coinserter", "inserter",
        "compose", "roundtrip", "exact-check", "classify", "hoare-theory", "hoare-impl",
        "quotient", "framed-check", "dl-cocomma", "dot", "suite"}


def test_validate_and_files(monkeypatch, capsys, tmp_path, rel):
    src, dst = tmp_path / "in.json", tmp_path / "out.json"
    src.write_text(serialize(rel), encoding="utf-8")
    code, _, _ = run(monkeypatch, capsys, ["validate", "--in", str(src), "--out", str(dst)])
    assert code == 0 and dst.read_text(encoding="utf-8") == serialize(rel)


def test_validation_error_exit(monkeypatch, capsys):
    code, out, err = run(monkeypatch, capsys, ["validate"], '{"type": "poset", "elements": [1]}')
    assert code == 1 and "elements[0]" in err and out == ""


def test_dual_rel_routes_agree(monkeypatch, capsys, rel):
    outs = []
    for via in ("formula", "span", "cospan"):
        code, out, _ = run(monkeypatch, capsys, ["dual-rel", "--via", via], serialize(rel))
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]
    backs = []
    for via in ("formula", "span", "cospan"):
        code, back, _ = run(monkeypatch, capsys, ["dual-rel", "--via", via], outs[0])
        assert code == 0 and json.loads(back)["type"] == "rel"
        backs.append(back)
    assert backs[0] == backs[1] == backs[2]


def test_dual_objects_and_maps(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["dual"], serialize(chain(2)))
    assert json.loads(out)["type"] == "dl"
    code, out, _ = run(monkeypatch, capsys, ["dual"], out)
    assert json.loads(out)["type"] == "poset" and len(json.loads(out)["elements"]) == 2
    code, out, _ = run(monkeypatch, capsys, ["dual"], serialize(identity_map(chain(2))))
    assert json.loads(out)["dl"] is True


def test_span_commands(monkeypatch, capsys, rel):
    g = graph(rel)
    code, out, _ = run(monkeypatch, capsys, ["cocomma"], serialize(g))
    assert code == 0 and out == serialize(cocomma(g))
    code, out, _ = run(monkeypatch, capsys, ["comma"], out)
    assert out == serialize(g)
    code, out, _ = run(monkeypatch, capsys, ["classify"], serialize(g))
    assert json.loads(out) == {"type": "span-class", "weakening_closed": True,
                               "embedding": True, "graph": True}
    code, out, _ = run(monkeypatch, capsys, ["compose"], serialize_many([g, g]))
    assert code == 0 and json.loads(out)["type"] == "span"
    code, out, _ = run(monkeypatch, capsys, ["compose"], serialize_many([rel, rel]))
    assert out == serialize(rel)


def test_parallel_pairs(monkeypatch, capsys, rel):
    g = graph(rel)
    code, out, _ = run(monkeypatch, capsys, ["coinserter"], serialize_many([g.left, g.right]))
    assert code == 0 and json.loads(out)["type"] == "map"
    code, out, _ = run(monkeypatch, capsys, ["inserter"], serialize_many([g.left, g.right]))
    assert code == 0
    code, _, err = run(monkeypatch, capsys, ["inserter"], serialize_many([g.left]))
    assert code == 1 and "2 documents" in err


def test_reports(monkeypatch, capsys, rel):
    code, out, _ = run(monkeypatch, capsys, ["roundtrip"], serialize(rel))
    assert code == 0 and json.loads(out)["entries"][0]["pass"] is True
    g = graph(rel)
    code, out, _ = run(monkeypatch, capsys, ["exact-check"],
                       serialize(make_square(g, cocomma(g))))
    assert code == 0
    code, out, _ = run(monkeypatch, capsys, ["exact-check", "--preconditions", "algebra",
                                             "--instance-size", "2"])
    entries = json.loads(out)["entries"]
    assert code == 0 and entries and all(e["pass"] for e in entries)
    assert set(entries[0]) == {"check", "instance", "pass", "witness"}


def test_hoare_commands(monkeypatch, capsys):
    c2 = chain(2)
    r = weakening_closure(c2, c2, [("0", "1")])
    code, out, _ = run(monkeypatch, capsys, ["hoare-theory"], serialize(r))
    assert out == serialize(hoare_theory(r))
    code, out, _ = run(monkeypatch, capsys, ["hoare-impl"],
                       serialize_many([c2, c2, hoare_theory(r)]))
    assert code == 0 and set(map(tuple, json.loads(out)["pairs"])) >= set(r.pairs())


def test_quotient_and_framed(monkeypatch, capsys):
    c2 = chain(2)
    code, out, _ = run(monkeypatch, capsys, ["quotient"], serialize(total_rel(c2, c2)))
    assert json.loads(out)["cod"]["elements"] == ["0"]
    i = identity_map(c2)
    code, out, _ = run(monkeypatch, capsys, ["framed-check"],
                       serialize_many([identity_rel(c2), i, i, total_rel(c2, c2)]))
    assert code == 0 and json.loads(out)["holds"] is True


def test_dl_cocomma(monkeypatch, capsys):
    a = chain_dl(["0", "a", "1"])
    total = dl_tabulate(DLRel(a, a, total_rel(a.carrier, a.carrier)))
    code, out, _ = run(monkeypatch, capsys, ["dl-cocomma"], serialize(total))
    doc = json.loads(out)
    assert code == 0 and len(doc["left"]["cod"]["poset"]["elements"]) == 1
    two = chain_dl(["0", "1"])
    q = validate_dl_morphism(a, two, {"0": "0", "a": "0", "1": "1"})
    ident = validate_dl_morphism(a, a, {e: e for e in a.elements})
    code, out, _ = run(monkeypatch, capsys, ["cocomma"], serialize(DLSpan(ident, q)))
    code2, out2, _ = run(monkeypatch, capsys, ["dl-cocomma", "--no-verify"],
                         serialize(DLSpan(ident, q)))
    assert out == out2
    code, out, _ = run(monkeypatch, capsys, ["classify"], out)
    assert json.loads(out)["type"] == "cospan-class"


def test_dot(monkeypatch, capsys, rel):
    code, out, _ = run(monkeypatch, capsys, ["dot"], serialize(rel))
    assert code == 0 and out.startswith("digraph")
    code, _, err = run(monkeypatch, capsys, ["dot"], serialize(identity_map(chain(2))))
    assert code == 1 and "UnsupportedDocument" in err


def test_max_size_flag_beats_env(monkeypatch, capsys):
    monkeypatch.setenv(ENV_VAR, "2")
    code, _, err = run(monkeypatch, capsys, ["dual"], serialize(chain(3)))
    assert code == 1 and "SizeGuard" in err
    code, out, _ = run(monkeypatch, capsys, ["dual", "--max-size", "3"], serialize(chain(3)))
    assert code == 0 and len(json.loads(out)["poset"]["elements"]) == 4


def test_suite_exit_codes(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["suite", "--only", "5", "7"])
    assert code == 0 and out.count("[PASS]") == 2
    code, out, _ = run(monkeypatch, capsys, ["suite", "--only", "1", "--poset-size", "2",
                                             "--fault", "drop-pair", "--json"])
    entries = json.loads(out)["entries"]
    assert code == 2 and entries[0]["pass"] is False and entries[0]["witness"]


def test_console_entry_points(rel):
    for cmd in (["ordrel"], [sys.executable, "-m", "ordrel"]):
        p = subprocess.run(cmd + ["validate"], input=serialize(rel), capture_output=True,
                           text=True)
        assert p.returncode == 0 and p.stdout == serialize(rel)
