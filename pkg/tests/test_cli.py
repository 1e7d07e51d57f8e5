"""Command-line driver: exit codes, report schema, determinism, config."""

import json
import subprocess
import sys

import pytest

from loopdeform.cli import (
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_PASS,
    EXIT_USAGE,
    UsageError,
    VerificationReport,
    cmd_cybe,
    cmd_limit,
    cmd_twist,
    cmd_verify,
    load_config_file,
    main,
)

ALL_ALGEBRAS = ("uq-sl2", "uq-sl3", "drinfeldian-sl2", "drinfeldian-sl3",
                "yangian-sl2", "twisted-yangian-sl2")


# ---------------------------------------------------------------------------
# report object invariants
# ---------------------------------------------------------------------------


def test_report_status_rules():
    mk = lambda items: VerificationReport("a", "s", items, {})
    assert mk([("x", "pass", None)]).status == "pass"
    assert mk([("x", "pass", None), ("y", "unknown", "?")]).status == "inconclusive"
    # fail dominates unknown: a hard counterexample is never softened
    assert mk([("x", "unknown", None), ("y", "fail", "w")]).status == "fail"
    assert mk([]).status == "pass"
    assert mk([("x", "pass", None)]).exit_code == EXIT_PASS
    assert mk([("x", "unknown", None)]).exit_code == EXIT_INCONCLUSIVE
    assert mk([("x", "fail", None)]).exit_code == EXIT_FAIL


def test_report_json_shape():
    rep = VerificationReport("yangian-sl2", "relations",
                             [("a", "pass", None), ("b", "fail", "entry")],
                             {"k": 1})
    doc = json.loads(rep.to_json())
    assert doc["schema"] == 1
    assert doc["algebra"] == "yangian-sl2"
    assert doc["suite"] == "relations"
    assert doc["config"] == {"k": 1}
    assert doc["items"] == [{"label": "a", "verdict": "pass"},
                            {"label": "b", "verdict": "fail",
                             "residual": "entry"}]
    assert "elapsed_ms" in doc


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("algebra", ALL_ALGEBRAS)
def test_verify_all_passes_each_algebra(algebra):
    rep = cmd_verify(algebra, "all")
    assert rep.status == "pass"
    labels = [l for l, _, _ in rep.items]
    assert any(l.startswith("relation:") for l in labels)
    assert any(l.startswith("coassoc:") for l in labels)
    assert any(l.startswith("counit:") for l in labels)
    assert any(l.startswith("antipode:") for l in labels)


def test_verify_hopf_suite_is_three_by_generators():
    rep = cmd_verify("yangian-sl2", "hopf")
    assert rep.status == "pass"
    assert len(rep.items) == 3 * 4  # three axioms x four generators
    assert not any(l.startswith("relation:") for l, _, _ in rep.items)


def test_verify_relations_suite_lists_every_relation():
    rep = cmd_verify("yangian-sl2", "relations")
    from loopdeform.presentations import build_yangian_sl2
    assert len(rep.items) == len(build_yangian_sl2().relations)
    assert all(v == "pass" for _, v, _ in rep.items)


def test_verify_rep_selector():
    rep = cmd_verify("yangian-sl2", "relations", reps=["spin:1/2", "spin:1"])
    assert rep.status == "pass"
    assert rep.config["reps"] == ["eval-spin(1/2)", "eval-spin(1)"]
    with pytest.raises(UsageError):
        cmd_verify("uq-sl2", "relations", reps=["spin:1/2"])
    with pytest.raises(UsageError):
        cmd_verify("yangian-sl2", "relations", reps=["dim:2"])
    with pytest.raises(UsageError):
        cmd_verify("yangian-sl2", "relations", reps=["spin:w"])


def test_verify_bad_suite_is_usage_error():
    with pytest.raises(UsageError):
        cmd_verify("yangian-sl2", "nosuch")


# ---------------------------------------------------------------------------
# limit
# ---------------------------------------------------------------------------


def test_limit_degeneration_matches_undeformed_target():
    rep = cmd_limit("drinfeldian-sl2", ["q->1", "kdelta=1"])
    assert rep.status == "pass"
    directions = {l.split(":", 1)[0] for l, _, _ in rep.items}
    assert directions == {"compare-forward", "compare-backward"}


def test_limit_assignment_spellings_agree():
    a = cmd_limit("drinfeldian-sl2", ["q->1", "kdelta->1"])
    b = cmd_limit("drinfeldian-sl2", ["q=1", "kdelta=1"])
    assert [i[:2] for i in a.items] == [i[:2] for i in b.items]


def test_limit_eta_zero_reports_eta_free_relations():
    rep = cmd_limit("drinfeldian-sl2", ["eta=0"])
    assert rep.status == "pass"
    eta_rows = [l for l, _, _ in rep.items if l.startswith("eta-free:")]
    assert eta_rows  # one per surviving relation
    # the text report appends the full specialized presentation
    text = rep.to_text()
    assert "specialized presentation:" in text
    assert "presentation drinfeldian-sl2[eta->0]" in text


def test_limit_pole_is_reported_not_crashed():
    rep = cmd_limit("uq-sl2", ["q=1"])
    assert rep.status == "inconclusive"
    assert rep.exit_code == EXIT_INCONCLUSIVE
    label, verdict, payload = rep.items[0]
    assert verdict == "unknown"
    assert "PoleError" in payload
    # the offending relation is named in the diagnostic
    assert "cross:e+a1,e-a1" in payload


def test_limit_rejects_bad_assignments():
    with pytest.raises(UsageError):
        cmd_limit("drinfeldian-sl2", ["q"])
    with pytest.raises(UsageError):
        cmd_limit("drinfeldian-sl2", ["q=one"])
    with pytest.raises(UsageError):
        cmd_limit("drinfeldian-sl2", ["zeta=0"])  # unsupported key
    with pytest.raises(UsageError):
        cmd_limit("drinfeldian-sl2", ["q=2"])  # only q -> 1 is defined


# ---------------------------------------------------------------------------
# twist
# ---------------------------------------------------------------------------


def test_twist_all_passes_and_labels():
    rep = cmd_twist(order=2, check="all")
    assert rep.status == "pass"
    prefixes = {l.split(":", 1)[0] for l, _, _ in rep.items}
    assert prefixes == {"cocycle", "coassoc", "homomorphism", "antipode",
                        "counit"}


def test_twist_single_check_is_scoped():
    rep = cmd_twist(order=2, check="cocycle")
    assert rep.status == "pass"
    assert all(l.startswith("cocycle:") for l, _, _ in rep.items)


def test_twist_order_bounds():
    with pytest.raises(UsageError):
        cmd_twist(order=5)
    with pytest.raises(UsageError):
        cmd_twist(order=-1)
    with pytest.raises(UsageError):
        cmd_twist(order=2, check="nosuch")


# ---------------------------------------------------------------------------
# cybe
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("kind", ["rational", "jordanian", "twisted-yangian",
                                  "twisted_yangian", "dj_constant"])
def test_cybe_solutions_pass(kind):
    rep = cmd_cybe(kind)
    assert rep.status == "pass"
    assert rep.exit_code == EXIT_PASS


def test_cybe_mixed_sum_verdict_is_reported():
    rep = cmd_cybe("sum:rational+dj_constant")
    assert rep.status == "fail"
    assert rep.exit_code == EXIT_FAIL
    label, verdict, payload = rep.items[0]
    assert verdict == "fail"
    # the residual entries are listed, not hidden
    assert "(u - w)" in payload and "eta" in payload


def test_cybe_unknown_kind():
    with pytest.raises(UsageError):
        cmd_cybe("nosuch")


# ---------------------------------------------------------------------------
# argument/config plumbing through main()
# ---------------------------------------------------------------------------


def test_main_exit_codes(capsys):
    assert main(["verify", "yangian-sl2", "relations"]) == EXIT_PASS
    assert main(["limit", "uq-sl2", "q=1"]) == EXIT_INCONCLUSIVE
    assert main(["cybe", "--r", "sum:rational+dj_constant"]) == EXIT_FAIL
    capsys.readouterr()


def test_main_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nosuch-algebra"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["nosuch-command"])
    assert exc.value.code == EXIT_USAGE
    assert main(["twist", "--order", "9"]) == EXIT_USAGE
    assert main(["cybe", "--r", "nosuch"]) == EXIT_USAGE
    capsys.readouterr()


def test_main_writes_json_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", "yangian-sl2", "relations", "--json", str(out)])
    capsys.readouterr()
    assert code == EXIT_PASS
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert doc["algebra"] == "yangian-sl2"
    assert all(i["verdict"] == "pass" for i in doc["items"])


def test_json_reports_are_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        main(["verify", "uq-sl2", "all", "--json", str(p)])
    capsys.readouterr()
    docs = [json.loads(p.read_text()) for p in paths]
    for d in docs:
        d.pop("elapsed_ms")
    assert docs[0] == docs[1]
    # and the text reports agree apart from the timing figure
    texts = []
    for p in paths:
        main(["verify", "uq-sl2", "all"])
        texts.append(capsys.readouterr().out)
    import re
    normalize = lambda t: re.sub(r"\d+ ms", "? ms", t)
    assert normalize(texts[0]) == normalize(texts[1])


def test_config_file_roundtrip(tmp_path, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("# comment\nsuite=relations\nrep=spin:1/2\nrep=spin:1\n")
    out = tmp_path / "r.json"
    code = main(["verify", "yangian-sl2", "--config", str(cfg),
                 "--json", str(out)])
    capsys.readouterr()
    assert code == EXIT_PASS
    doc = json.loads(out.read_text())
    assert doc["suite"] == "relations"
    assert doc["config"]["reps"] == ["eval-spin(1/2)", "eval-spin(1)"]


def test_config_flag_overrides_file(tmp_path, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("suite=relations\n")
    out = tmp_path / "r.json"
    main(["verify", "yangian-sl2", "hopf", "--config", str(cfg),
          "--json", str(out)])
    capsys.readouterr()
    assert json.loads(out.read_text())["suite"] == "hopf"


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense line\n")
    with pytest.raises(UsageError):
        load_config_file(str(bad))
    bad.write_text("color=blue\n")
    with pytest.raises(UsageError):
        load_config_file(str(bad))
    assert main(["verify", "yangian-sl2", "--config",
                 str(tmp_path / "missing.cfg")]) == EXIT_USAGE
    capsys.readouterr()


def test_degree_bound_flag_lands_in_config(tmp_path, capsys):
    out = tmp_path / "r.json"
    main(["verify", "yangian-sl2", "relations", "--degree-bound", "10",
          "--json", str(out)])
    capsys.readouterr()
    assert json.loads(out.read_text())["config"]["degree_bound"] == 10


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "loopdeform", "cybe", "--r", "jordanian"],
        capture_output=True, text=True)
    assert proc.returncode == EXIT_PASS
    assert "pass" in proc.stdout
