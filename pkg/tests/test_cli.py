import csv
import json
import subprocess
import sys

import pytest

from intervalagg import Interval, Profile, RuleEvaluationError, maximal_rule
from intervalagg.cli import (
    CommandError,
    extern_rule_adapter,
    load_phantom_file,
    load_profile_document,
    main,
    parse_rule_spec,
    profile_to_document,
)

from .conftest import BENCHMARK_PROFILE, extern_command

COMMITTEE_DOC = {"agents": [{"lo": 2, "hi": 4}, {"lo": 3, "hi": 6}, {"lo": 1, "hi": 5}]}


@pytest.fixture
def committee_file(tmp_path):
    path = tmp_path / "committee.json"
    path.write_text(json.dumps(COMMITTEE_DOC))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDocuments:
    def test_profile_round_trip(self, tmp_path):
        document = profile_to_document(BENCHMARK_PROFILE, labels=["a", "b", "c"])
        path = tmp_path / "p.json"
        path.write_text(json.dumps(document))
        assert load_profile_document(str(path)) == BENCHMARK_PROFILE

    def test_integral_floats_serialize_as_integers(self):
        document = profile_to_document(Profile((Interval(1.0, 2.5),)))
        assert document == {"agents": [{"lo": 1, "hi": 2.5}]}

    def test_missing_file(self):
        with pytest.raises(CommandError, match="cannot read"):
            load_profile_document("/nonexistent/profile.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(CommandError, match="not valid JSON"):
            load_profile_document(str(path))

    def test_top_level_must_be_object(self, tmp_path):
        path = tmp_path / "arr.json"
        path.write_text("[1, 2]")
        with pytest.raises(CommandError, match="must be an object"):
            load_profile_document(str(path))

    @pytest.mark.parametrize(
        "document, fragment",
        [
            ({"agents": []}, "nonempty"),
            ({"agents": [{"lo": 1}]}, "'lo' and 'hi'"),
            ({"agents": [{"lo": 1, "hi": True}]}, "must be a number"),
            ({"agents": [{"lo": 3, "hi": 2}]}, "agent 0"),
            ({"agents": [{"lo": 1, "hi": 2}], "labels": ["x", "y"]}, "labels"),
            (
                {
                    "agents": [{"lo": 1, "hi": 2}, {"lo": 3, "hi": 4}],
                    "labels": ["x", "x"],
                },
                "unique",
            ),
        ],
    )
    def test_malformed_profiles(self, tmp_path, document, fragment):
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(document))
        with pytest.raises(CommandError, match=fragment):
            load_profile_document(str(path))

    def test_phantom_file_with_infinite_bounds(self, tmp_path):
        path = tmp_path / "ph.json"
        path.write_text(
            json.dumps(
                {
                    "phantoms": [
                        {"lo": "inf", "hi": "Infinity"},
                        {"lo": "-inf", "hi": 5},
                        {"lo": 0, "hi": 1},
                    ]
                }
            )
        )
        vector = load_phantom_file(str(path))
        assert len(vector) == 3
        entries = list(vector)
        assert entries[0].lo == float("inf")
        assert entries[1].lo == float("-inf") and entries[1].hi == 5.0

    def test_phantom_bad_bound_string(self, tmp_path):
        path = tmp_path / "ph.json"
        path.write_text(json.dumps({"phantoms": [{"lo": "wide", "hi": 1}]}))
        with pytest.raises(CommandError, match="unrecognised bound string"):
            load_phantom_file(str(path))


class TestRuleSpecs:
    def test_named_rules(self):
        assert parse_rule_spec("median").name == "median"
        assert parse_rule_spec("maximal").name == "maximal"
        assert parse_rule_spec("averaging").name == "averaging"
        assert parse_rule_spec(" endpoint:2,3 ").name == "endpoint:2,3"

    def test_malformed_specs(self):
        with pytest.raises(CommandError, match="unrecognised rule spec"):
            parse_rule_spec("mean")
        with pytest.raises(CommandError, match="needs 'endpoint:p,q'"):
            parse_rule_spec("endpoint:2")
        with pytest.raises(CommandError, match="must be integers"):
            parse_rule_spec("endpoint:a,b")
        with pytest.raises(CommandError, match="must be integers"):
            parse_rule_spec("endpoint:1.5,2")

    def test_nonpositive_quotas_are_parameter_errors(self):
        with pytest.raises(CommandError) as info:
            parse_rule_spec("endpoint:0,1")
        assert info.value.exit_code == 3

    def test_empty_extern_command(self):
        with pytest.raises(CommandError, match="command is empty"):
            parse_rule_spec("extern:   ")


class TestAggregateCommand:
    def test_median_golden(self, capsys, committee_file):
        code, out, err = run_cli(
            capsys, "aggregate", "--rule", "median", "--profile", committee_file
        )
        assert code == 0
        assert out.strip() == '{"lo": 2, "hi": 5}'

    def test_endpoint_rule_golden(self, capsys, committee_file):
        code, out, _ = run_cli(
            capsys, "aggregate", "--rule", "endpoint:1,3", "--profile", committee_file
        )
        assert code == 0
        assert out.strip() == '{"lo": 1, "hi": 4}'

    def test_averaging_golden(self, capsys, committee_file):
        code, out, _ = run_cli(
            capsys, "aggregate", "--rule", "averaging", "--profile", committee_file
        )
        assert code == 0
        assert out.strip() == '{"lo": 2, "hi": 5}'

    def test_phantom_rule_from_file(self, capsys, committee_file, tmp_path):
        phantom_path = tmp_path / "median_phantoms.json"
        phantom_path.write_text(
            json.dumps(
                {
                    "phantoms": [
                        {"lo": "inf", "hi": "inf"},
                        {"lo": "inf", "hi": "inf"},
                        {"lo": "-inf", "hi": "-inf"},
                        {"lo": "-inf", "hi": "-inf"},
                    ]
                }
            )
        )
        code, out, _ = run_cli(
            capsys,
            "aggregate",
            "--rule",
            f"phantoms:{phantom_path}",
            "--profile",
            committee_file,
        )
        assert code == 0
        assert out.strip() == '{"lo": 2, "hi": 5}'

    def test_infeasible_quotas_exit_3(self, capsys, committee_file):
        code, _, err = run_cli(
            capsys, "aggregate", "--rule", "endpoint:3,3", "--profile", committee_file
        )
        assert code == 3
        assert "quotas (3, 3)" in err and "3 agents" in err

    def test_wrong_phantom_count_exit_3(self, capsys, committee_file, tmp_path):
        phantom_path = tmp_path / "short.json"
        phantom_path.write_text(
            json.dumps({"phantoms": [{"lo": 0, "hi": 1}]})
        )
        code, _, err = run_cli(
            capsys,
            "aggregate",
            "--rule",
            f"phantoms:{phantom_path}",
            "--profile",
            committee_file,
        )
        assert code == 3
        assert "n_agents + 1" in err

    def test_missing_profile_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "aggregate", "--rule", "median", "--profile", "/no/such.json"
        )
        assert code == 2
        assert "cannot read" in err

    def test_unknown_rule_exit_2(self, capsys, committee_file):
        code, _, err = run_cli(
            capsys, "aggregate", "--rule", "mystery", "--profile", committee_file
        )
        assert code == 2
        assert "unrecognised rule spec" in err


class TestExternAdapter:
    def test_matches_maximal_rule_on_random_profiles(self):
        import random

        adapter = extern_rule_adapter(extern_command("union_bounds.py"))
        rng = random.Random(3)
        for _ in range(40):
            entries = []
            for _ in range(rng.randint(1, 4)):
                lo = rng.uniform(-20, 20)
                entries.append(Interval(lo, lo + rng.uniform(0.5, 10)))
            profile = Profile(entries)
            assert adapter(profile) == maximal_rule(profile)

    def test_cli_aggregate_through_adapter(self, capsys, committee_file):
        code, out, _ = run_cli(
            capsys,
            "aggregate",
            "--rule",
            f"extern:{extern_command('union_bounds.py')}",
            "--profile",
            committee_file,
        )
        assert code == 0
        assert out.strip() == '{"lo": 1, "hi": 6}'

    def test_garbage_output_is_evaluation_error(self):
        adapter = extern_rule_adapter(extern_command("garbage.py"))
        with pytest.raises(RuleEvaluationError, match="invalid JSON"):
            adapter(BENCHMARK_PROFILE)

    def test_garbage_rule_at_cli_exits_2(self, capsys, committee_file):
        code, _, err = run_cli(
            capsys,
            "aggregate",
            "--rule",
            f"extern:{extern_command('garbage.py')}",
            "--profile",
            committee_file,
        )
        assert code == 2
        assert "rule evaluation failed" in err

    def test_timeout_is_evaluation_error(self):
        adapter = extern_rule_adapter(extern_command("hang.py"), timeout=0.5)
        with pytest.raises(RuleEvaluationError, match="timed out"):
            adapter(BENCHMARK_PROFILE)

    def test_missing_program_is_evaluation_error(self):
        adapter = extern_rule_adapter("/no/such/binary")
        with pytest.raises(RuleEvaluationError, match="cannot launch"):
            adapter(BENCHMARK_PROFILE)


class TestAuditCommand:
    def test_compliant_rule_exits_0_and_writes_report(
        self, capsys, tmp_path
    ):
        report_path = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys,
            "audit",
            "--rule",
            "endpoint:1,2",
            "--n",
            "4",
            "--samples",
            "500",
            "--seed",
            "7",
            "--out",
            str(report_path),
        )
        assert code == 0
        assert f"report written to {report_path}" in out
        data = json.loads(report_path.read_text())
        assert data["rule"] == "endpoint:1,2"
        assert all(r["failures"] == 0 for r in data["results"].values())

    def test_averaging_exits_1(self, capsys, tmp_path):
        report_path = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys,
            "audit",
            "--rule",
            "averaging",
            "--n",
            "3",
            "--samples",
            "300",
            "--seed",
            "7",
            "--out",
            str(report_path),
        )
        assert code == 1
        data = json.loads(report_path.read_text())
        assert data["results"]["WeakNeutrality"]["failures"] > 0

    def test_zero_samples_exit_0(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys,
            "audit",
            "--rule",
            "averaging",
            "--n",
            "2",
            "--samples",
            "0",
            "--out",
            str(tmp_path / "r.json"),
        )
        assert code == 0

    def test_axiom_subset(self, capsys, tmp_path):
        report_path = tmp_path / "r.json"
        code, _, _ = run_cli(
            capsys,
            "audit",
            "--rule",
            "averaging",
            "--n",
            "2",
            "--samples",
            "200",
            "--axioms",
            "Unanimity,Anonymity",
            "--out",
            str(report_path),
        )
        assert code == 0
        data = json.loads(report_path.read_text())
        assert sorted(data["results"]) == ["Anonymity", "Unanimity"]

    def test_unknown_axiom_exit_2(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "audit",
            "--rule",
            "median",
            "--n",
            "2",
            "--axioms",
            "NoSuchAxiom",
            "--out",
            str(tmp_path / "r.json"),
        )
        assert code == 2
        assert "NoSuchAxiom" in err

    def test_broken_extern_rule_aborts_with_exit_2(self, capsys, tmp_path):
        code, out, err = run_cli(
            capsys,
            "audit",
            "--rule",
            f"extern:{extern_command('garbage.py')}",
            "--n",
            "2",
            "--samples",
            "50",
            "--out",
            str(tmp_path / "r.json"),
        )
        assert code == 2
        assert "audit aborted" in err
        assert "ABORTED" in out


class TestIdentifyCommand:
    def test_median_recovered(self, capsys):
        code, out, _ = run_cli(
            capsys, "identify", "--rule", "median", "--n", "3", "--samples", "50"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "staircase profile: [[1, 2], [3, 4], [5, 6]]"
        assert lines[1] == "(2,2)"

    def test_maximal_recovered(self, capsys):
        code, out, _ = run_cli(
            capsys, "identify", "--rule", "maximal", "--n", "4", "--samples", "50"
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "(1,1)"

    def test_averaging_is_not_an_endpoint_rule(self, capsys):
        code, out, _ = run_cli(
            capsys, "identify", "--rule", "averaging", "--n", "3", "--samples", "50"
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "not an endpoint rule"

    def test_extern_width_rule_refuted_by_confirmation(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "identify",
            "--rule",
            f"extern:{extern_command('widest_wins.py')}",
            "--n",
            "3",
            "--samples",
            "20",
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "not an endpoint rule"

    def test_extern_window_rule_refuted_at_read_off(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "identify",
            "--rule",
            f"extern:{extern_command('midpoint_window.py')}",
            "--n",
            "3",
            "--samples",
            "20",
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "not an endpoint rule"

    def test_zero_samples_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "identify", "--rule", "median", "--n", "3", "--samples", "0"
        )
        assert code == 2
        assert "--samples" in err


class TestManipulateCommand:
    def test_averaging_manipulation_found_exits_1(self, capsys, committee_file):
        code, out, _ = run_cli(
            capsys,
            "manipulate",
            "--rule",
            "averaging",
            "--profile",
            committee_file,
            "--agent",
            "1",
        )
        assert code == 1
        assert "found manipulation for agent 1" in out
        assert "misreport:" in out and "cost drop:" in out

    def test_median_safe_exits_0(self, capsys, committee_file):
        code, out, _ = run_cli(
            capsys,
            "manipulate",
            "--rule",
            "median",
            "--profile",
            committee_file,
            "--agent",
            "2",
        )
        assert code == 0
        assert "no manipulation found" in out
        assert out.startswith("truthful outcome: [2, 5]")

    def test_penalty_preference_spec(self, capsys, committee_file):
        code, out, _ = run_cli(
            capsys,
            "manipulate",
            "--rule",
            "median",
            "--profile",
            committee_file,
            "--agent",
            "1",
            "--pref",
            "penalty:0,10",
        )
        assert code == 0

    def test_agent_out_of_range_exits_2(self, capsys, committee_file):
        code, _, err = run_cli(
            capsys,
            "manipulate",
            "--rule",
            "median",
            "--profile",
            committee_file,
            "--agent",
            "9",
        )
        assert code == 2
        assert "out of range 1..3" in err

    def test_bad_preference_spec_exits_2(self, capsys, committee_file):
        code, _, err = run_cli(
            capsys,
            "manipulate",
            "--rule",
            "median",
            "--profile",
            committee_file,
            "--agent",
            "1",
            "--pref",
            "quadratic",
        )
        assert code == 2
        assert "unrecognised preference spec" in err

    def test_bad_weights_exit_2(self, capsys, committee_file):
        code, _, err = run_cli(
            capsys,
            "manipulate",
            "--rule",
            "median",
            "--profile",
            committee_file,
            "--agent",
            "1",
            "--pref",
            "weighted:-1,1",
        )
        assert code == 2


class TestSweepCommand:
    def test_benchmark_profile_table_and_csv(self, capsys, committee_file, tmp_path):
        csv_path = tmp_path / "sweep.csv"
        code, out, _ = run_cli(
            capsys, "sweep", "--profile", committee_file, "--out", str(csv_path)
        )
        assert code == 0
        assert "  1   1  (1, 6)" in out
        assert "  1   3  (1, 4)" in out
        assert "  2   2  (2, 5)" in out
        with open(csv_path, newline="") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 6
        table = {
            (int(r["lower_quota"]), int(r["upper_quota"])): (
                float(r["lo"]),
                float(r["hi"]),
            )
            for r in rows
        }
        assert table[(1, 1)] == (1.0, 6.0)
        assert table[(2, 2)] == (2.0, 5.0)
        assert table[(3, 1)] == (3.0, 6.0)

    def test_quota_monotonicity_over_csv(self, committee_file, tmp_path, capsys):
        csv_path = tmp_path / "sweep.csv"
        run_cli(capsys, "sweep", "--profile", committee_file, "--out", str(csv_path))
        with open(csv_path, newline="") as handle:
            rows = list(csv.DictReader(handle))
        table = {
            (int(r["lower_quota"]), int(r["upper_quota"])): (
                float(r["lo"]),
                float(r["hi"]),
            )
            for r in rows
        }
        for (p, q), (lo, hi) in table.items():
            if (p + 1, q) in table:
                assert table[(p + 1, q)][0] >= lo
            if (p, q + 1) in table:
                assert table[(p, q + 1)][1] <= hi

    def test_single_agent_profile(self, capsys, tmp_path):
        path = tmp_path / "one.json"
        path.write_text(json.dumps({"agents": [{"lo": 0, "hi": 9}]}))
        csv_path = tmp_path / "one.csv"
        code, out, _ = run_cli(
            capsys, "sweep", "--profile", path.as_posix(), "--out", str(csv_path)
        )
        assert code == 0
        with open(csv_path, newline="") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 1
        assert rows[0]["lo"] == "0.0" and rows[0]["hi"] == "9.0"


class TestInstalledEntryPoints:
    def test_module_execution(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps(COMMITTEE_DOC))
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "intervalagg",
                "aggregate",
                "--rule",
                "median",
                "--profile",
                str(path),
            ],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == '{"lo": 2, "hi": 5}'

    def test_console_script(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps(COMMITTEE_DOC))
        proc = subprocess.run(
            [
                "intervalagg",
                "aggregate",
                "--rule",
                "endpoint:2,2",
                "--profile",
                str(path),
            ],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == '{"lo": 2, "hi": 5}'
