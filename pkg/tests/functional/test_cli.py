import json

import pytest
from click.testing import CliRunner

from polymem.cli.main import cli, main
from polymem.exceptions.errors import GenericityFailureError
from polymem.services.membership_service import MembershipService
from tests.conftest import FIXTURES


def fixture(name: str) -> str:
    return str(FIXTURES / name)


LINE_ARGS = [
    "membership",
    fixture("example1_target.json"),
    fixture("example1_body.json"),
    "--support",
    fixture("example1_support.json"),
    "--generators",
    fixture("example1_generators.json"),
]


@pytest.mark.functional
class TestMembershipCommand:
    def test_line_example(self, runner: CliRunner):
        result = runner.invoke(cli, LINE_ARGS)

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert (report["dimW"], report["dimKer"], report["dimV"]) == (1, 0, 1)
        assert report["basis"][0]["terms"] == [{"exp": [0], "coeff": 1}, {"exp": [2], "coeff": 32002}]
        assert report["omega"] == {"rows": 1, "cols": 2}
        assert report["config"]["command"] == "membership"

    @pytest.mark.parametrize(
        "args",
        [
            LINE_ARGS,
            ["chain", fixture("square.json"), "--t", "2"],
            ["chain", fixture("square.json"), "--negative"],
            ["koszul", fixture("simplex2_x2.json"), fixture("simplex2.json")],
        ],
        ids=["membership", "chain", "negative-chain", "koszul"],
    )
    def test_reports_are_byte_identical(self, runner: CliRunner, args):
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)

        assert first.exit_code == 0
        assert first.stdout_bytes == second.stdout_bytes

    def test_out_file(self, runner: CliRunner, tmp_path):
        target = tmp_path / "report.json"
        printed = runner.invoke(cli, LINE_ARGS).stdout
        result = runner.invoke(cli, LINE_ARGS + ["--out", str(target)])

        assert result.exit_code == 0
        assert result.stdout == ""
        assert target.read_text() == printed

    def test_prime_option(self, runner: CliRunner):
        result = runner.invoke(cli, LINE_ARGS + ["--prime", "101"])

        assert result.exit_code == 0
        assert json.loads(result.stdout)["primes"] == [101]

    def test_composite_prime(self, runner: CliRunner):
        result = runner.invoke(cli, LINE_ARGS + ["--prime", "100"])

        assert result.exit_code == 1
        assert "CONFIGURATION_ERROR" in result.stderr

    def test_decompose(self, runner: CliRunner):
        result = runner.invoke(
            cli,
            [
                "decompose",
                fixture("example1_member.json"),
                fixture("example1_target.json"),
                fixture("example1_body.json"),
                "--support",
                fixture("example1_support.json"),
                "--generators",
                fixture("example1_generators.json"),
            ],
        )

        assert result.exit_code == 0
        assert json.loads(result.stdout)["member"] is True


@pytest.mark.functional
class TestErrorHandling:
    def test_malformed_json(self, runner: CliRunner):
        result = runner.invoke(cli, ["membership", fixture("malformed.json"), fixture("example1_body.json")])

        assert result.exit_code == 1
        assert result.stdout == ""
        assert "VALIDATION_ERROR" in result.stderr

    def test_missing_file(self, runner: CliRunner, tmp_path):
        result = runner.invoke(cli, ["membership", str(tmp_path / "absent.json"), fixture("example1_body.json")])

        assert result.exit_code == 1
        assert "INPUT_FILE_ERROR" in result.stderr

    def test_segment_body(self, runner: CliRunner):
        result = runner.invoke(cli, ["membership", fixture("example1_target.json"), fixture("example1_body.json")])

        assert result.exit_code == 1
        assert "SEGMENT_BODY" in result.stderr

    def test_genericity_failure_exit_code(self, runner: CliRunner, mocker):
        mocker.patch.object(MembershipService, "run_protocol", side_effect=GenericityFailureError("runs disagree"))
        result = runner.invoke(cli, LINE_ARGS)

        assert result.exit_code == 2
        assert "GENERICITY_FAILURE" in result.stderr

    def test_main_maps_usage_errors(self):
        assert main(["no-such-command"]) == 1

    def test_main_success(self, capsys):
        assert main(LINE_ARGS) == 0
        assert json.loads(capsys.readouterr().out)["dimV"] == 1


@pytest.mark.functional
class TestGeometryCommands:
    def test_foundation_of_triple_cube(self, runner: CliRunner):
        result = runner.invoke(cli, ["foundation", fixture("cube_x3.json"), fixture("cube.json"), "--k", "1"])

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["factor"] == "2"
        assert report["withinHypotheses"] is True

    def test_koszul_pair(self, runner: CliRunner):
        result = runner.invoke(cli, ["koszul", fixture("simplex2_x2.json"), fixture("simplex2.json")])

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["oracle"] == 3
        assert report["confirmedReading"] == "corrected"

    def test_chain(self, runner: CliRunner):
        result = runner.invoke(cli, ["chain", fixture("square.json"), "--t", "2"])

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert all(v["passed"] for v in report["validations"])
        assert len(report["terms"]) == len(report["steps"]) + 1

    def test_stabilize_csv(self, runner: CliRunner):
        result = runner.invoke(
            cli, ["stabilize", fixture("simplex2.json"), fixture("square.json"), "--t", "2", "--format", "csv"]
        )

        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "index,t1,t2,latticeCount,dimW,dimKer,dimV"
        assert len(lines) > 2

    def test_osculate(self, runner: CliRunner):
        result = runner.invoke(cli, ["osculate", fixture("simplex2.json"), fixture("conic.json")])

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["consistent"] is True
        assert report["rank"] == 3

    def test_osculate_rejects_large_prime(self, runner: CliRunner):
        result = runner.invoke(cli, ["osculate", fixture("simplex2.json"), fixture("conic.json"), "--prime", "2147483647"])

        assert result.exit_code == 1
        assert "HYPOTHESIS_ERROR" in result.stderr

    @pytest.mark.parametrize(
        "args, expected",
        [
            (["area", "square.json"], {"value": "4"}),
            (["bernstein", "simplex2.json", "simplex2.json"], {"value": "1"}),
            (["epsilon0", "square.json"], {"epsilon0": "3/2", "tCrit": "2"}),
            (["erode", "simplex2.json", "simplex2_x2.json"], {"empty": True}),
        ],
    )
    def test_polytope_values(self, runner: CliRunner, args, expected):
        op, *files = args
        result = runner.invoke(cli, ["polytope", op, *[fixture(f) for f in files]])

        assert result.exit_code == 0
        assert json.loads(result.stdout) == expected

    def test_polytope_lattice_points(self, runner: CliRunner):
        result = runner.invoke(cli, ["polytope", "lattice-points", fixture("square.json")])

        assert result.exit_code == 0
        assert len(json.loads(result.stdout)["points"]) == 9

    def test_polytope_minkowski(self, runner: CliRunner):
        result = runner.invoke(cli, ["polytope", "minkowski", fixture("simplex2.json"), fixture("simplex2.json")])

        assert json.loads(result.stdout)["vertices"] == [["0", "0"], ["0", "2"], ["2", "0"]]

    def test_polytope_face_needs_vector(self, runner: CliRunner):
        result = runner.invoke(cli, ["polytope", "face", fixture("square.json")])

        assert result.exit_code == 1
        assert "INPUT_ERROR" in result.stderr


@pytest.mark.functional
class TestVerifyCommand:
    def test_line_example_suite(self, runner: CliRunner):
        result = runner.invoke(cli, ["verify", "--suite", "line-example"])

        assert result.exit_code == 0
        envelope = json.loads(result.stdout)
        assert envelope["success"] is True
        assert envelope["message"] == "3/3 criteria passed"

    def test_csv(self, runner: CliRunner):
        result = runner.invoke(cli, ["verify", "--suite", "line-example", "--format", "csv"])

        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "suite,name,passed,detail"

    def test_failing_suite_exits_one(self, runner: CliRunner, mocker):
        from polymem.schemas.reports import CriterionResult

        failing = [CriterionResult(suite="line-example", name="dimensions", passed=False, detail="forced")]
        mocker.patch("polymem.services.verify_service.VerifyService.run", return_value=failing)
        result = runner.invoke(cli, ["verify", "--suite", "line-example"])

        assert result.exit_code == 1
        assert json.loads(result.stdout)["success"] is False

    def test_unknown_suite(self, runner: CliRunner):
        result = runner.invoke(cli, ["verify", "--suite", "nonexistent"])

        assert result.exit_code == 1
        assert "INPUT_ERROR" in result.stderr
