"""Tests for the command-line front end."""

import json

import httpx
import pytest

from tpsi import cli


def run_json(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestRun:
    def test_bare_flags_mean_run(self, capsys):
        code, report = run_json(
            capsys, ["--suite", "planar-dual", "--n", "2"]
        )
        assert code == cli.EXIT_PASS
        assert report["schema"] == 1
        assert report["suite"] == "planar-dual"
        assert report["passed"] is True

    def test_report_written_to_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code = cli.main([
            "run", "--suite", "geometry", "--out", str(path),
        ])
        assert code == cli.EXIT_PASS
        assert capsys.readouterr().out == ""
        report = json.loads(path.read_text())
        assert report["suites"][0]["suite"] == "geometry"

    def test_reports_identical_up_to_wall_time(self, capsys):
        argv = ["run", "--suite", "psi", "--n", "2", "--seed", "5"]
        _, first = run_json(capsys, argv)
        _, second = run_json(capsys, argv)
        first.pop("wall_time_s")
        second.pop("wall_time_s")
        assert first == second

    def test_unreachable_tolerance_fails(self, capsys):
        code, report = run_json(capsys, [
            "run", "--suite", "vertex-te", "--tolerance", "1e-30",
        ])
        assert code == cli.EXIT_FAIL
        assert report["passed"] is False

    def test_degenerate_angles_exit(self, capsys):
        code = cli.main([
            "run", "--suite", "vertex-te",
            "--angles", "5", "1", "1", "1", "1", "1",
        ])
        assert code == cli.EXIT_DEGENERATE
        err = capsys.readouterr().err
        assert err.startswith("error:")
        assert "5.0" in err

    def test_service_side_validation_exit(self, capsys):
        code = cli.main(["run", "--n", "9"])
        assert code == cli.EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_unknown_suite_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["run", "--suite", "everything"])
        assert exc.value.code == cli.EXIT_USAGE
        assert "--suite" in capsys.readouterr().err


class TestDump:
    def test_stdout_and_file_agree(self, capsysbinary, tmp_path):
        assert cli.main(["dump", "--tensor", "R", "--n", "2"]) == cli.EXIT_PASS
        streamed = capsysbinary.readouterr().out
        path = tmp_path / "r.tpsi"
        assert cli.main([
            "dump", "--tensor", "R0", "--n", "2", "--out", str(path),
        ]) == cli.EXIT_PASS
        assert path.read_bytes() == streamed
        assert streamed[:4] == b"TPSI"

    def test_bad_selector_exit(self, capsys):
        assert cli.main(["dump", "--tensor", "Q"]) == cli.EXIT_USAGE
        assert "tensor must be one of" in capsys.readouterr().err


class TestWiring:
    def test_help_names_subcommands(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for name in cli._SUBCOMMANDS:
            assert name in out

    def test_server_flag_builds_remote_client(self):
        client = cli._client("http://example.invalid:1")
        try:
            assert isinstance(client, httpx.Client)
            assert str(client.base_url) == "http://example.invalid:1"
        finally:
            client.close()

    def test_serve_hands_off_to_uvicorn(self, monkeypatch):
        calls = {}

        def fake_run(app, host, port):
            calls["args"] = (app, host, port)

        import uvicorn

        monkeypatch.setattr(uvicorn, "run", fake_run)
        assert cli.main(["serve", "--port", "9999"]) == cli.EXIT_PASS
        from tpsi import service

        assert calls["args"] == (service.app, "127.0.0.1", 9999)
