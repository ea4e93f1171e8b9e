import json

import httpx
import pytest
from fastapi.testclient import TestClient

from localepatch.cli import main
from localepatch.service import app

CHAIN2 = "# two-point chain\nelem a\nelem b\nle a b\n"
M3 = (
    "elem bot\nelem x\nelem y\nelem z\nelem t\n"
    "le bot x\nle bot y\nle bot z\nle x t\nle y t\nle z t\n"
    "top t\nbottom bot\n"
)


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "chain2.poset").write_text(CHAIN2)
    (tmp_path / "m3.frame").write_text(M3)
    (tmp_path / "chain.frame").write_text("frame from-poset chain2.poset\n")
    (tmp_path / "pt.poset").write_text("elem a\n")
    (tmp_path / "point.map").write_text(
        "map point : chain2.poset -> pt.poset\n"
        "send {} {}\nsend {a} {a}\nsend {a,b} {a}\n"
    )
    return tmp_path


class TestCheck:
    def test_pass(self, workdir, capsys):
        assert main(["check", str(workdir / "chain.frame")]) == 0
        assert "PASS frame laws" in capsys.readouterr().out

    def test_m3_fails_nonzero(self, workdir, capsys):
        assert main(["check", str(workdir / "m3.frame")]) == 1
        assert "meet-distributes-over-joins" in capsys.readouterr().out

    def test_json_output(self, workdir, capsys):
        assert main(["--json", "check", str(workdir / "chain2.poset")]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["ok"] is True

    def test_missing_file(self, workdir, capsys):
        assert main(["check", str(workdir / "absent.frame")]) == 2
        assert "error:" in capsys.readouterr().err


def test_classify(workdir, capsys):
    assert main(["classify", str(workdir / "chain2.poset")]) == 0
    out = capsys.readouterr().out
    assert "stone: False" in out
    assert "spectral basis: {}, {a}, {a,b}" in out


def test_props(workdir, capsys):
    assert main(["props", str(workdir / "chain2.poset")]) == 0
    assert "PASS" in capsys.readouterr().out


def test_map_check(workdir, capsys):
    assert main(["map-check", str(workdir / "point.map")]) == 0
    out = capsys.readouterr().out
    assert "frame_hom: True" in out and "perfect: True" in out


def test_patch_with_dot(workdir, capsys):
    out_dot = workdir / "patch.dot"
    assert main(["patch", str(workdir / "chain2.poset"), "--dot", str(out_dot)]) == 0
    assert "patch size: 4" in capsys.readouterr().out
    assert out_dot.read_text().startswith("digraph")


def test_stone_writes_both_dots(workdir, capsys):
    out_dot = workdir / "stone.dot"
    assert main(["stone", str(workdir / "chain2.poset"), "--dot", str(out_dot)]) == 0
    assert "PASS stone" in capsys.readouterr().out
    assert out_dot.exists()
    assert (workdir / "stone.envelope.dot").exists()


def test_universal(workdir, capsys):
    assert main(["universal", str(workdir / "point.map")]) == 0
    out = capsys.readouterr().out
    assert "PASS universal-uniqueness" in out


def test_suite_exit_status_and_line_shape(workdir, capsys):
    assert main(["suite", "--max-points", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1].endswith("0 failed")
    body = [line for line in out[:-1]]
    assert body and all(line.split()[0] in ("PASS", "FAIL") for line in body)


def test_dot_to_stdout(workdir, capsys):
    assert main(["dot", str(workdir / "chain2.poset")]) == 0
    assert capsys.readouterr().out.startswith("digraph frame {")


class TestRemoteMode:
    def test_remote_dispatch_round_trips(self, workdir, capsys, monkeypatch):
        """--url routes through HTTP; the test transport is the ASGI app."""
        test_client = TestClient(app)

        def fake_post(url, json=None, timeout=None):
            path = url.replace("http://frames.test", "")
            return test_client.post(path, json=json)

        monkeypatch.setattr(httpx, "post", fake_post)
        code = main(["--url", "http://frames.test", "check", str(workdir / "chain2.poset")])
        assert code == 0
        assert "PASS frame laws" in capsys.readouterr().out

    def test_remote_error_surfaces_detail(self, workdir, capsys, monkeypatch):
        test_client = TestClient(app)
        monkeypatch.setattr(
            httpx,
            "post",
            lambda url, json=None, timeout=None: test_client.post(
                url.replace("http://frames.test", ""), json=json
            ),
        )
        bad = workdir / "bad.frame"
        bad.write_text("gibberish\n")
        assert main(["--url", "http://frames.test", "check", str(bad)]) == 2
        assert "error:" in capsys.readouterr().err
