import pytest
from fastapi.testclient import TestClient

from localepatch.service import app

CHAIN2 = "elem a\nelem b\nle a b\n"
M3 = (
    "elem bot\nelem x\nelem y\nelem z\nelem t\n"
    "le bot x\nle bot y\nle bot z\nle x t\nle y t\nle z t\n"
    "top t\nbottom bot\n"
)
POINT_MAP = {
    "map": "map point : chain2 -> pt\nsend {} {}\nsend {a} {a}\nsend {a,b} {a}\n",
    "frames": {"chain2": CHAIN2, "pt": "elem a\n"},
}


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


class TestCheck:
    def test_downset_frame_passes(self, client):
        body = client.post("/check", json={"frame": CHAIN2}).json()
        assert body["ok"] and body["law"] is None

    def test_m3_rejected_with_witness(self, client):
        body = client.post("/check", json={"frame": M3}).json()
        assert not body["ok"]
        assert body["law"] == "meet-distributes-over-joins"
        assert body["witness"]

    def test_parse_error_is_422(self, client):
        reply = client.post("/check", json={"frame": "nonsense line\n"})
        assert reply.status_code == 422


class TestClassify:
    def test_chain(self, client):
        body = client.post("/classify", json={"frame": CHAIN2}).json()
        assert body["compact"] and not body["stone"]
        assert body["spectral"]["closed_under_finite_meets"]
        assert body["zero_dimensional"] is None

    def test_antichain_is_stone(self, client):
        body = client.post("/classify", json={"frame": "elem a\nelem b\n"}).json()
        assert body["stone"]

    def test_direct_lattice_rejected(self, client):
        assert client.post("/classify", json={"frame": M3}).status_code == 422


def test_props_all_pass(client):
    body = client.post("/props", json={"frame": CHAIN2}).json()
    assert body["ok"]
    assert {p["name"] for p in body["props"]} >= {
        "compact-opens-in-spectral-basis",
        "well-inside-implies-way-below-in-compact",
    }


class TestMapCheck:
    def test_point_map_flags(self, client):
        body = client.post("/map-check", json=POINT_MAP).json()
        assert body["frame_hom"] and body["spectral"] and body["perfect"]
        assert body["table"]["{a,b}"] == "{a}"

    def test_unknown_frame_reference(self, client):
        bad = {"map": POINT_MAP["map"], "frames": {"chain2": CHAIN2}}
        assert client.post("/map-check", json=bad).status_code == 422


class TestPatch:
    def test_five_point_spectrum_is_served(self, client):
        """The largest poset the generator caps at still answers promptly."""
        poset5 = "".join(f"elem p{i}\n" for i in range(5))
        body = client.post("/patch", json={"frame": poset5}).json()
        assert body["size"] == 32 and body["law_ok"]
        stone = client.post("/stone", json={"frame": poset5}).json()
        assert stone["ok"] and stone["envelope_size"] == 32

    def test_chain2_patch(self, client):
        body = client.post("/patch", json={"frame": CHAIN2}).json()
        assert body["size"] == 4 and body["law_ok"]
        tables = [tuple(sorted(n["table"].items())) for n in body["nuclei"]]
        assert len(tables) == len(set(tables))

    def test_dot_on_request(self, client):
        body = client.post("/patch", json={"frame": CHAIN2, "include_dot": True}).json()
        assert body["dot"].startswith("digraph")
        assert "nuc0" in body["dot"]


class TestStone:
    def test_chain2(self, client):
        body = client.post("/stone", json={"frame": CHAIN2}).json()
        assert body["ok"]
        assert body["patch_size"] == body["envelope_size"] == 4

    def test_dots_included(self, client):
        body = client.post(
            "/stone", json={"frame": CHAIN2, "include_dot": True}
        ).json()
        assert body["dot_patch"].startswith("digraph")
        assert body["dot_envelope"].startswith("digraph")


class TestUniversal:
    def test_point_lift(self, client):
        body = client.post("/universal", json=POINT_MAP).json()
        assert body["ok"]
        assert len(body["lift"]) == 4
        names = {p["name"] for p in body["props"]}
        assert names == {
            "universal-triangle",
            "universal-uniqueness",
            "universal-presentation-independent",
        }

    def test_non_stone_domain_rejected(self, client):
        req = {
            "map": "map f : chain2 -> chain2\nsend {} {}\nsend {a} {a}\nsend {a,b} {a,b}\n",
            "frames": {"chain2": CHAIN2},
        }
        reply = client.post("/universal", json=req)
        assert reply.status_code == 422
        assert "Stone" in reply.json()["detail"]


class TestSuite:
    def test_tiny_suite(self, client):
        body = client.post("/suite", json={"max_points": 1}).json()
        assert body["ok"] and body["failed"] == 0
        assert all(line.startswith("PASS") for line in body["lines"])

    def test_bad_config(self, client):
        assert client.post("/suite", json={"max_points": -1}).status_code == 422


def test_dot_endpoint(client):
    body = client.post("/dot", json={"frame": CHAIN2}).json()
    assert body["dot"].startswith("digraph frame {")
