# tests/test_cli.py - 命令列測試
import pytest
import ujson

from staudt.__main__ import main
from staudt.algebra.ring_core import catalog
from staudt.services.cache_service import GroupCache
from staudt.settings import settings


def _json(capsys) -> dict:
    return ujson.loads(capsys.readouterr().out)


class TestRingCommand:
    """ring 子命令"""

    def test_json_report(self, capsys):
        assert main(["ring", "Z/7", "--format", "json"]) == 0
        report = _json(capsys)
        assert report["ring"] == "Z/7"
        assert report["size"] == 7
        assert report["units"] == [1, 2, 3, 4, 5, 6]
        assert report["five_units"]["holds"] is True
        assert report["two_unit"] is True
        assert report["axioms_passed"] is True
        assert "timing_ms" not in report or report["timing_ms"] is None

    def test_text_report(self, capsys):
        assert main(["ring", "Z/4"]) == 0
        out = capsys.readouterr().out
        assert "ring: Z/4" in out
        assert "condition (ii) 2 is a unit: 不成立" in out

    def test_catalog(self, capsys):
        assert main(["ring", "--catalog", "--format", "json"]) == 0
        assert _json(capsys) == catalog()

    def test_timing(self, capsys):
        assert main(["ring", "GF(2,3)", "--format", "json", "--timing"]) == 0
        assert _json(capsys)["timing_ms"] >= 0

    def test_output_is_deterministic(self, capsys):
        main(["ring", "T2(Z/2)", "--format", "json"])
        first = capsys.readouterr().out
        main(["ring", "T2(Z/2)", "--format", "json"])
        assert capsys.readouterr().out == first

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "reports" / "z5.json"
        assert main(["ring", "Z/5", "--format", "json", "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert ujson.loads(target.read_text(encoding="utf-8"))["ring"] == "Z/5"


class TestExitCodes:
    """結束碼"""

    @pytest.mark.parametrize(
        "argv",
        [
            ["ring", "Z/3xQ"],
            ["ring", "GF(4,2)"],
            ["ring"],
            ["ring", "Z/7", "--format", "dot"],
            ["explode", "Z/7"],
            ["ring", "Z/7", "--threads", "0"],
            [],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == 2

    def test_resource_cap(self, capsys):
        assert main(["ring", "Z/100xZ/100"]) == 3

    def test_large_field_exits_with_cap(self, capsys):
        coeffs = ["0"] * 62
        for i in (0, 1, 2, 5, 61):
            coeffs[i] = "1"
        assert main(["ring", f"GF(2,61,[{','.join(coeffs)}])"]) == 3

    def test_long_literal_is_usage_error(self, capsys):
        assert main(["ring", "Z/" + "7" * 5000]) == 2

    def test_node_budget(self, capsys):
        assert main(["verify", "Z/7", "--node-budget", "5"]) == 3

    def test_settings_restored(self, capsys):
        budget = settings.node_budget
        main(["verify", "Z/7", "--node-budget", "5"])
        assert settings.node_budget == budget

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert capsys.readouterr().out.startswith("staudt ")


class TestLineCommand:
    """line 子命令"""

    def test_json(self, capsys):
        assert main(["line", "Z/4", "--format", "json"]) == 0
        report = _json(capsys)
        assert report["points"] == 6
        assert report["degrees"] == [4] * 6
        assert report["word_component_matches"] is True
        assert report["export"]["points"][0] == [0, 1]

    def test_dot_and_graph_file(self, tmp_path, capsys):
        graph = tmp_path / "z7.dot"
        assert main(["line", "Z/7", "--format", "dot", "--graph", str(graph)]) == 0
        out = capsys.readouterr().out
        assert out.startswith('graph "Z/7" {')
        assert graph.read_text(encoding="utf-8") == out

    def test_text(self, capsys):
        assert main(["line", "GF(3,2)"]) == 0
        assert "points: 10" in capsys.readouterr().out


class TestVerifyCommand:
    """verify 子命令"""

    def test_z3(self, capsys):
        assert main(["verify", "Z/3", "--format", "json"]) == 0
        report = _json(capsys)
        assert report["counts"]["preservers"] == 24
        assert report["hypotheses_hold"] is False

    def test_z7_text(self, capsys):
        assert main(["verify", "Z/7"]) == 0
        out = capsys.readouterr().out
        assert "preservers: 336" in out
        assert "no falsification" in out

    def test_threads_deterministic(self, capsys):
        main(["verify", "Z/5", "--format", "json", "--threads", "1"])
        single = capsys.readouterr().out
        main(["verify", "Z/5", "--format", "json", "--threads", "8"])
        assert capsys.readouterr().out == single

    @pytest.mark.slow
    def test_gf9_threads_deterministic(self, capsys):
        main(["verify", "GF(3,2)", "--format", "json", "--threads", "1"])
        single = capsys.readouterr().out
        main(["verify", "GF(3,2)", "--format", "json", "--threads", "8"])
        assert capsys.readouterr().out == single


class TestGroupCache:
    """E2 檔案快取"""

    def test_round_trip(self, tmp_path, z7):
        cache = GroupCache(tmp_path)
        built = cache.e2(z7)
        path = cache.path_for("E2", z7)
        assert path is not None and path.exists()
        loaded = cache.load("E2", z7)
        assert loaded is not None
        assert loaded.order == built.order
        assert loaded.witness(built.order[-1]) == built.witness(built.order[-1])

    def test_corrupt_file_is_ignored(self, tmp_path, z7):
        cache = GroupCache(tmp_path)
        path = cache.path_for("GE2", z7)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("{not json", encoding="utf-8")
        assert cache.load("GE2", z7) is None
        assert cache.ge2(z7).size == 2016

    def test_disabled_without_directory(self, z7):
        cache = GroupCache()
        if settings.cache_dir is None:
            assert cache.path_for("E2", z7) is None
