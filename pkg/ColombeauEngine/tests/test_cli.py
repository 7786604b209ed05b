"""
Tests for the colombeau command-line interface
"""

import json

from ColombeauEngine.cli import EXIT_DECIDED, EXIT_ERROR, main, render_text


def _run(capsys, *argv):
    code = main(["--k-max", "28", *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCommands:
    """Tests for the computational commands"""

    def test_eval(self, capsys):
        """Test 1/eps at 0 has valuation -1"""
        code, out, _ = _run(capsys, "eval", "1/eps", "--at", "0")
        assert code == EXIT_DECIDED
        report = json.loads(out)
        assert report["command"] == "eval"
        assert report["state"] == "decided"
        assert report["result"]["valuation"]["value"] == -1.0
        assert report["config"]["k_max"] == 28

    def test_derive(self, capsys):
        """Test d^2/dx1^2 of x1^3"""
        code, out, _ = _run(capsys, "derive", "x1^3", "--alpha", "2")
        assert code == EXIT_DECIDED
        assert json.loads(out)["result"]["derivative"] == "6*x1"

    def test_extreme_reports_image(self, capsys):
        """Test the image of x1^2 on two disjoint intervals is flagged as an enclosure"""
        code, out, _ = _run(capsys, "extreme", "x1^2", "--set", "[[-2, -1], [1, 2]]")
        assert code == EXIT_DECIDED
        image = json.loads(out)["result"]["image"]
        assert image["exact"] is False
        assert "connected" in image["reason"]

    def test_extreme_image_on_interval_is_exact(self, capsys):
        """Test x1^2 on [-1, 1] reports its image [0, 1] as exact"""
        code, out, _ = _run(capsys, "extreme", "x1^2", "--set", "[[-1, 1]]")
        assert code == EXIT_DECIDED
        image = json.loads(out)["result"]["image"]
        assert image["exact"] is True
        assert image["reason"] is None

    def test_member_exterior(self, capsys):
        """Test 2 is far from [-1, 1]"""
        code, out, _ = _run(capsys, "member", "--exterior", "--point", "2", "--set", "[[-1, 1]]")
        assert code == EXIT_DECIDED
        assert json.loads(out)["result"]["decision"]["state"] == "true"

    def test_member_needs_inputs(self, capsys):
        """Test a point test without a set is an error"""
        code, _, err = _run(capsys, "member", "--exterior", "--point", "2")
        assert code == EXIT_ERROR
        assert "needs --point and --set" in json.loads(err)["message"]

    def test_parse_error(self, capsys):
        """Test a malformed expression reports its position on stderr"""
        code, out, err = _run(capsys, "eval", "eps + y", "--at", "0")
        assert code == EXIT_ERROR
        assert out == ""
        error = json.loads(err)
        assert error["error"] == "ExpressionParseError"
        assert error["position"] == 6

    def test_bad_box_net(self, capsys):
        """Test an invalid box net is reported as an error"""
        code, _, err = _run(capsys, "exhaust", "--domain", "[[0, 0]]")
        assert code == EXIT_ERROR
        assert json.loads(err)["error"] == "ValidationError"

    def test_text_format(self, capsys):
        """Test the plain-text rendering"""
        code, out, _ = _run(capsys, "--format", "text", "derive", "x1^2", "--alpha", "1")
        assert code == EXIT_DECIDED
        assert out.startswith("derive [decided]")
        assert '"2*x1"' in out


class TestCache:
    """Tests for the content-addressed report cache"""

    def test_cache_hit(self, capsys, tmp_path):
        """Test a repeated request is served from the cache"""
        cache = tmp_path / "reports"
        code, first, _ = _run(capsys, "--cache-dir", str(cache), "eval", "eps^2", "--at", "0")
        assert code == EXIT_DECIDED
        entries = list(cache.glob("*.json"))
        assert len(entries) == 1
        code, second, _ = _run(capsys, "--cache-dir", str(cache), "eval", "eps^2", "--at", "0")
        assert code == EXIT_DECIDED
        assert first == second
        assert len(list(cache.glob("*.json"))) == 1

    def test_format_not_in_key(self, capsys, tmp_path):
        """Test the output format does not change the cache key"""
        cache = tmp_path / "reports"
        _run(capsys, "--cache-dir", str(cache), "derive", "x1^2", "--alpha", "1")
        _run(capsys, "--cache-dir", str(cache), "--format", "text", "derive", "x1^2", "--alpha", "1")
        assert len(list(cache.glob("*.json"))) == 1


class TestRenderText:
    """Tests for rendering suite and demo reports"""

    def test_suite(self):
        """Test suite reports list their properties"""
        text = render_text({"suite": "ring", "seed": 7, "passed": True, "properties": [
            {"name": "ring.commutativity", "passed": True, "cases": 3, "failures": 0, "skipped": 0}]})
        assert text.splitlines()[0] == "suite ring (seed 7): PASS"
        assert "ring.commutativity" in text

    def test_demo(self):
        """Test demo reports list their assertions"""
        text = render_text({"name": "delta-norms", "passed": False, "assertions": {"v_0": False}})
        assert text.splitlines() == ["demo delta-norms: FAIL", "  FAIL v_0"]
