"""Batch driver: expression I/O, exit codes, determinism."""

import json

import pytest

from qonsager.cli import EX_IOERR, EX_USAGE, emit_expression, main, parse_expression
from qonsager.errors import ParseError
from qonsager.freealg import Alphabet, NcPoly
from qonsager.report import CheckRecord, Report


AB = Alphabet(["A", "B"])
B = NcPoly.generator(AB, "B")


class TestExpressionIO:
    def test_parse_documented_example(self, tmp_path):
        path = tmp_path / "b.json"
        path.write_text('{"alphabet":["A","B"],"terms":[{"word":["B"],"coeff":1}]}')
        assert parse_expression(path) == B

    def test_emit_parse_is_bit_exact(self, tmp_path):
        path = tmp_path / "expr.json"
        p = B * B - 3 * NcPoly.one(AB)
        first = emit_expression(p, path)
        again = parse_expression(path)
        assert emit_expression(again) == first

    def test_parse_error_is_located(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"alphabet":["A","B"],"terms":[{"word":["C"],"coeff":1}]}')
        with pytest.raises(ParseError):
            parse_expression(path)


class TestExitCodeContract:
    def test_derivation_from_records(self):
        passing = CheckRecord(name="x", status="pass")
        failing = CheckRecord(name="y", status="fail")
        maybe = CheckRecord(name="z", status="inconclusive")
        assert Report("s", [passing]).exit_code == 0
        assert Report("s", [passing, maybe]).exit_code == 2
        assert Report("s", [passing, maybe, failing]).exit_code == 1
        assert Report("s", []).exit_code == 0

    @pytest.mark.parametrize(
        "records,expected",
        [
            (["pass", "pass"], 0),
            (["pass", "inconclusive"], 2),
            (["inconclusive", "fail"], 1),
            (["fail"], 1),
        ],
    )
    def test_synthetic_failures(self, records, expected):
        report = Report("s", [CheckRecord(name=f"c{i}", status=s) for i, s in enumerate(records)])
        assert report.exit_code == expected

    def test_usage_error_is_64(self):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == EX_USAGE

    def test_io_error_is_74(self):
        assert main(["onsager", "lusztig", "--expr", "/absent/file.json"]) == EX_IOERR

    def test_numeric_mode_requires_q(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "identities", "--max-index", "1", "--mode", "numeric"])
        assert exc.value.code == EX_USAGE


class TestCommands:
    def test_lusztig_image(self, tmp_path, capsys):
        src = tmp_path / "b.json"
        src.write_text('{"alphabet":["A","B"],"terms":[{"word":["B"],"coeff":1}]}')
        assert main(["onsager", "lusztig", "--expr", str(src)]) == 0
        data = json.loads(capsys.readouterr().out)
        words = {tuple(t["word"]) for t in data["terms"]}
        assert ("A", "A", "B") in words and ("B",) in words

    def test_identities_small(self, capsys):
        assert main(["verify", "identities", "--max-index", "1"]) == 0

    def test_identities_numeric(self, capsys):
        assert main(
            ["verify", "identities", "--max-index", "1", "--mode", "numeric", "--q", "5/3"]
        ) == 0

    def test_current_verify(self, capsys):
        assert main(["current", "verify", "--kmax", "1"]) == 0

    def test_repn_chain(self, tmp_path, capsys):
        pair = tmp_path / "pair.json"
        assert main(["repn", "d1", "--a", "3", "--b", "2", "--q", "2",
                     "--out", str(pair)]) == 0
        assert main(["repn", "import", "--file", str(pair)]) == 0
        assert main(["repn", "twist", "--file", str(pair)]) == 0
        assert main(["repn", "ssum", "--d", "2", "--a", "3", "--q", "2"]) == 0
        assert main(["repn", "ssum", "--d", "6", "--a", "3/2", "--q", "5/3"]) == 0
        assert main(["repn", "conjugation", "--d", "1", "--a", "3", "--q", "2",
                     "--trials", "2", "--seed", "1"]) == 0
        assert main(["repn", "higher-dg", "--r", "1", "--d", "2", "--a", "3",
                     "--q", "2", "--seed", "1"]) == 0

    def test_import_failure_exits_one(self, tmp_path, capsys):
        import json as _json

        from qonsager.repn import td_pair_d1, td_pair_to_json

        data = td_pair_to_json(td_pair_d1(3, 2, 2))
        data["B"]["entries"][0][0] = "999"
        path = tmp_path / "broken.json"
        path.write_text(_json.dumps(data))
        assert main(["repn", "import", "--file", str(path)]) == 1


class TestDeterminism:
    def test_byte_identical_reports(self, tmp_path, capsys):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        for out in (out1, out2):
            code = main(
                ["verify", "identities", "--max-index", "1", "--seed", "9",
                 "--out", str(out)]
            )
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_seeded_matrix_reports_identical(self, tmp_path, capsys):
        out1, out2 = tmp_path / "c1.json", tmp_path / "c2.json"
        for out in (out1, out2):
            assert main(
                ["repn", "conjugation", "--d", "2", "--a", "3", "--q", "2",
                 "--trials", "3", "--seed", "4", "--out", str(out)]
            ) == 0
        assert out1.read_bytes() == out2.read_bytes()
