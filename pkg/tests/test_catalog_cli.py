import json

import pytest

from stabaut.catalog import CATALOG, UnknownCode, catalog_lookup, load_code_file, parse_code_text
from stabaut.cli import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCatalog:
    def test_names(self):
        assert list(CATALOG) == [
            "513", "604", "713", "833", "823", "1004", "1115", "ex24", "ex28", "422a", "422b",
        ]

    def test_lookup(self):
        assert catalog_lookup("513").generators == ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")
        gens = catalog_lookup("1004").generators
        assert len(gens) == 10
        # the ten generators are cyclic shifts of one another
        assert all(gens[i + 1] == gens[i][-1] + gens[i][:-1] for i in range(9))
        assert len(catalog_lookup("1115").generators) == 10

    def test_unknown(self):
        with pytest.raises(UnknownCode) as exc:
            catalog_lookup("999")
        assert "513" in str(exc.value)

    def test_entries_build_with_expected_shape(self, groups):
        for name, entry in CATALOG.items():
            S = groups[name]
            assert (S.n, S.k) == (entry.expected.n, entry.expected.k)


class TestFileFormat:
    def test_parse(self):
        text = "# [[3,1]] example\nXZZ  # first\n\n-ZXZ\n"
        gens, exp = parse_code_text(text)
        assert gens == ["XZZ", "-ZXZ"]
        assert (exp.n, exp.k, exp.d) == (3, 1, None)

    def test_load(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("# [[5,1,3]]\nXZZXI\nIXZZX\nXIXZZ\nZXIXZ\n", encoding="utf-8")
        gens, exp = load_code_file(path)
        assert len(gens) == 4 and exp.d == 3


class TestCLI:
    def test_catalog_listing(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0 and "1004" in out

    def test_catalog_entry_json(self, capsys):
        code, out, _ = run(capsys, "catalog", "--code", "513", "--json")
        data = json.loads(out)
        assert data["generators"][0] == "XZZXI" and data["expected"]["clifford"] == 120

    def test_validate(self, capsys):
        code, out, _ = run(capsys, "validate", "--code", "513")
        assert code == 0 and "k=1" in out

    def test_params(self, capsys):
        code, out, _ = run(capsys, "params", "--code", "604")
        assert code == 0
        assert out.strip() == "n=6 k=0 d=4 (degenerate convention)"

    def test_distance_json(self, capsys):
        code, out, _ = run(capsys, "distance", "--code", "513", "--json")
        data = json.loads(out)
        assert data["d"] == 3 and len(data["witness"].replace("I", "")) == 3

    def test_basis(self, capsys):
        code, out, _ = run(capsys, "basis", "--code", "ex24")
        assert out.strip().split("\n\n")[0].splitlines() == ["+000", "+010", "+100", "-110"]

    def test_check_errors(self, capsys):
        code, out, _ = run(capsys, "check-errors", "--code", "513")
        assert code == 0 and out.startswith("correctable")
        code, out, _ = run(capsys, "check-errors", "--code", "422b", "--json")
        data = json.loads(out)
        assert data["correctable"] is False and data["pair"] == [0, 3]

    def test_check_errors_custom(self, capsys):
        code, out, _ = run(capsys, "check-errors", "--code", "422b", "--errors", "IIII")
        assert out.startswith("correctable")

    def test_aut_strong(self, capsys):
        code, out, err = run(capsys, "aut", "--code", "513", "--kind", "strong")
        assert code == 0
        assert "order: 10" in out
        assert "generators: (1 2 3 4 5), (2 5)(3 4)" in out
        assert "search finished" in err and "search finished" not in out

    def test_aut_json_elements(self, capsys):
        code, out, _ = run(capsys, "aut", "--code", "ex28", "--kind", "weak", "--json", "--elements")
        data = json.loads(out)
        assert data["order"] == 6 and len(data["elements"]) == 6
        assert data["consistency"] == []
        assert all("signs" in w for w in data["witnesses"])

    def test_aut_long_guard(self, capsys):
        code, _, err = run(capsys, "aut", "--code", "1115", "--kind", "clifford")
        assert code == 1 and "--allow-long" in err

    def test_check_perm(self, capsys):
        code, out, _ = run(capsys, "check-perm", "--code", "1004", "--perm", "(1 3)", "--kind", "clifford")
        assert code == 0 and "NOT a member" in out
        code, out, _ = run(capsys, "check-perm", "--code", "604", "--perm", "(135)(264)",
                           "--kind", "weak", "--json")
        data = json.loads(out)
        assert data["member"] and data["signs"] == [-1, -1, -1, -1, 1, 1]

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "code.txt"
        path.write_text("XXXX\nZZZZ\n", encoding="utf-8")
        code, out, _ = run(capsys, "aut", "--file", str(path))
        assert "order: 24" in out

    @pytest.mark.parametrize(
        "argv,needle",
        [
            (["params"], "a code is required"),
            (["params", "--code", "nope"], "unknown code"),
            (["params", "--file", "/nonexistent/x.txt"], "file not found"),
            (["check-perm", "--code", "513"], "--perm is required"),
            (["check-perm", "--code", "513", "--perm", "(1 9)"], "error"),
        ],
    )
    def test_errors(self, capsys, argv, needle):
        code, _, err = run(capsys, *argv)
        assert code == 1 and needle in err

    def test_dependent_generators(self, capsys, tmp_path):
        path = tmp_path / "dep.txt"
        path.write_text("XX\nZZ\n-YY\n", encoding="utf-8")
        code, _, err = run(capsys, "validate", "--file", str(path))
        assert code == 1 and "generator 2" in err
        code, out, _ = run(capsys, "validate", "--file", str(path), "--reduce")
        assert code == 0 and "m=2" in out

    def test_bad_flag_exits(self):
        with pytest.raises(SystemExit):
            run_cli(["aut", "--kind", "bogus"])
