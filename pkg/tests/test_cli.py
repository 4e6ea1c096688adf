import csv
import io


from staircase.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="") as handle:
        return list(csv.reader(handle))


class TestSeriesCommand:
    def test_square_series_stdout(self, capsys):
        code, out, err = run(["series", "--class", "square", "--order", "8",
                              "--mode", "exact"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["class", "m", "n", "coefficient"]
        assert rows[1:] == [["square", "2", "1", "1"], ["square", "4", "4", "1"],
                            ["square", "6", "9", "1"], ["square", "8", "16", "1"]]

    def test_jet_mode_file(self, tmp_path, capsys):
        out_file = tmp_path / "full.csv"
        code, _, _ = run(["series", "--class", "full", "--order", "6",
                          "--mode", "jet", "--jet", "1", "--out", str(out_file)], capsys)
        assert code == 0
        rows = read_csv(out_file)
        assert rows[0] == ["class", "m", "k", "jet_coefficient"]
        # counts 1, 2, 5, 14, 42 at q = 1 (slot 0)
        slot0 = [r for r in rows[1:] if r[2] == "0"]
        assert [r[3] for r in slot0] == ["0", "0", "1", "2", "5", "14", "42"]

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        out_file = tmp_path / "r2.csv"
        argv = ["series", "--class", "r2", "--order", "10", "--out", str(out_file)]
        assert run(argv, capsys)[0] == 0
        first = out_file.read_bytes()
        assert run(argv, capsys)[0] == 0
        assert out_file.read_bytes() == first


class TestEnumerateCommand:
    def test_matches_series(self, tmp_path, capsys):
        out_file = tmp_path / "counts.csv"
        code, _, _ = run(["enumerate", "--max-m", "6", "--out", str(out_file)], capsys)
        assert code == 0
        rows = read_csv(out_file)
        assert rows[0] == ["class", "m", "n", "count"]
        assert ["full", "2", "1", "1"] in rows
        assert ["square", "6", "9", "1"] in rows

    def test_bounds_error(self, capsys):
        code, _, err = run(["enumerate", "--max-m", "60"], capsys)
        assert code == 1
        assert "error" in err


class TestLimitsCommand:
    def test_airy_moments(self, capsys):
        code, out, _ = run(["limits", "--law", "airy", "--k", "3",
                            "--digits", "20"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["law", "k", "exact", "decimal", "digits"]
        assert rows[2][2] == "1*sqrtpi"
        assert rows[2][3].startswith("1.7724538509")
        assert rows[3][2] == "10/3"


class TestLimitsCoefficients:
    def test_sequence_table(self, capsys):
        code, out, _ = run(["limits", "--coefficients", "--k", "1",
                            "--digits", "10"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["sequence", "k", "exact", "decimal", "digits"]
        table = {(r[0], r[1]): r[2] for r in rows[1:]}
        assert table[("airy_coeff", "0")] == "-1"
        assert table[("meander_coeff", "1")] == "3/4"
        assert table[("singular_full", "1")] == "1/16"
        assert table[("singular_r2", "0")] == "1/2*sqrt2"

    def test_law_required_without_coefficients(self, capsys):
        code, _, err = run(["limits", "--k", "3"], capsys)
        assert code == 1
        assert "pick --law" in err


class TestMomentsCommand:
    def test_rect_report(self, tmp_path, capsys):
        out_file = tmp_path / "rect.csv"
        code, _, _ = run(["moments", "--class", "rect", "--k", "1",
                          "--m", "10,100", "--out", str(out_file)], capsys)
        assert code == 0
        rows = read_csv(out_file)
        assert rows[0][:3] == ["class", "k", "m"]
        assert rows[1][0] == "rect" and rows[1][2] == "10"
        assert rows[1][5] == "11/15"  # 2/3 + 2/30
        assert rows[1][6] == "2/3"

    def test_range_syntax(self, capsys):
        code, out, _ = run(["moments", "--class", "square", "--k", "1",
                            "--m", "1:4"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 5
        assert {r[5] for r in rows[1:]} == {"1"}


class TestOrbitsCommand:
    def test_counts(self, capsys):
        code, out, _ = run(["orbits", "--subgroup", "d4", "--order", "6"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["subgroup", "m", "n", "orbit_count"]
        assert rows[1] == ["d4", "2", "1", "1"]

    def test_ratio_table(self, capsys):
        code, out, _ = run(["orbits", "--subgroup", "d4", "--alpha", "3",
                            "--m", "20,24"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["subgroup", "alpha", "m", "ratio_num", "ratio_den",
                           "ratio_decimal", "digits"]
        assert rows[1][:3] == ["d4", "3", "20"]

    def test_ratio_requires_indices(self, capsys):
        code, _, err = run(["orbits", "--subgroup", "d4", "--alpha", "3"], capsys)
        assert code == 1
        assert "needs --m" in err


class TestCompareCommand:
    def test_writes_report_and_plot_data(self, tmp_path, capsys):
        base = tmp_path / "report"
        code, _, _ = run(["compare", "--class", "full", "--k", "1,2",
                          "--m", "4,16,36", "--out", str(base)], capsys)
        assert code == 0
        rows = read_csv(str(base) + ".csv")
        assert len(rows) == 7  # header + 3 rows per k
        for k in (1, 2):
            dat = (tmp_path / f"report_full_k{k}.dat").read_text().splitlines()
            assert len(dat) == 3
            assert dat[0].split()[0] == "4"
            float(dat[0].split()[1])


class TestUsageErrors:
    def test_unknown_class(self, capsys):
        code, _, err = run(["series", "--class", "pentagon", "--order", "8"], capsys)
        assert code == 1

    def test_bad_order(self, capsys):
        code, _, err = run(["series", "--class", "full", "--order", "1"], capsys)
        assert code == 1
        assert "error" in err

    def test_bad_alpha(self, capsys):
        code, _, err = run(["orbits", "--subgroup", "d4", "--alpha", "x",
                            "--m", "4"], capsys)
        assert code == 1

    def test_missing_command(self, capsys):
        assert run([], capsys)[0] == 1


class TestSelftest:
    def test_passes_and_prints_per_check_lines(self, capsys):
        code, out, _ = run(["selftest", "--max-m", "8"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert sum(1 for line in lines if line.startswith("ok: ")) == 8
        assert lines[-1] == "all checks passed"

    def test_bound_validated(self, capsys):
        assert run(["selftest", "--max-m", "40"], capsys)[0] == 1
