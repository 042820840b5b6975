import pytest

from basketmine.cli import BENCH_CSV_HEADER, main

from conftest import DATA, GOLDEN

STORE9 = DATA / "store9.txt"
STORE10 = DATA / "store10.txt"
UPDATE = DATA / "update_t910.txt"

FREQ_STORE10_MS2 = (
    "1-I1\n"
    "2-I2\n"
    "3-I5\n"
    "4-I4\n"
    "5-I3\n"
    "6-I1, I2\n"
    "7-I1, I5\n"
    "8-I1, I4\n"
    "9-I1, I3\n"
    "10-I2, I5\n"
    "11-I2, I4\n"
    "12-I2, I3\n"
    "13-I1, I2, I5\n"
    "14-I1, I2, I3\n"
)

CONF_STORE9_MS2_70 = (
    "I5->I1 = 100%\n"
    "I5->I2 = 100%\n"
    "I4->I2 = 100%\n"
    "I5->I1,I2 = 100%\n"
    "I1,I5->I2 = 100%\n"
    "I2,I5->I1 = 100%\n"
)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTradelistCmd:
    def test_golden_log(self, tmp_path, capsys):
        out = tmp_path / "tl.log"
        code, stdout, _ = run(
            ["tradelist", "--input", str(STORE9), "--out", str(out)], capsys
        )
        assert code == 0
        assert out.read_bytes() == (GOLDEN / "tradelist_store9.log").read_bytes()
        assert str(out) in stdout

    def test_empty_input(self, tmp_path, capsys):
        src = tmp_path / "empty.txt"
        src.write_text("")
        out = tmp_path / "tl.log"
        code, _, _ = run(["tradelist", "--input", str(src), "--out", str(out)], capsys)
        assert code == 0
        assert out.read_text() == ""

    def test_malformed_line_names_line_number(self, tmp_path, capsys):
        src = tmp_path / "bad.txt"
        src.write_text("T1,A\nT2\n")
        out = tmp_path / "tl.log"
        code, _, stderr = run(
            ["tradelist", "--input", str(src), "--out", str(out)], capsys
        )
        assert code == 1
        assert "line 2" in stderr
        assert not out.exists()

    def test_default_name_is_timestamped(self, tmp_path, capsys):
        code, _, _ = run(
            ["tradelist", "--input", str(STORE9), "--outdir", str(tmp_path)], capsys
        )
        assert code == 0
        names = [p.name for p in tmp_path.glob("tradelist_*.log")]
        assert len(names) == 1

    def test_missing_input_file(self, tmp_path, capsys):
        code, _, stderr = run(
            ["tradelist", "--input", str(tmp_path / "nope.txt")], capsys
        )
        assert code == 1
        assert "nope.txt" in stderr


class TestMineCmd:
    def test_store10_minsupp2(self, tmp_path, capsys):
        out = tmp_path / "freq.log"
        code, stdout, _ = run(
            ["mine", "--input", str(STORE10), "--minsupp", "2", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert out.read_text() == FREQ_STORE10_MS2
        assert "frequent itemsets: 14 (L1=5, L2=7, L3=2)" in stdout
        assert "raw passes: 1" in stdout

    def test_store9_minsupp3_has_six_rows(self, tmp_path, capsys):
        out = tmp_path / "freq.log"
        code, _, _ = run(
            ["mine", "--input", str(STORE9), "--minsupp", "3", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert out.read_text() == "1-I1\n2-I2\n3-I3\n4-I1, I2\n5-I1, I3\n6-I2, I3\n"

    def test_huge_threshold_gives_empty_log(self, tmp_path, capsys):
        out = tmp_path / "freq.log"
        code, _, _ = run(
            ["mine", "--input", str(STORE9), "--minsupp", "100", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert out.read_text() == ""

    def test_apriori_writes_identical_log(self, tmp_path, capsys):
        a, b = tmp_path / "a.log", tmp_path / "b.log"
        run(["mine", "--input", str(STORE10), "--minsupp", "2", "--out", str(a)], capsys)
        code, stdout, _ = run(
            [
                "mine", "--input", str(STORE10), "--minsupp", "2",
                "--algo", "apriori", "--out", str(b),
            ],
            capsys,
        )
        assert code == 0
        assert a.read_bytes() == b.read_bytes()
        assert "raw passes: 3" in stdout

    def test_fractional_threshold(self, tmp_path, capsys):
        out = tmp_path / "freq.log"
        code, _, _ = run(
            [
                "mine", "--input", str(STORE9), "--minsupp-frac", "0.25",
                "--out", str(out),
            ],
            capsys,
        )
        assert code == 0  # ceil(0.25 * 9) = 3
        assert out.read_text().splitlines()[0] == "1-I1"
        assert len(out.read_text().splitlines()) == 6

    def test_threads_flag_changes_nothing(self, tmp_path, capsys):
        a, b = tmp_path / "a.log", tmp_path / "b.log"
        run(["mine", "--input", str(STORE10), "--minsupp", "2", "--out", str(a)], capsys)
        run(
            [
                "mine", "--input", str(STORE10), "--minsupp", "2",
                "--threads", "4", "--out", str(b),
            ],
            capsys,
        )
        assert a.read_bytes() == b.read_bytes()

    def test_requires_threshold(self, capsys):
        code, _, stderr = run(["mine", "--input", str(STORE9)], capsys)
        assert code == 2
        assert "support threshold" in stderr

    def test_rejects_both_threshold_forms(self, capsys):
        code, _, stderr = run(
            [
                "mine", "--input", str(STORE9),
                "--minsupp", "2", "--minsupp-frac", "0.5",
            ],
            capsys,
        )
        assert code == 2
        assert "only one" in stderr

    def test_rejects_two_input_sources(self, capsys):
        code, _, stderr = run(
            [
                "mine", "--input", str(STORE9), "--synthetic", "10,5,2,1",
                "--minsupp", "2",
            ],
            capsys,
        )
        assert code == 2
        assert "input source" in stderr

    def test_synthetic_input(self, tmp_path, capsys):
        out = tmp_path / "freq.log"
        code, stdout, _ = run(
            [
                "mine", "--synthetic", "50,10,3,7", "--minsupp", "5",
                "--out", str(out),
            ],
            capsys,
        )
        assert code == 0
        assert "frequent itemsets:" in stdout

    def test_bad_synthetic_spec(self, capsys):
        code, _, stderr = run(
            ["mine", "--synthetic", "50,10,3", "--minsupp", "5"], capsys
        )
        assert code == 2
        assert "--synthetic" in stderr


class TestRulesCmd:
    def test_store9_six_rules(self, tmp_path, capsys):
        out = tmp_path / "conf.log"
        code, stdout, _ = run(
            [
                "rules", "--input", str(STORE9), "--minsupp", "2",
                "--minconf", "0.7", "--out", str(out),
            ],
            capsys,
        )
        assert code == 0
        assert out.read_text() == CONF_STORE9_MS2_70
        assert "rules: 6" in stdout

    def test_percent_form_equivalent(self, tmp_path, capsys):
        out = tmp_path / "conf.log"
        run(
            [
                "rules", "--input", str(STORE9), "--minsupp", "2",
                "--minconf", "70%", "--out", str(out),
            ],
            capsys,
        )
        assert out.read_text() == CONF_STORE9_MS2_70

    def test_minconf_one_boundary(self, tmp_path, capsys):
        out = tmp_path / "conf.log"
        code, _, _ = run(
            [
                "rules", "--input", str(STORE9), "--minsupp", "2",
                "--minconf", "1.0", "--out", str(out),
            ],
            capsys,
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 6
        assert all(line.endswith("= 100%") for line in lines)

    def test_lower_threshold_matches_library(self, tmp_path, capsys):
        from fractions import Fraction

        from basketmine.cli import format_rules_log
        from basketmine.miner import mine
        from basketmine.rules import RuleQuery, generate_rules
        from basketmine.tradelist import TradeList
        from basketmine.ingest import parse_database

        out = tmp_path / "conf.log"
        run(
            [
                "rules", "--input", str(STORE9), "--minsupp", "2",
                "--minconf", "0.6", "--out", str(out),
            ],
            capsys,
        )
        db = parse_database(STORE9.read_text())
        expected = format_rules_log(
            generate_rules(
                mine(TradeList.build(db), 2), RuleQuery(Fraction(3, 5))
            ),
            db,
        )
        assert out.read_text() == expected

    def test_requires_minconf(self, capsys):
        code, _, stderr = run(
            ["rules", "--input", str(STORE9), "--minsupp", "2"], capsys
        )
        assert code == 2
        assert "--minconf" in stderr

    def test_bad_minconf(self, capsys):
        code, _, stderr = run(
            [
                "rules", "--input", str(STORE9), "--minsupp", "2",
                "--minconf", "abc",
            ],
            capsys,
        )
        assert code == 1
        assert "confidence" in stderr


class TestUpdateCmd:
    def test_update_matches_full_rebuild(self, tmp_path, capsys):
        updated_dir = tmp_path / "upd"
        code, stdout, _ = run(
            [
                "update", "--input", str(STORE9), "--update", str(UPDATE),
                "--minsupp", "2", "--minconf", "0.7", "--out", str(updated_dir),
            ],
            capsys,
        )
        assert code == 0
        assert "raw passes: build=1, update+re-mine=0" in stdout
        freq_full = tmp_path / "full.log"
        run(
            [
                "mine", "--input", str(STORE10), "--minsupp", "2",
                "--out", str(freq_full),
            ],
            capsys,
        )
        assert (updated_dir / "freq.log").read_bytes() == freq_full.read_bytes()
        tl_log = (updated_dir / "tradelist.log").read_text()
        assert "I4 = T200, T400, T910" in tl_log
        assert (updated_dir / "conf.log").exists()

    def test_pair_i1_i4_appears_after_update(self, tmp_path, capsys):
        updated_dir = tmp_path / "upd"
        run(
            [
                "update", "--input", str(STORE9), "--update", str(UPDATE),
                "--minsupp", "2", "--minconf", "0.7", "--out", str(updated_dir),
            ],
            capsys,
        )
        assert "8-I1, I4" in (updated_dir / "freq.log").read_text()

    def test_empty_update_equals_plain_mine(self, tmp_path, capsys):
        empty = tmp_path / "empty.txt"
        empty.write_text("")
        updated_dir = tmp_path / "upd"
        run(
            [
                "update", "--input", str(STORE9), "--update", str(empty),
                "--minsupp", "2", "--minconf", "0.7", "--out", str(updated_dir),
            ],
            capsys,
        )
        base_freq = tmp_path / "base.log"
        run(
            ["mine", "--input", str(STORE9), "--minsupp", "2", "--out", str(base_freq)],
            capsys,
        )
        assert (updated_dir / "freq.log").read_bytes() == base_freq.read_bytes()

    def test_duplicate_tid_across_base_and_update(self, tmp_path, capsys):
        clash = tmp_path / "clash.txt"
        clash.write_text("T100,I1\n")
        code, _, stderr = run(
            [
                "update", "--input", str(STORE9), "--update", str(clash),
                "--minsupp", "2", "--minconf", "0.7", "--out", str(tmp_path / "u"),
            ],
            capsys,
        )
        assert code == 1
        assert "T100" in stderr

    def test_requires_update_path(self, capsys):
        code, _, stderr = run(
            [
                "update", "--input", str(STORE9), "--minsupp", "2",
                "--minconf", "0.7",
            ],
            capsys,
        )
        assert code == 2
        assert "--update" in stderr


class TestBenchCmd:
    def parse_csv(self, stdout):
        lines = stdout.strip().splitlines()
        assert lines[0] == BENCH_CSV_HEADER
        rows = {}
        for line in lines[1:]:
            algo, ms, raw, work, n = line.split(",")
            rows[algo] = (float(ms), int(raw), int(work), int(n))
        return rows

    def test_store9_counters(self, capsys):
        code, stdout, _ = run(
            ["bench", "--input", str(STORE9), "--minsupp", "2", "--repeat", "2"],
            capsys,
        )
        assert code == 0
        rows = self.parse_csv(stdout)
        assert rows["tradelist"][1] == 1
        assert rows["apriori"][1] >= 3
        assert rows["tradelist"][3] == rows["apriori"][3] == 13

    def test_empty_database(self, tmp_path, capsys):
        src = tmp_path / "empty.txt"
        src.write_text("")
        code, stdout, _ = run(
            ["bench", "--input", str(src), "--minsupp", "2"], capsys
        )
        assert code == 0
        rows = self.parse_csv(stdout)
        assert rows["tradelist"][3] == rows["apriori"][3] == 0

    def test_synthetic_agreement(self, capsys):
        code, stdout, _ = run(
            [
                "bench", "--synthetic", "200,20,5,7", "--minsupp-frac", "0.05",
                "--repeat", "1",
            ],
            capsys,
        )
        assert code == 0
        rows = self.parse_csv(stdout)
        assert rows["tradelist"][3] == rows["apriori"][3] > 0

    def test_repeat_must_be_positive(self, capsys):
        code, _, stderr = run(
            ["bench", "--input", str(STORE9), "--minsupp", "2", "--repeat", "0"],
            capsys,
        )
        assert code == 2
        assert "--repeat" in stderr


def test_logs_are_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.log", tmp_path / "b.log"
    for out in (a, b):
        run(
            [
                "rules", "--input", str(STORE10), "--minsupp", "2",
                "--minconf", "0.6", "--out", str(out),
            ],
            capsys,
        )
    assert a.read_bytes() == b.read_bytes()


def test_unknown_subcommand_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code != 0
    assert "invalid choice" in capsys.readouterr().err
