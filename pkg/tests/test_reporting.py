"""Deterministic report documents and their CSV/JSON renderings."""

import json
import math

import pytest

import chordgenus as cg
from chordgenus import IoError
from chordgenus._version import __version__
from chordgenus.reporting import (
    BOUNDS_HEADER,
    ReportDocument,
    Table,
    build_document,
    render_csv,
    render_json,
    save_bytes,
    write_csv,
    write_json,
)
from chordgenus.rng import GENERATOR_NAME


class TestBuildDocument:
    def test_exact_layout(self):
        doc = build_document(cg.exact_stats(1))
        assert doc.metadata == {
            "tool": "chordgenus",
            "version": __version__,
            "mode": "exact",
            "n": 1,
            "count": 2,
        }
        (table,) = doc.tables
        assert table.name == "exact"
        assert table.header == (
            "n", "count", "d_mean_num", "d_mean_den", "genus", "genus_count",
        )
        assert table.rows == ((1, 2, 3, 1, 0, 2),)

    def test_sample_layout(self):
        s = cg.mc_stats(3, 50, 11)
        doc = build_document(s)
        assert doc.metadata["mode"] == "sample"
        assert doc.metadata["seed"] == 11
        assert doc.metadata["generator"] == GENERATOR_NAME
        summary, loops = doc.tables
        assert summary.header == (
            "n", "samples", "seed", "d_mean", "d_stddev", "ci99_lo", "ci99_hi",
        )
        assert summary.rows == (
            (3, 50, 11, s.d_mean, s.d_stddev, s.ci99[0], s.ci99[1]),
        )
        assert loops.header == (
            "n", "k", "Lk_hat", "Lk_se", "bound_3_over_k",
            "lower_1_over_9k", "Pk_hat", "Pk_se",
        )
        ks = [row[1] for row in loops.rows]
        assert ks == sorted(s.L_hat)
        for row in loops.rows:
            k = row[1]
            assert row[2] == s.L_hat[k].value
            assert row[4] == 3.0 / k
            assert row[5] == 1.0 / (9.0 * k)
            assert row[6] == s.P_hat[k].value

    def test_plugs_layout(self):
        s = cg.plug_mc_stats(6, 4, 30, 9)
        doc = build_document(s)
        assert doc.metadata["mode"] == "plugs"
        assert doc.metadata["k_max"] == 4
        (table,) = doc.tables
        assert table.name == "plugs"
        assert len(table.rows) == 4
        for row, src in zip(table.rows, s.rows):
            assert row[:4] == (6, 30, src.k, src.plugs.value)

    def test_bounds_table_appended(self):
        s = cg.exact_stats(2)
        doc = build_document(s, cg.bound_report(s))
        assert [t.name for t in doc.tables] == ["exact", "bounds"]
        bounds = doc.tables[-1]
        assert bounds.header == BOUNDS_HEADER
        assert all(row[-1] == "pass" for row in bounds.rows)

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            build_document("stats")


class TestCsv:
    def test_exact_bytes(self):
        data = write_csv(cg.exact_stats(1))
        expected = (
            "# tool=chordgenus\n"
            f"# version={__version__}\n"
            "# mode=exact\n"
            "# n=1\n"
            "# count=2\n"
            "\n"
            "n,count,d_mean_num,d_mean_den,genus,genus_count\n"
            "1,2,3,1,0,2\n"
        )
        assert data == expected.encode()

    def test_floats_round_trip(self):
        s = cg.mc_stats(5, 80, 3)
        text = write_csv(s).decode()
        blocks = text.strip().split("\n\n")
        header, row = blocks[1].split("\n")
        cells = dict(zip(header.split(","), row.split(",")))
        assert float(cells["d_mean"]) == s.d_mean
        assert float(cells["d_stddev"]) == s.d_stddev
        assert float(cells["ci99_lo"]) == s.ci99[0]

    def test_none_cells_render_empty(self):
        s = cg.mc_stats(60, 100, 4)
        text = write_csv(s, cg.bound_report(s)).decode()
        bounds = text.strip().split("\n\n")[-1].splitlines()
        assert bounds[0] == ",".join(BOUNDS_HEADER)
        d_row = next(l for l in bounds if l.startswith("d_mean_lower,"))
        assert d_row.split(",")[1] == ""  # k is None for whole-run rows

    def test_nan_renders_as_nan(self):
        text = write_csv(cg.mc_stats(3, 1, 0)).decode()
        assert ",nan," in text

    def test_empty_table_keeps_header(self):
        text = write_csv(cg.plug_mc_stats(4, 0, 10, 1)).decode()
        lines = text.strip().split("\n\n")[1].splitlines()
        assert lines == ["n,runs,k,mean_plugs,Gp,Gp_se,Gm,Gm_se,Hp,Hp_se,Hm,Hm_se"]

    def test_document_passthrough(self):
        s = cg.exact_stats(3)
        assert write_csv(build_document(s)) == write_csv(s)


class TestJson:
    def test_parses_and_mirrors_tables(self):
        s = cg.mc_stats(4, 60, 13)
        report = cg.bound_report(s)
        parsed = json.loads(write_json(s, report))
        assert set(parsed) == {"metadata", "rows"}
        assert parsed["metadata"]["mode"] == "sample"
        assert set(parsed["rows"]) == {"sample", "loops", "bounds"}
        doc = build_document(s, report)
        for table in doc.tables:
            got = parsed["rows"][table.name]
            assert len(got) == len(table.rows)
            for obj, row in zip(got, table.rows):
                assert list(obj) == list(table.header)
                for name, cell in zip(table.header, row):
                    assert obj[name] == cell

    def test_nan_uses_python_style_tokens(self):
        text = write_json(cg.mc_stats(3, 1, 0)).decode()
        assert "NaN" in text
        parsed = json.loads(text)
        assert math.isnan(parsed["rows"]["sample"][0]["d_stddev"])

    def test_rejects_unknown_cell_types(self):
        doc = ReportDocument(
            metadata={"tool": "chordgenus"},
            tables=(Table("t", ("a",), ((object(),),)),),
        )
        with pytest.raises(TypeError):
            render_json(doc)


class TestDeterminism:
    def test_byte_identical_reruns(self):
        s = cg.mc_stats(6, 200, 99)
        r = cg.bound_report(s)
        assert write_csv(s, r) == write_csv(cg.mc_stats(6, 200, 99), r)
        assert write_json(s, r) == write_json(cg.mc_stats(6, 200, 99), r)

    def test_render_has_no_trailing_spaces(self):
        text = render_csv(build_document(cg.exact_stats(2)))
        assert all(line == line.rstrip() for line in text.splitlines())
        assert text.endswith("\n")


class TestSaveBytes:
    def test_writes_file(self, tmp_path):
        target = tmp_path / "out.csv"
        save_bytes(str(target), b"payload")
        assert target.read_bytes() == b"payload"

    def test_wraps_oserror(self, tmp_path):
        with pytest.raises(IoError):
            save_bytes(str(tmp_path / "missing" / "out.csv"), b"payload")
