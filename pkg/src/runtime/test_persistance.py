import numpy as np
import pandas as pd
from pandas import DataFrame

from runtime.persistance import render_csv, write_csv, write_json


class TestCsv:

    def test_format(self):
        frame = DataFrame({"n": [0, 1], "value": [0.1, np.nan]})
        assert render_csv(frame) == "n,value\n0,0.10000000000000001\n1,\n"

    def test_floats_round_trip(self, tmp_path):
        rng = np.random.default_rng(7)
        frame = DataFrame({"a": rng.normal(size=50), "b": rng.uniform(size=50)})
        write_csv(frame, tmp_path / "first.csv")

        parsed = pd.read_csv(tmp_path / "first.csv", float_precision="round_trip")
        assert np.array_equal(parsed.to_numpy(), frame.to_numpy())
        write_csv(parsed, tmp_path / "second.csv")
        assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()

    def test_no_leftover_temporary_files(self, tmp_path):
        write_csv(DataFrame({"a": [1.0]}), tmp_path / "out" / "a.csv")
        assert [path.name for path in (tmp_path / "out").iterdir()] == ["a.csv"]


class TestJson:

    def test_overwrites_atomically(self, tmp_path):
        target = tmp_path / "doc.json"
        write_json({"a": 1}, target)
        write_json({"a": 2}, target)
        assert target.read_text() == '{\n  "a": 2\n}\n'
        assert len(list(tmp_path.iterdir())) == 1
