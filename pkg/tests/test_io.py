import json

import numpy as np
import pytest

from ambnorm import io
from ambnorm.errors import IncompatibleGridsError, InvalidParamsError
from ambnorm.phase_plane import Grid2D, cross_ambiguity
from ambnorm.verify import random_pair


def test_waveform_roundtrip(tmp_path, rng):
    g, _ = random_pair(rng)
    p = tmp_path / "w.csv"
    io.write_waveform_csv(p, g)
    back = io.read_waveform_csv(p)
    assert np.array_equal(back.samples, g.samples)
    assert back.same_grid(g)
    assert p.read_text().splitlines()[0] == "t,re,im"


def test_waveform_nonuniform(tmp_path):
    p = tmp_path / "w.csv"
    p.write_text("t,re,im\n0,1,0\n0.5,1,0\n1.5,1,0\n")
    with pytest.raises(IncompatibleGridsError):
        io.read_waveform_csv(p)


@pytest.mark.parametrize("text", ["", "x,y,z\n1,2,3\n", "t,re,im\n0,a,0\n1,2,3\n"])
def test_malformed(tmp_path, text):
    p = tmp_path / "w.csv"
    p.write_text(text)
    with pytest.raises(InvalidParamsError):
        io.read_waveform_csv(p)


def test_surface_roundtrip(tmp_path, rng):
    g, h = random_pair(rng)
    grid = Grid2D(-1, 1 / 8, 10, -0.5, 1 / 16, 12)
    s = cross_ambiguity(g, h, grid)
    p = tmp_path / "s.csv"
    io.write_surface_csv(p, s)
    back = io.read_surface_csv(p)
    assert np.array_equal(back.values, s.values)
    assert back.grid.matches(grid)
    lines = p.read_text().splitlines()
    assert lines[0] == "tau,nu,re,im" and len(lines) == 121
    # row-major: tau fixed while nu varies
    assert lines[1].split(",")[0] == lines[2].split(",")[0]


def test_weight_table_incomplete(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("tau,nu,val\n0,0,1\n0,1,1\n1,0,1\n")
    with pytest.raises(IncompatibleGridsError):
        io.read_weight_csv(p)


def test_json(tmp_path):
    text = io.dumps({"x": np.float64(0.1), "n": np.int64(3), "f": np.bool_(True), "v": [np.inf]},
                    timestamp=False)
    d = json.loads(text)
    assert d == {"x": 0.1, "n": 3, "f": True, "v": [None]}
    assert "generated_at" in json.loads(io.dumps({"a": 1}))
    io.write_json(tmp_path / "a.json", {"a": 1}, timestamp=False)
    assert json.loads((tmp_path / "a.json").read_text()) == {"a": 1}


def test_float_format_roundtrips():
    x = 0.1 + 0.2
    assert float(io.fmt(x)) == x
