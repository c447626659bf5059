"""Command-line surface: exit codes, file formats, plotting."""

import json

import pytest

from dicregion.channel import save_channel
from dicregion.cli import main
from dicregion.entropy import InputDistribution, save_distribution
from dicregion.polytope import load_region, regions_equal, save_region

from conftest import parity3_channel, xor_channel
from test_polytope import R, UNIT_SIMPLEX, UNIT_SQUARE


@pytest.fixture
def xor_file(tmp_path):
    path = tmp_path / "xor.json"
    save_channel(xor_channel(), path)
    return str(path)


@pytest.fixture
def uniform2_file(tmp_path):
    path = tmp_path / "uniform2.json"
    save_distribution(InputDistribution.uniform(xor_channel()), path)
    return str(path)


def test_validate_injective(xor_file, capsys):
    assert main(["validate", xor_file]) == 0
    assert "injective" in capsys.readouterr().out


def test_validate_non_injective(tmp_path, capsys):
    path = tmp_path / "parity.json"
    save_channel(parity3_channel(), path)
    assert main(["validate", str(path)]) == 1
    out = capsys.readouterr().out
    assert "NOT injective" in out
    assert "collide" in out


def test_validate_truncated_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"K": 2, "x_alphabet_sizes": [2')
    assert main(["validate", str(path)]) == 2
    assert "could not read" in capsys.readouterr().err


def test_region_both_methods_agree(xor_file, uniform2_file, tmp_path):
    out_a = tmp_path / "hk.json"
    out_b = tmp_path / "thm.json"
    assert main(["region", xor_file, uniform2_file, "--method", "hk-project", "--out", str(out_a)]) == 0
    assert main(["region", xor_file, uniform2_file, "--method", "theorem", "--out", str(out_b)]) == 0
    a, b = load_region(out_a), load_region(out_b)
    assert regions_equal(a, b, 1e-9)
    assert {(q.coeffs, q.rhs) for q in a.inequalities} == {
        ((-1, 0), 0.0),
        ((0, -1), 0.0),
        ((1, 1), 1.0),
    }


def test_region_point_mass(xor_file, tmp_path):
    dist_path = tmp_path / "point.json"
    save_distribution(InputDistribution.point_mass(xor_channel()), dist_path)
    out = tmp_path / "region.json"
    assert main(["region", xor_file, str(dist_path), "--method", "theorem", "--out", str(out)]) == 0
    region = load_region(out)
    zero = R(2, [((1, 0), 0.0), ((0, 1), 0.0), ((-1, 0), 0.0), ((0, -1), 0.0)], labels=("R1", "R2"))
    assert regions_equal(region, zero, 1e-9)


def test_region_refuses_non_injective(tmp_path, capsys):
    chan = tmp_path / "parity.json"
    save_channel(parity3_channel(), chan)
    dist = tmp_path / "u3.json"
    save_distribution(InputDistribution.uniform(parity3_channel()), dist)
    assert main(["region", str(chan), str(dist), "--method", "theorem"]) == 1
    assert "refusing" in capsys.readouterr().err


def test_region_force_overrides_for_hk(tmp_path, capsys):
    chan = tmp_path / "parity.json"
    save_channel(parity3_channel(), chan)
    dist = tmp_path / "u3.json"
    save_distribution(InputDistribution.uniform(parity3_channel()), dist)
    out = tmp_path / "region.json"
    assert (
        main(["region", str(chan), str(dist), "--method", "hk-project", "--force", "--out", str(out)])
        == 0
    )
    assert "warning" in capsys.readouterr().err
    assert load_region(out).dim == 3
    # --force does not unlock the capacity formula
    assert main(["region", str(chan), str(dist), "--method", "theorem", "--force"]) == 1


def test_region_stdout_json(xor_file, uniform2_file, capsys):
    assert main(["region", xor_file, uniform2_file, "--method", "theorem"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 2 and doc["labels"] == ["R1", "R2"]


def test_compare_equal_and_unequal(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    save_region(UNIT_SIMPLEX, a)
    save_region(UNIT_SIMPLEX, b)
    assert main(["compare", str(a), str(b)]) == 0
    assert "equal" in capsys.readouterr().out
    save_region(UNIT_SQUARE, b)
    assert main(["compare", str(a), str(b)]) == 1
    assert "violated" in capsys.readouterr().out


def test_region_k3_methods_agree(tmp_path):
    import random

    from conftest import random_injective_channel

    spec = random_injective_channel(random.Random(99), 3, 2)
    chan = tmp_path / "chan3.json"
    save_channel(spec, chan)
    dist = tmp_path / "u3.json"
    save_distribution(InputDistribution.uniform(spec), dist)
    out_a = tmp_path / "hk3.json"
    out_b = tmp_path / "thm3.json"
    assert main(["region", str(chan), str(dist), "--method", "hk-project", "--out", str(out_a)]) == 0
    assert main(["region", str(chan), str(dist), "--method", "theorem", "--out", str(out_b)]) == 0
    assert main(["compare", str(out_a), str(out_b)]) == 0


def test_compare_pipeline_outputs(xor_file, uniform2_file, tmp_path):
    out_a = tmp_path / "hk.json"
    out_b = tmp_path / "thm.json"
    main(["region", xor_file, uniform2_file, "--method", "hk-project", "--out", str(out_a)])
    main(["region", xor_file, uniform2_file, "--method", "theorem", "--out", str(out_b)])
    assert main(["compare", str(out_a), str(out_b), "--tol", "1e-9"]) == 0


def test_compare_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    good = tmp_path / "good.json"
    save_region(UNIT_SIMPLEX, good)
    assert main(["compare", str(bad), str(good)]) == 2


def test_plot_simplex_svg(tmp_path):
    region_path = tmp_path / "simplex.json"
    save_region(UNIT_SIMPLEX, region_path)
    out = tmp_path / "plot.svg"
    assert main(["plot", str(region_path), "--out", str(out)]) == 0
    svg = out.read_text()
    assert svg.startswith("<svg") and "<polygon" in svg
    assert "x1" in svg  # axis labels from the region file


def test_plot_square_svg(tmp_path):
    region_path = tmp_path / "square.json"
    save_region(UNIT_SQUARE, region_path)
    out = tmp_path / "plot.svg"
    assert main(["plot", str(region_path), "--out", str(out)]) == 0
    assert out.read_text().count("<circle") == 4


def test_plot_3d_emits_csv(tmp_path):
    from dicregion.polytope import LinearInequality, Region, nonneg_inequalities

    rows = [LinearInequality((1, 1, 1), 1.0)] + nonneg_inequalities(3)
    region = Region(3, tuple(rows), ("R1", "R2", "R3"))
    region_path = tmp_path / "r3.json"
    save_region(region, region_path)
    out = tmp_path / "verts.csv"
    assert main(["plot", str(region_path), "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "R1,R2,R3"
    assert len(lines) == 5  # origin plus three unit corners


def test_plot_unbounded_names_direction(tmp_path, capsys):
    region = R(2, [((1, 0), 1.0), ((-1, 0), 0.0), ((0, -1), 0.0)], labels=("R1", "R2"))
    region_path = tmp_path / "open.json"
    save_region(region, region_path)
    assert main(["plot", str(region_path), "--out", str(tmp_path / "x.svg")]) == 1
    assert "+R2" in capsys.readouterr().err


def test_plot_dim_guard(tmp_path, capsys):
    from dicregion.polytope import Region, nonneg_inequalities

    region = Region(4, tuple(nonneg_inequalities(4)))
    region_path = tmp_path / "r4.json"
    save_region(region, region_path)
    assert main(["plot", str(region_path), "--out", str(tmp_path / "x.svg")]) == 2
    assert "dim <= 3" in capsys.readouterr().err


def test_region_check_a_max_stable(xor_file, uniform2_file, tmp_path, capsys):
    out = tmp_path / "r.json"
    rc = main(
        ["region", xor_file, uniform2_file, "--method", "theorem", "--check-a-max", "--out", str(out)]
    )
    assert rc == 0
    assert "left the region unchanged" in capsys.readouterr().out


def test_region_guard_overflow(xor_file, uniform2_file, capsys):
    rc = main(["region", xor_file, uniform2_file, "--method", "theorem", "--guard", "3"])
    assert rc == 1
    assert "size guard" in capsys.readouterr().err


def test_presets_dump(capsys):
    assert main(["presets", "--k", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc) == 7
    assert doc[0]["a"] == [1, 0]
    assert main(["presets", "--k", "3"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 28


def test_presets_unsupported_k_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["presets", "--k", "4"])
    assert exc.value.code == 2


def test_seed_env_override(xor_file, uniform2_file, tmp_path, monkeypatch, capsys):
    out = tmp_path / "r.json"
    main(["region", xor_file, uniform2_file, "--method", "theorem", "--out", str(out)])
    monkeypatch.setenv("DIC_SEED", "123")
    assert main(["compare", str(out), str(out), "--directions", "5"]) == 0
    assert "equal" in capsys.readouterr().out
