import json
from fractions import Fraction
from pathlib import Path

import pytest
from click.testing import CliRunner

from starwedge.cli import main
from starwedge.config import ConfigError, atomic_write_text, load_config
from starwedge.twists import CanonicalTwist, LieTwist

FULL_CONFIG = """\
[run]
seed = 7
format = text

[twist]
kind = canonical
chart = rindler
theta01 = 3/7
theta23 = 1/3

[spectrum]
a = 6.283185307179586
omega_hat = 1.0
z = 1.0
theta01 = 1e-4
omega_grid = 0.5 1 2
method = closed-form

[tolerances]
quadrature_agreement = 1e-6
"""


def _write(tmp_path: Path, text: str, name: str = "run.ini") -> Path:
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


# --- config parsing ---------------------------------------------------------------

def test_full_config_parses(tmp_path):
    cfg = load_config(_write(tmp_path, FULL_CONFIG))
    assert cfg.seed == 7
    assert cfg.chart == "rindler"
    assert isinstance(cfg.twist, CanonicalTwist)
    assert cfg.twist.theta[0][1] == Fraction(3, 7)
    assert cfg.spectrum.omegas == (0.5, 1.0, 2.0)
    assert cfg.spectrum.theta01 == pytest.approx(1e-4)
    assert cfg.tolerances == {"quadrature_agreement": 1e-6}


def test_lie_config_parses(tmp_path):
    text = "[twist]\nkind = lie\nchart = minkowski\ninv_kappa = 1/3\nzeta = 0 0 2/3 0\nalpha = 0\nbeta = 1\n"
    cfg = load_config(_write(tmp_path, text))
    assert isinstance(cfg.twist, LieTwist)
    assert cfg.twist.zeta[2] == Fraction(2, 3)


def test_inline_comments_are_stripped(tmp_path):
    text = (
        "[twist]\n"
        "kind = canonical        ; canonical | lie | quadratic\n"
        "chart = rindler         # trailing note\n"
        "theta01 = 3/7\n"
    )
    cfg = load_config(_write(tmp_path, text))
    assert cfg.chart == "rindler"
    assert cfg.twist.theta[0][1] == Fraction(3, 7)


def test_grid_specs(tmp_path):
    cfg = load_config(_write(tmp_path, "[spectrum]\na=1\nomega_hat=1\nz=1\nomega_grid = geom 1/2 2 3\n"))
    assert cfg.spectrum.omegas == pytest.approx((0.5, 1.0, 2.0))
    cfg = load_config(_write(tmp_path, "[spectrum]\na=1\nomega_hat=1\nz=1\nomega_grid = lin 1 2 3\n"))
    assert cfg.spectrum.omegas == pytest.approx((1.0, 1.5, 2.0))


@pytest.mark.parametrize(
    "text",
    [
        "[bogus]\nx = 1\n",
        "[run]\nbogus = 1\n",
        "[run]\nformat = yaml\n",
        "[twist]\nkind = nonsense\n",
        "[twist]\nkind = canonical\nchart = schwarzschild\n",
        "[twist]\nkind = canonical\ntheta99 = 1\n",
        "[spectrum]\na = 1\n",
        "[spectrum]\na=1\nomega_hat=1\nz=1\nomega_grid =\n",
        "[spectrum]\na=1\nomega_hat=1\nz=1\nomega_grid = -1 2\n",
        "[spectrum]\na=0\nomega_hat=1\nz=1\nomega_grid = 1\n",
        "[spectrum]\na=1\nomega_hat=1\nz=1\nomega_grid = 1\nmethod = magic\n",
        "[tolerances]\nnot_a_check = 1e-9\n",
        "top = level\n[run]\nseed = 1\n",
        "[spectrum]\na=one\nomega_hat=1\nz=1\nomega_grid = 1\n",
    ],
)
def test_malformed_configs_rejected(tmp_path, text):
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, text))


def test_missing_file_is_config_error():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/run.ini")


def test_atomic_write(tmp_path):
    target = tmp_path / "deep" / "file.txt"
    atomic_write_text(target, "payload")
    assert target.read_text() == "payload"
    assert not list(target.parent.glob("*.tmp"))


# --- CLI ---------------------------------------------------------------------------

def test_commutator_command_writes_table(tmp_path):
    cfg = _write(tmp_path, FULL_CONFIG)
    out = tmp_path / "out"
    result = CliRunner().invoke(main, ["commutator", "--config", str(cfg), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "[z0, z1] = 3/7*i/(a*z1)" in result.output
    table = json.loads((out / "table.json").read_text())
    assert table["chart"] == "rindler"
    assert (out / "table.txt").exists()


def test_commutator_json_format_flag(tmp_path):
    cfg = _write(tmp_path, FULL_CONFIG)
    out = tmp_path / "out"
    result = CliRunner().invoke(
        main, ["commutator", "--config", str(cfg), "--out", str(out), "--format", "json"]
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["twist"]["kind"] == "canonical"


def test_spectrum_command_csv(tmp_path):
    cfg = _write(tmp_path, FULL_CONFIG)
    out = tmp_path / "out"
    result = CliRunner().invoke(main, ["spectrum", "--config", str(cfg), "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = (out / "spectrum.csv").read_text().strip().splitlines()
    assert lines[0] == "omega,re_f,im_f,power,power_deformed,method,eps"
    assert len(lines) == 4
    # at T = 1 the power column is the Planck factor 1/(e^omega - 1)
    import math

    row1 = lines[2].split(",")
    assert float(row1[3]) == pytest.approx(1.0 / (math.e - 1.0), rel=1e-10)
    payload = json.loads((out / "spectrum.json").read_text())
    assert payload["seed"] == 7


def test_missing_config_exits_2(tmp_path):
    result = CliRunner().invoke(main, ["commutator", "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_malformed_config_exits_2_without_outputs(tmp_path):
    cfg = _write(tmp_path, "[run]\nbogus = 1\n")
    out = tmp_path / "out"
    result = CliRunner().invoke(main, ["commutator", "--config", str(cfg), "--out", str(out)])
    assert result.exit_code == 2
    assert not out.exists()


def test_spec_violation_exits_3(tmp_path):
    text = "[twist]\nkind = lie\nchart = minkowski\ninv_kappa = 1\nzeta = 1 0 0 0\nalpha = 0\nbeta = 1\n"
    cfg = _write(tmp_path, text)
    result = CliRunner().invoke(main, ["commutator", "--config", str(cfg), "--out", str(tmp_path / "o")])
    assert result.exit_code == 3


def test_nonconverged_quadrature_exits_4_with_flagged_rows(tmp_path):
    text = (
        "[spectrum]\na = 1\nomega_hat = 1\nz = 1\nomega_grid = 1\n"
        "method = quadrature\nlevels = 2\nrtol = 1e-15\n"
    )
    cfg = _write(tmp_path, text)
    out = tmp_path / "out"
    result = CliRunner().invoke(main, ["spectrum", "--config", str(cfg), "--out", str(out)])
    assert result.exit_code == 4
    payload = json.loads((out / "spectrum.json").read_text())
    assert payload["rows"][0]["converged"] is False


def test_verify_passes_and_is_deterministic(tmp_path):
    cfg = _write(tmp_path, FULL_CONFIG)
    runner = CliRunner()
    outs = []
    for name in ("v1", "v2"):
        out = tmp_path / name
        result = runner.invoke(main, ["verify", "--config", str(cfg), "--out", str(out)])
        assert result.exit_code == 0, result.output
        outs.append((out / "report.json").read_bytes())
    assert outs[0] == outs[1]
    report = json.loads(outs[0])
    assert report["all_passed"] is True
    assert report["seed"] == 7


def test_verify_seed_change_same_outcomes(tmp_path):
    runner = CliRunner()
    outcomes = []
    for seed in ("1", "2"):
        out = tmp_path / f"s{seed}"
        result = runner.invoke(main, ["verify", "--seed", seed, "--out", str(out)])
        assert result.exit_code == 0
        report = json.loads((out / "report.json").read_text())
        outcomes.append([(c["name"], c["passed"]) for c in report["checks"]])
    assert outcomes[0] == outcomes[1]


def test_verify_unattainable_tolerance_fails_controlled(tmp_path):
    cfg = _write(tmp_path, "[tolerances]\nquadrature_agreement = 1e-20\n")
    out = tmp_path / "out"
    result = CliRunner().invoke(main, ["verify", "--config", str(cfg), "--out", str(out)])
    assert result.exit_code == 1
    report = json.loads((out / "report.json").read_text())
    failing = [c for c in report["checks"] if not c["passed"]]
    assert [c["name"] for c in failing] == ["quadrature_agreement"]
    assert failing[0]["measured"] > failing[0]["tolerance"]
