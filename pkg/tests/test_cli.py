"""
Test config parsing, the experiment runner and the command-line exit codes.
"""

import math

import pandas as pd
import pytest

from rdnlab.cli import ExperimentRunner, build_problem, load_config, main, parse_config
from rdnlab.cli.app import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, EXIT_OUTPUT
from rdnlab.core.errors import ConfigError
from rdnlab.hyperbolic import AdvectionProblem, BurgersProblem, ColorProblem, KinkProfile
from rdnlab.separation import ColorSeparation

ADVECTION = "[experiment]\nproblem = advection\n"


def write_config(tmp_path, text, name="config.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestConfig:
    """Test INI parsing and validation."""

    def test_defaults(self):
        """A problem name alone is a complete config."""
        config = parse_config(ADVECTION)
        assert config.problem == "advection"
        assert config.jobs == 1
        assert config.seed == 0
        assert config.grid.n_delta == 1024
        assert config.sweep.l_inv == [4, 8, 12]
        assert config.certificate.ns == [4, 8, 16, 32]
        assert config.schedule.times is None

    def test_lists_and_sections(self):
        """Comma lists are split; section values are validated."""
        config = parse_config(
            ADVECTION + "[schedule]\ntimes = 0.1, 0.2,0.5\n[sweep]\nbudgets = 2, 4\n[physics]\nprofile = kink\n"
        )
        assert config.schedule.times == [0.1, 0.2, 0.5]
        assert config.sweep.budgets == [2, 4]
        assert config.physics.profile == "kink"

    def test_inline_comments(self):
        """Trailing ; and # comments are stripped from values."""
        config = parse_config(
            ADVECTION + "[physics]\nprofile = step   ; step | kink\n[sweep]\nnorm = l2  # burgers only\n"
        )
        assert config.physics.profile == "step"
        assert config.sweep.norm == "l2"

    def test_overrides(self, tmp_path):
        """Command-line values replace [experiment] keys; None leaves them alone."""
        config = parse_config(ADVECTION + "jobs = 3\n", {"problem": "burgers", "jobs": None, "out": tmp_path})
        assert config.problem == "burgers"
        assert config.jobs == 3
        assert config.out == tmp_path

    @pytest.mark.parametrize(
        "text",
        [
            "[experiment]\njobs = 2\n",
            ADVECTION + "[plots]\ncolor = red\n",
            ADVECTION + "[grid]\nresolution = 10\n",
            ADVECTION + "[grid]\nn_delta = 8\n",
            ADVECTION + "[schedule]\ntimes = 0.1, -0.2\n",
            ADVECTION + "[sweep]\nl_inv = 4, 0\n",
            "[experiment]\nproblem = heat\n",
            "problem = advection\n",
        ],
    )
    def test_invalid(self, text):
        """Missing problems, unknown sections or keys and bad values are config errors."""
        with pytest.raises(ConfigError):
            parse_config(text)

    def test_error_names_key(self):
        """Validation messages carry the section and key."""
        with pytest.raises(ConfigError, match="grid.n_delta"):
            parse_config(ADVECTION + "[grid]\nn_delta = 8\n", source="bad.ini")

    def test_mu_grid(self):
        """Listed components form a Cartesian product with defaults filling the rest."""
        config = parse_config("[experiment]\nproblem = color\n[schedule]\nmu1 = 0.1, 0.2\nmu3 = 1, 2\n")
        grid = config.schedule.mu_grid((0.3, 2 * math.pi, math.pi))
        assert grid == [(0.1, 2 * math.pi, 1.0), (0.1, 2 * math.pi, 2.0), (0.2, 2 * math.pi, 1.0), (0.2, 2 * math.pi, 2.0)]
        assert parse_config(ADVECTION).schedule.mu_grid(()) is None
        with pytest.raises(ConfigError):
            parse_config(ADVECTION + "[schedule]\nmu1 = 0.1\n").schedule.mu_grid(())

    def test_load_config(self, tmp_path):
        """Unreadable files are config errors; no path means overrides only."""
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.ini")
        assert load_config(None, {"problem": "color"}).problem == "color"
        assert load_config(write_config(tmp_path, ADVECTION)).problem == "advection"


class TestRunner:
    """Test problem construction and schedules."""

    def test_build_problem(self):
        """Each manifold gets its problem class and defaults."""
        assert isinstance(build_problem(parse_config(ADVECTION)), AdvectionProblem)
        burgers = build_problem(parse_config("[experiment]\nproblem = burgers\n[physics]\nt_final = 2\n"))
        assert isinstance(burgers, BurgersProblem)
        assert burgers.t_final == 2.0
        color = build_problem(parse_config("[experiment]\nproblem = color\n[physics]\nprofile = kink\nlocation = 0.2\n"))
        assert isinstance(color, ColorProblem)
        assert isinstance(color.u0, KinkProfile)
        assert color.u0.x_kink == 0.2

    def test_schedules(self):
        """Explicit times win over time_count; budgets default per problem."""
        runner = ExperimentRunner(parse_config(ADVECTION + "[schedule]\ntime_count = 5\n"))
        assert runner.times() == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert runner.budgets() == [2, 4, 8, 16, 32, 64]
        assert runner.mus() == [()]
        runner = ExperimentRunner(parse_config(ADVECTION + "[schedule]\ntimes = 0.5\n"))
        assert runner.times() == [0.5]

    def test_kink_separation_and_exponents(self):
        """Kink data run color sweeps and claim alpha = 3/2, steps 1/2."""
        kink = ExperimentRunner(parse_config("[experiment]\nproblem = color\n[physics]\nprofile = kink\n"))
        assert isinstance(kink.experiment(), ColorSeparation)
        assert kink.alpha() == 1.5
        step = ExperimentRunner(parse_config("[experiment]\nproblem = color\n"))
        assert step.alpha() == 0.5
        bump = ExperimentRunner(parse_config("[experiment]\nproblem = color\n[physics]\nprofile = bump\n"))
        with pytest.raises(ConfigError):
            bump.alpha()
        override = "[experiment]\nproblem = color\n[physics]\nprofile = bump\n[certificate]\nalpha = 2\n"
        assert ExperimentRunner(parse_config(override)).alpha() == 2.0

    def test_burgers_norm_setting(self):
        """Burgers sweeps use L1 unless [sweep] norm says otherwise."""
        burgers = "[experiment]\nproblem = burgers\n"
        assert ExperimentRunner(parse_config(burgers)).experiment().norm == "l1"
        assert ExperimentRunner(parse_config(burgers + "[sweep]\nnorm = l2\n")).experiment().norm == "l2"
        with pytest.raises(ConfigError):
            parse_config(burgers + "[sweep]\nnorm = sup\n")

    def test_unknown_command(self, tmp_path):
        with pytest.raises(ConfigError):
            ExperimentRunner(parse_config(ADVECTION, {"out": tmp_path})).run("plot")


@pytest.mark.integration
class TestMain:
    """Test the command-line entry point end to end."""

    def test_snapshots_are_deterministic(self, tmp_path):
        """Two runs write byte-identical snapshot files."""
        config = write_config(tmp_path, ADVECTION + "[grid]\nn_delta = 64\n[schedule]\ntime_count = 8\n")
        for name in ("a", "b"):
            assert main(["snapshots", "--config", config, "--out", str(tmp_path / name)]) == EXIT_OK
        first = (tmp_path / "a" / "snapshots.csv").read_bytes()
        assert first == (tmp_path / "b" / "snapshots.csv").read_bytes()
        frame = pd.read_csv(tmp_path / "a" / "snapshots.csv")
        assert frame.shape == (64, 9)
        assert frame.columns[0] == "x"
        assert frame.columns[1] == "t=0.0;mu="

    def test_burgers_snapshots(self, tmp_path):
        """Burgers runs also write the shock path."""
        config = write_config(tmp_path, "[experiment]\nproblem = burgers\n[grid]\nn_delta = 64\n[schedule]\ntimes = 0.5, 1\n")
        assert main(["snapshots", "--config", config, "--out", str(tmp_path)]) == EXIT_OK
        path = pd.read_csv(tmp_path / "shock_path.csv")
        assert list(path.columns) == ["t", "x_s", "I_lo", "I_hi"]

    def test_color_snapshots(self, tmp_path):
        """Color runs also write the transport series with its interval."""
        config = write_config(tmp_path, "[experiment]\nproblem = color\n[grid]\nn_delta = 64\ncheb_degree = 8\n[schedule]\ntimes = 0.5\n")
        assert main(["snapshots", "--config", config, "--out", str(tmp_path)]) == EXIT_OK
        lines = (tmp_path / "transport_series.csv").read_text().splitlines()
        assert lines[0].startswith("# interval=")
        assert lines[1] == "m,coeff"
        assert len(lines) == 11

    def test_invnet_test(self, tmp_path):
        """The inverse self test writes one passing row per l_inv."""
        config = write_config(tmp_path, ADVECTION + "[sweep]\nl_inv = 4, 6\nnetworks = 3\npoints = 64\n")
        assert main(["invnet-test", "--config", config, "--out", str(tmp_path), "--seed", "7"]) == EXIT_OK
        frame = pd.read_csv(tmp_path / "invnet_test.csv")
        assert list(frame["l_inv"]) == [4, 6]
        assert frame["passed"].all()
        assert (frame["layers"] == frame["expected_layers"]).all()

    def test_certify(self, tmp_path):
        """Certificates write rows, a summary and a reproducible chart."""
        config = write_config(tmp_path, ADVECTION + "[certificate]\nns = 4, 8\n")
        for name in ("a", "b"):
            assert main(["certify", "--config", config, "--out", str(tmp_path / name)]) == EXIT_OK
        assert "result: PASS" in (tmp_path / "a" / "summary.txt").read_text()
        assert list(pd.read_csv(tmp_path / "a" / "certificate.csv")["N"]) == [4, 8]
        assert (tmp_path / "a" / "certificate.svg").read_bytes() == (tmp_path / "b" / "certificate.svg").read_bytes()

    def test_separation(self, tmp_path):
        """Separation writes the sweep table, a summary and a chart."""
        config = write_config(
            tmp_path, ADVECTION + "[grid]\nn_delta = 64\n[schedule]\ntime_count = 16\n[sweep]\nbudgets = 2, 4, 8, 16\n"
        )
        assert main(["separation", "--config", config, "--out", str(tmp_path)]) == EXIT_OK
        frame = pd.read_csv(tmp_path / "separation.csv")
        assert list(frame.columns) == ["M", "pod_error", "rdn_error"]
        assert list(frame["M"]) == [2, 4, 8, 16]
        assert (tmp_path / "separation_summary.txt").exists()
        assert (tmp_path / "separation.svg").read_text().lstrip().startswith("<?xml")

    def test_config_errors_exit_2(self, tmp_path):
        """Bad configs, bad problems and unsupported profiles exit with 2."""
        assert main(["snapshots", "--config", str(tmp_path / "missing.ini")]) == EXIT_CONFIG
        assert main(["snapshots", "--problem", "heat", "--out", str(tmp_path)]) == EXIT_CONFIG
        config = write_config(tmp_path, "[experiment]\nproblem = color\n[physics]\nprofile = bump\n")
        assert main(["separation", "--config", config, "--out", str(tmp_path)]) == EXIT_CONFIG
        config = write_config(tmp_path, ADVECTION + "[physics]\nprofile = kink\nlocation = 0.5\n", "advection.ini")
        assert main(["separation", "--config", config, "--out", str(tmp_path)]) == EXIT_CONFIG

    def test_numerical_failure_exits_3(self, tmp_path):
        """A Burgers budget without bisection steps fails numerically."""
        config = write_config(
            tmp_path, "[experiment]\nproblem = burgers\n[grid]\nn_delta = 64\n[schedule]\ntimes = 1\n[sweep]\nbudgets = 4\n"
        )
        assert main(["separation", "--config", config, "--out", str(tmp_path)]) == EXIT_NUMERICAL

    def test_output_error_exits_4(self, tmp_path):
        """An output path that is a file cannot be used."""
        blocker = tmp_path / "taken"
        blocker.write_text("", encoding="utf-8")
        assert main(["snapshots", "--problem", "advection", "--out", str(blocker)]) == EXIT_OUTPUT

    def test_unknown_command_is_usage_error(self):
        """argparse rejects unknown commands with exit status 2."""
        with pytest.raises(SystemExit) as info:
            main(["plot"])
        assert info.value.code == 2
