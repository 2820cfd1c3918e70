import json
import logging
import os

import pytest

from src.config import Config, _int_env
from src.errors import BoundViolated, BudgetExceeded, InvalidInput, ToolkitError
from src.tools.chart_gen import ProfilePlotter
from src.tools.hodge_eulerian import eulerian_distribution, hodge_numbers
from src.utils.logger import RepeatedMessageFilter, get_logger, save_node_io, set_level


def test_int_env(monkeypatch):
    monkeypatch.setenv("NTW_TEST_INT", "1_000")
    assert _int_env("NTW_TEST_INT", 5) == 1000
    monkeypatch.setenv("NTW_TEST_INT", "lots")
    assert _int_env("NTW_TEST_INT", 5) == 5
    monkeypatch.delenv("NTW_TEST_INT")
    assert _int_env("NTW_TEST_INT", 5) == 5


def test_validate_settings(monkeypatch):
    assert Config.validate_settings() == []
    monkeypatch.setattr(Config, "THREADS", 0)
    monkeypatch.setattr(Config, "ENUMERATION_BUDGET", -1)
    problems = Config.validate_settings()
    assert len(problems) == 2
    assert any("NTW_THREADS" in p for p in problems)


def test_error_names_and_exit_codes():
    error = BudgetExceeded(5000, 100, "torus enumeration")
    assert isinstance(error, ToolkitError)
    assert error.name == "BudgetExceeded"
    assert (error.estimated, error.budget) == (5000, 100)
    assert "torus enumeration" in str(error)
    assert InvalidInput("x").exit_code == 1
    assert BoundViolated("x", degree=2).exit_code == 3


def test_logger_is_configured_once():
    logger = get_logger("src.test_logger")
    assert get_logger("src.test_logger") is logger
    assert len(logger.handlers) == 1
    set_level("ERROR")
    assert logger.level == logging.ERROR
    set_level(Config.LOG_LEVEL)


def test_repeated_messages_are_filtered():
    flt = RepeatedMessageFilter(max_seen=2)
    record = logging.LogRecord("src.x", logging.INFO, __file__, 1, "same", None, None)
    assert flt.filter(record)
    assert not flt.filter(record)
    warning = logging.LogRecord("src.x", logging.WARNING, __file__, 1, "same", None, None)
    assert flt.filter(warning) and flt.filter(warning)


def test_save_node_io(monkeypatch):
    assert save_node_io("weights", {"R": 3}, {"ok": True}) is None
    monkeypatch.setattr(Config, "DEBUG_IO", True)
    path = save_node_io("weights", {"R": 3}, {"ok": True})
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["node"] == "weights"
    assert data["input"] == {"R": 3}


def test_plots_are_written_to_output_dir(unit_square):
    plotter = ProfilePlotter()
    assert plotter.output_dir == os.path.join(Config.OUTPUT_DIR, "images")

    path = plotter.plot_distribution(eulerian_distribution(5))
    assert os.path.isfile(path)
    assert path.endswith("eulerian_n5_exact_rational.png")

    path = plotter.plot_hodge(hodge_numbers(unit_square, 2, (1, 1)), volume=2)
    assert os.path.isfile(path)


def test_plot_failure_returns_empty_path(tmp_path, monkeypatch):
    plotter = ProfilePlotter(str(tmp_path / "charts"))

    def broken(*args, **kwargs):
        raise RuntimeError("no canvas")

    monkeypatch.setattr("src.tools.chart_gen.plt.subplots", broken)
    assert plotter.plot_distribution(eulerian_distribution(3)) == ""


@pytest.mark.parametrize("value", ["1", "0"])
def test_budget_flag_is_positive(value):
    from src.cli import execute

    code, _ = execute(["--budget", value, "surface", "top-weight", "--sides", "2,3"])
    assert code == (0 if value == "1" else 2)
