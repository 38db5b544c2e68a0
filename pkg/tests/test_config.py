"""
Tests for configuration, statistics, validators and logging setup.
"""

import json
import time

import pytest
import structlog
from pydantic import ValidationError

from symprobe import solve
from symprobe.config import SolverConfig, load_config
from symprobe.search.selector import CellSelectorPolicy
from symprobe.utils.logger import get_logger, setup_logging
from symprobe.utils.stats_tracker import SolverStatistics, StatisticsTracker
from symprobe.utils.validators import describe_validation_error, parse_threads_list


class TestSolverConfig:
    def test_defaults(self):
        config = SolverConfig()
        assert config.error_bound == 0.01
        assert config.threads >= 1
        assert config.cell_selector is CellSelectorPolicy.FIRST_LARGEST
        assert config.enable_base_aligned
        assert config.time_limit_seconds is None

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("SYMPROBE_ERROR_BOUND", "0.05")
        monkeypatch.setenv("SYMPROBE_THREADS", "3")
        monkeypatch.setenv("SYMPROBE_CELL_SELECTOR", "first_smallest")
        config = SolverConfig()
        assert config.error_bound == 0.05
        assert config.threads == 3
        assert config.cell_selector is CellSelectorPolicy.FIRST_SMALLEST

    def test_env_file(self, tmp_path):
        env = tmp_path / "solver.env"
        env.write_text("SYMPROBE_SEED=42\nSYMPROBE_LOG_LEVEL=info\n")
        config = load_config(env)
        assert config.seed == 42
        assert config.log_level == "INFO"

    def test_explicit_values_win(self, monkeypatch):
        monkeypatch.setenv("SYMPROBE_THREADS", "3")
        assert load_config(threads=5).threads == 5

    @pytest.mark.parametrize(
        "field, value",
        [
            ("error_bound", 0.0),
            ("error_bound", 1.0),
            ("threads", 0),
            ("seed", -1),
            ("seed", 1 << 64),
            ("time_limit_seconds", 0),
            ("log_level", "LOUD"),
            ("cell_selector", "biggest"),
        ],
    )
    def test_rejects_out_of_range_values(self, field, value):
        with pytest.raises(ValidationError):
            SolverConfig(**{field: value})

    def test_validation_errors_name_the_field(self):
        with pytest.raises(ValidationError) as info:
            SolverConfig(error_bound=2.0)
        assert describe_validation_error(info.value).startswith("error_bound:")


class TestThreadsList:
    def test_parse(self):
        assert parse_threads_list("1, 2,4") == [1, 2, 4]

    @pytest.mark.parametrize("text", ["", "0", "1,1", "a", "2,-1", "2,4"])
    def test_invalid(self, text):
        with pytest.raises(ValueError):
            parse_threads_list(text)


class TestStatisticsTracker:
    def test_counters(self):
        tracker = StatisticsTracker()
        tracker.increment("walks")
        tracker.increment("walks", 4)
        assert tracker.get("walks") == 5
        assert tracker.snapshot().walks == 5

    def test_unknown_counter(self):
        with pytest.raises(KeyError):
            StatisticsTracker().increment("teleports")

    def test_refinement_cost(self):
        tracker = StatisticsTracker()
        assert tracker.mean_refine_seconds() == 0.0
        tracker.record_refinements(4, 2.0)
        assert tracker.mean_refine_seconds() == 0.5
        assert tracker.snapshot().mean_refine_seconds == 0.5

    def test_mode_timer(self):
        tracker = StatisticsTracker()
        with tracker.mode_timer("bfs"):
            time.sleep(0.01)
        with tracker.mode_timer("bfs"):
            pass
        seconds = tracker.snapshot().mode_seconds
        assert set(seconds) == {"bfs"}
        assert seconds["bfs"] > 0.0

    def test_snapshot_serializes(self):
        data = json.loads(SolverStatistics(walks=3).model_dump_json())
        assert data["walks"] == 3
        assert data["mode_seconds"] == {}


class TestLogging:
    def test_setup_and_log(self, capsys):
        setup_logging("info")
        get_logger("symprobe.test").info("Sample event", answer=42)
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "Sample event" in captured.err

    def test_json_logs(self, capsys):
        setup_logging("DEBUG", json_logs=True)
        get_logger("symprobe.test").debug("Json event", level_index=3)
        line = capsys.readouterr().err.strip().splitlines()[-1]
        assert json.loads(line)["event"] == "Json event"

    def test_level_filters(self, capsys):
        setup_logging("ERROR")
        get_logger("symprobe.test").warning("Hidden event")
        assert "Hidden event" not in capsys.readouterr().err

    def test_log_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        setup_logging("INFO", log_file=log_file)
        assert log_file.parent.is_dir()

    def test_library_solve_logs_to_stderr_at_the_default_level(self, k3, capsys):
        structlog.reset_defaults()
        solve(k3, seed=1, threads=1)
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "Solve started" not in captured.err

    def test_library_solve_applies_the_configured_level(self, k3, capsys):
        structlog.reset_defaults()
        solve(k3, seed=1, threads=1, log_level="INFO", json_logs=True)
        captured = capsys.readouterr()
        assert captured.out == ""
        events = [json.loads(line)["event"] for line in captured.err.strip().splitlines()]
        assert "Solve started" in events
        assert "Abort sample" not in events

    def test_existing_configuration_is_kept(self, k3, capsys):
        setup_logging("ERROR")
        solve(k3, seed=1, threads=1, log_level="DEBUG")
        assert capsys.readouterr().err == ""
