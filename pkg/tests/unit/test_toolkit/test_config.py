"""
Unit tests for run configuration files.

Tests verify that:
1. An empty file yields all defaults
2. Values are parsed by declared type (enums, bools, ints, floats, strings)
3. Unknown, duplicate and malformed lines are rejected with their line number
4. Validation errors name the offending field
5. dump_config/parse_config round-trip and match configs/default.cfg
"""

import pytest

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))

CONFIGS_DIR = Path(__file__).parent.parent.parent.parent / "configs"


class TestParseConfig:
    """Test suite for parse_config."""

    def test_empty_is_default(self):
        """Comments and blank lines only give the default config."""
        from toolkit.config import RunConfig, parse_config

        assert parse_config("# nothing here\n\n") == RunConfig()

    def test_mask_family(self):
        """mask_family accepts quoted and unquoted names in any case."""
        from observe.masks import MaskFamily
        from toolkit.config import parse_config

        for text in ('train.mask_family = horizontal', 'train.mask_family = "Horizontal"'):
            assert parse_config(text).train.mask_family is MaskFamily.HORIZONTAL

    def test_bare_key(self):
        """A key unique to one section may omit the section."""
        from toolkit.config import parse_config

        assert parse_config("gamma = 0.9").agent.gamma == 0.9

    def test_declared_types(self):
        """Integers in float fields become floats; bools parse true/false."""
        from toolkit.config import parse_config

        config = parse_config("env.paddle_speed = 3\ncurriculum.enabled = false\ntrain.seed = 7")

        assert isinstance(config.env.paddle_speed, float) and config.env.paddle_speed == 3.0
        assert config.curriculum.enabled is False
        assert config.train.seed == 7

    def test_combine_mode_follows_train(self):
        """train.combine_mode also sets the agent's mode."""
        from agent.actions import CombineMode
        from toolkit.config import parse_config

        config = parse_config('train.combine_mode = "independent_branch"')

        assert config.train.combine_mode is CombineMode.INDEPENDENT_BRANCH
        assert config.agent.combine_mode is CombineMode.INDEPENDENT_BRANCH

    def test_gamma_out_of_range(self):
        """agent.gamma = 1.5 fails validation naming agent.gamma."""
        from errors import ConfigError
        from toolkit.config import parse_config

        with pytest.raises(ConfigError) as info:
            parse_config("agent.gamma = 1.5")
        assert info.value.field == "agent.gamma"

    def test_unknown_key(self):
        """Unknown keys are errors carrying the line number."""
        from errors import ConfigError
        from toolkit.config import parse_config

        with pytest.raises(ConfigError) as info:
            parse_config("# header\nagent.gamma = 0.9\nagent.momentum = 0.5\n")
        assert info.value.line == 3
        assert info.value.field == "agent.momentum"
        assert str(info.value).startswith("line 3: ")

    def test_derived_key_not_settable(self):
        """agent.combine_mode is not a config key of its own."""
        from errors import ConfigError
        from toolkit.config import parse_config

        with pytest.raises(ConfigError):
            parse_config('agent.combine_mode = "flatten_sum"')

    def test_unknown_section(self):
        """Unknown sections are errors."""
        from errors import ConfigError
        from toolkit.config import parse_config

        with pytest.raises(ConfigError) as info:
            parse_config("model.depth = 3")
        assert info.value.line == 1

    def test_duplicate_key(self):
        """Setting a key twice is an error on the second line."""
        from errors import ConfigError
        from toolkit.config import parse_config

        with pytest.raises(ConfigError) as info:
            parse_config("train.seed = 1\ntrain.seed = 2")
        assert info.value.line == 2

    @pytest.mark.parametrize("text", [
        "train.seed",
        "train.seed = one",
        "curriculum.enabled = yes",
        'train.mask_family = "diagonal"',
    ])
    def test_malformed_values(self, text):
        """Lines without '=' or with unparsable values are rejected."""
        from errors import ConfigError
        from toolkit.config import parse_config

        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.line == 1


class TestDumpConfig:
    """Test suite for dump_config and the shipped config files."""

    def test_round_trip(self, smoke_config):
        """Parsing the dump gives back the same config."""
        from toolkit.config import dump_config, parse_config

        assert parse_config(dump_config(smoke_config)) == smoke_config

    def test_default_file_is_canonical(self):
        """configs/default.cfg is exactly the dump of the defaults."""
        from toolkit.config import RunConfig, dump_config

        assert (CONFIGS_DIR / "default.cfg").read_text(encoding="utf-8") == dump_config(RunConfig())

    def test_smoke_config(self, smoke_config):
        """configs/smoke.cfg selects the tiny network and short episodes."""
        assert smoke_config.agent.architecture == "tiny"
        assert smoke_config.env.points_to_win == 3
        assert smoke_config.train.total_episodes == 10

    def test_save_and_load(self, tmp_path, smoke_config):
        """save_config writes a file load_config reads back."""
        from toolkit.config import load_config, save_config

        path = save_config(tmp_path / "nested" / "run.cfg", smoke_config)

        assert load_config(path) == smoke_config

    def test_with_seed(self):
        """with_seed changes only the run seed."""
        from toolkit.config import RunConfig

        config = RunConfig().with_seed(9)

        assert config.train.seed == 9
        assert config.agent == RunConfig().agent
