"""
Run configuration files.

Grammar (see docs/CONFIG.md):

    # comment
    section.key = value
    key = value            (allowed when key exists in exactly one section)

Values are integers, floats, true/false, or strings (optionally in double
quotes). Unknown sections or keys are errors; every omitted key keeps its
default.
"""

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Tuple, Union

from agent.dqn import AgentConfig
from errors import ConfigError
from pong.env import EnvConfig
from trainer.config import TrainConfig
from trainer.curriculum import CurriculumConfig

# Set from train.combine_mode; not a key of its own.
_DERIVED = {("agent", "combine_mode")}


@dataclass(frozen=True)
class RunConfig:
    env: EnvConfig = field(default_factory=EnvConfig)
    agent: AgentConfig = field(default_factory=AgentConfig)
    curriculum: CurriculumConfig = field(default_factory=CurriculumConfig)
    train: TrainConfig = field(default_factory=TrainConfig)

    def __post_init__(self):
        if self.agent.combine_mode is not self.train.combine_mode:
            object.__setattr__(
                self, "agent", dataclasses.replace(self.agent, combine_mode=self.train.combine_mode)
            )

    def validate(self) -> "RunConfig":
        self.env.validate()
        self.agent.validate()
        self.curriculum.validate()
        self.train.validate()
        return self

    def with_seed(self, seed: int) -> "RunConfig":
        return dataclasses.replace(self, train=dataclasses.replace(self.train, seed=seed))


SECTIONS: Dict[str, type] = {
    "env": EnvConfig,
    "agent": AgentConfig,
    "curriculum": CurriculumConfig,
    "train": TrainConfig,
}


def _keys(section: str) -> List[dataclasses.Field]:
    return [f for f in dataclasses.fields(SECTIONS[section]) if (section, f.name) not in _DERIVED]


def _bare_key_index() -> Dict[str, List[str]]:
    index: Dict[str, List[str]] = {}
    for section in SECTIONS:
        for f in _keys(section):
            index.setdefault(f.name, []).append(section)
    return index


def _kind(f: dataclasses.Field) -> type:
    """Declared type of a config field, falling back to its default's type."""
    return f.type if isinstance(f.type, type) else type(f.default)


def _convert(raw: str, kind: type, name: str, line: int):
    text = raw.strip()
    unquoted = text[1:-1] if len(text) >= 2 and text[0] == text[-1] == '"' else text
    try:
        if kind is bool:
            if unquoted.lower() not in ("true", "false"):
                raise ValueError(f"expected true or false, got '{text}'")
            return unquoted.lower() == "true"
        if issubclass(kind, Enum):
            enum_type = kind
            try:
                return enum_type(unquoted.lower())
            except ValueError:
                choices = ", ".join(member.value for member in enum_type)
                raise ValueError(f"expected one of {choices}, got '{unquoted}'") from None
        if kind is int:
            return int(unquoted)
        if kind is float:
            return float(unquoted)
        return unquoted
    except ValueError as e:
        raise ConfigError(f"{name}: {e}", field=name, line=line) from None


def parse_config(text: str) -> RunConfig:
    """
    Parse and validate config text.

    Raises:
        ConfigError: With the offending line and field
    """
    bare = _bare_key_index()
    values: Dict[str, Dict[str, object]] = {section: {} for section in SECTIONS}
    seen: Dict[Tuple[str, str], int] = {}

    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got '{stripped}'", line=number)
        key, _, raw = stripped.partition("=")
        key = key.strip()

        if "." in key:
            section, _, name = key.partition(".")
            if section not in SECTIONS:
                raise ConfigError(f"unknown section '{section}'", field=key, line=number)
        else:
            sections = bare.get(key, [])
            if len(sections) > 1:
                raise ConfigError(
                    f"key '{key}' is ambiguous; write one of "
                    + ", ".join(f"{s}.{key}" for s in sections), field=key, line=number,
                )
            if not sections:
                raise ConfigError(f"unknown key '{key}'", field=key, line=number)
            section, name = sections[0], key

        known = {f.name: f for f in _keys(section)}
        if name not in known:
            raise ConfigError(f"unknown key '{section}.{name}'", field=f"{section}.{name}", line=number)
        if (section, name) in seen:
            raise ConfigError(
                f"'{section}.{name}' already set on line {seen[(section, name)]}",
                field=f"{section}.{name}", line=number,
            )
        seen[(section, name)] = number
        values[section][name] = _convert(raw, _kind(known[name]), f"{section}.{name}", number)

    config = RunConfig(**{section: SECTIONS[section](**values[section]) for section in SECTIONS})
    return config.validate()


def load_config(path: Union[str, Path]) -> RunConfig:
    """
    Raises:
        ConfigError: Parse or validation failure
        OSError: File cannot be read
    """
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return f'"{value.value}"'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    return f'"{value}"'


def dump_config(config: RunConfig) -> str:
    """Canonical text: every key, in declaration order, one section block each."""
    lines = ["# gaze-pong run configuration"]
    for section in SECTIONS:
        lines.append("")
        current = getattr(config, section)
        for f in _keys(section):
            lines.append(f"{section}.{f.name} = {_format(getattr(current, f.name))}")
    return "\n".join(lines) + "\n"


def save_config(path: Union[str, Path], config: RunConfig) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_config(config), encoding="utf-8")
    return path
