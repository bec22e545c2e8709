"""
Binary checkpoint format.

Layout (all little-endian, see docs/CHECKPOINT.md):

    header   magic "OPDQ" | version u32 | seed i64 | phase u8 | family u8 |
             episode u32 | total_steps u64 | adam_t u64 | record count u32
    records  name_len u32 | name utf-8 | rank u32 | dims u32 x rank |
             float32 payload

Record names carry a group prefix: online/, target/, adam_m/, adam_v/.
"""

import io
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Union

import numpy as np

from agent.qnetwork import architecture_for
from errors import (
    BadMagicError,
    CheckpointError,
    CheckpointShapeError,
    TruncatedCheckpointError,
    VersionMismatchError,
)
from neuralnet.network import NetParams
from neuralnet.optim import AdamState
from observe.masks import MaskFamily
from trainer.curriculum import Phase

MAGIC = b"OPDQ"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sIqBBIQQI")
_U32 = struct.Struct("<I")

_PHASE_CODES = {Phase.FULLY_OBSERVABLE: 0, Phase.OCCLUDED: 1}
_FAMILY_CODES = {MaskFamily.HORIZONTAL: 0, MaskFamily.VERTICAL: 1}

GROUPS = ("online", "target", "adam_m", "adam_v")


@dataclass(eq=False)
class CheckpointBlob:
    """Everything needed to resume a run (except the replay buffer)."""

    seed: int
    phase: Phase
    family: MaskFamily
    episode: int
    total_steps: int
    online: NetParams
    target: NetParams
    adam: AdamState

    def groups(self) -> Dict[str, NetParams]:
        return {"online": self.online, "target": self.target, "adam_m": self.adam.m, "adam_v": self.adam.v}


def encode_checkpoint(blob: CheckpointBlob) -> bytes:
    groups = blob.groups()
    buffer = io.BytesIO()
    count = sum(len(params) for params in groups.values())
    buffer.write(_HEADER.pack(
        MAGIC, FORMAT_VERSION, blob.seed, _PHASE_CODES[blob.phase], _FAMILY_CODES[blob.family],
        blob.episode, blob.total_steps, blob.adam.t, count,
    ))
    for group in GROUPS:
        params = groups[group]
        for name in sorted(params):
            value = np.ascontiguousarray(params[name], dtype="<f4")
            encoded = f"{group}/{name}".encode("utf-8")
            buffer.write(_U32.pack(len(encoded)))
            buffer.write(encoded)
            buffer.write(_U32.pack(value.ndim))
            buffer.write(struct.pack(f"<{value.ndim}I", *value.shape))
            buffer.write(value.tobytes())
    return buffer.getvalue()


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def unpack(self, fmt: Union[str, struct.Struct]) -> tuple:
        fmt = fmt if isinstance(fmt, struct.Struct) else struct.Struct(fmt)
        if self.offset + fmt.size > len(self.data):
            raise TruncatedCheckpointError(f"checkpoint ends at byte {len(self.data)} inside a record")
        values = fmt.unpack_from(self.data, self.offset)
        self.offset += fmt.size
        return values

    @property
    def remaining(self) -> int:
        return len(self.data) - self.offset

    def take(self, size: int) -> bytes:
        if self.offset + size > len(self.data):
            raise TruncatedCheckpointError(f"checkpoint ends at byte {len(self.data)} inside a record")
        chunk = self.data[self.offset:self.offset + size]
        self.offset += size
        return chunk


def decode_checkpoint(data: bytes) -> CheckpointBlob:
    """
    Raises:
        BadMagicError, VersionMismatchError, TruncatedCheckpointError,
        CheckpointShapeError, CheckpointError
    """
    if len(data) < len(MAGIC) or data[:len(MAGIC)] != MAGIC:
        raise BadMagicError("not a checkpoint file (bad magic)")
    if len(data) >= 8:
        version = _U32.unpack_from(data, 4)[0]
        if version != FORMAT_VERSION:
            raise VersionMismatchError(
                f"checkpoint format version {version} is not supported (expected {FORMAT_VERSION})"
            )

    reader = _Reader(data)
    _, _, seed, phase_code, family_code, episode, total_steps, adam_t, count = reader.unpack(_HEADER)
    phases = {code: phase for phase, code in _PHASE_CODES.items()}
    families = {code: family for family, code in _FAMILY_CODES.items()}
    if phase_code not in phases or family_code not in families:
        raise CheckpointError(f"unknown phase/family code {phase_code}/{family_code}")

    groups: Dict[str, NetParams] = {group: {} for group in GROUPS}
    for _ in range(count):
        (name_len,) = reader.unpack(_U32)
        try:
            full_name = reader.take(name_len).decode("utf-8")
        except UnicodeDecodeError as e:
            raise CheckpointError(f"record name is not utf-8: {e}") from e
        group, _, name = full_name.partition("/")
        if group not in groups or not name:
            raise CheckpointError(f"unexpected record '{full_name}'")
        (rank,) = reader.unpack(_U32)
        if 4 * rank > reader.remaining:
            raise TruncatedCheckpointError(f"record '{full_name}' claims rank {rank}, past the end of the file")
        dims = reader.unpack(f"<{rank}I")
        # Python ints: a corrupt dims field must not wrap around
        size = math.prod(dims)
        if 4 * size > reader.remaining:
            raise TruncatedCheckpointError(f"record '{full_name}' claims shape {dims}, past the end of the file")
        try:
            value = np.frombuffer(reader.take(4 * size), dtype="<f4").reshape(dims)
        except ValueError as e:
            raise CheckpointError(f"record '{full_name}' has unusable shape {dims}: {e}") from e
        groups[group][name] = value.astype(np.float32)
    if reader.offset != len(data):
        raise CheckpointError(f"{len(data) - reader.offset} trailing bytes after the last record")

    blob = CheckpointBlob(
        seed=seed,
        phase=phases[phase_code],
        family=families[family_code],
        episode=episode,
        total_steps=total_steps,
        online=groups["online"],
        target=groups["target"],
        adam=AdamState(m=groups["adam_m"], v=groups["adam_v"], t=adam_t),
    )
    validate_checkpoint(blob)
    return blob


def validate_checkpoint(blob: CheckpointBlob):
    """
    Check that all four groups hold the same tensors and fit a known architecture.

    Raises:
        CheckpointShapeError: On any mismatch
    """
    reference = {name: value.shape for name, value in blob.online.items()}
    for group, params in blob.groups().items():
        shapes = {name: value.shape for name, value in params.items()}
        if shapes != reference:
            raise CheckpointShapeError(f"'{group}' tensors do not match the online network")
    architecture_for(blob.online)


def save_checkpoint(path: Union[str, Path], blob: CheckpointBlob) -> Path:
    """Write atomically: temp file first, then replace."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_file = path.with_suffix(path.suffix + ".tmp")
    temp_file.write_bytes(encode_checkpoint(blob))
    temp_file.replace(path)
    return path


def load_checkpoint(path: Union[str, Path]) -> CheckpointBlob:
    return decode_checkpoint(Path(path).read_bytes())
