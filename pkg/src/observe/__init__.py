"""
Observe package.

Turns raw Pong frames into what the agent sees:
- frames: area-average downsampling to 84x84
- masks: one-third occlusion masks and mask families
- stack: four-frame history with per-frame mask provenance
"""

from observe.frames import preprocess
from observe.masks import FRAME_SIZE, MaskFamily, MaskId, apply_mask, family_masks
from observe.stack import STACK_DEPTH, ObsStack, initial_stack, push_frame

__all__ = [
    'FRAME_SIZE', 'STACK_DEPTH', 'MaskFamily', 'MaskId', 'ObsStack',
    'apply_mask', 'family_masks', 'initial_stack', 'preprocess', 'push_frame',
]
