"""
Agent package.

Branching DQN over the combined game x gaze action space:
- actions: combined action encoding, Q fusion, epsilon-greedy selection
- qnetwork: shared backbone with game and mask heads
- replay: bounded replay memory
- dqn: TD targets, learning step, DQNAgent
"""

from agent.actions import (
    CombinedAction,
    CombineMode,
    QOutput,
    combined_q,
    decode_action,
    encode_action,
    select_action,
)
from agent.dqn import AgentConfig, DQNAgent, epsilon_at, learn_step, sync_target, td_targets
from agent.qnetwork import ARCHITECTURES, init_params, q_forward
from agent.replay import ReplayBuffer, Transition

__all__ = [
    'ARCHITECTURES', 'AgentConfig', 'CombineMode', 'CombinedAction',
    'DQNAgent', 'QOutput', 'ReplayBuffer', 'Transition', 'combined_q', 'decode_action',
    'encode_action', 'epsilon_at', 'init_params', 'learn_step', 'q_forward', 'select_action',
    'sync_target', 'td_targets',
]
