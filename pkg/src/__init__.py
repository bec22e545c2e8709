"""
gaze-pong - partially observable Pong testbed.

A DQN agent picks both a paddle move and which third of the screen it sees
next; instrumentation records where it learns to look.
"""

__version__ = "0.1.0"
