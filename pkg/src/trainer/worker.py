"""
EvaluationWorker - one shard of an evaluation on its own thread.

evaluate() deals episode indices round-robin to the workers; each worker plays
its shard against the same frozen parameter snapshot and hands the outcomes
back through callbacks. Seeds depend only on the episode index, so the merged
result does not depend on how the shards were dealt.
"""

import threading
from typing import Callable, List, Optional, Sequence

Callback = Optional[Callable[..., None]]


class EvaluationWorker:
    """
    Plays a shard of evaluation episodes on a daemon thread.

    Callbacks:
        on_result(outcomes): the shard's outcomes, in shard order, if every episode finished
        on_error(exc): the first exception raised; the rest of the shard is skipped
        on_finished(): always, last

    Usage:
        shard = EvaluationWorker(range(1, 10, 3), play)
        shard.start(on_result=outcomes.extend, on_error=failures.append)
        shard.join()
    """

    def __init__(self, episodes: Sequence[int], play: Callable[[int], object]):
        self.episodes: List[int] = list(episodes)
        self.play = play
        self.thread: Optional[threading.Thread] = None

    def start(self, on_result: Callback = None, on_error: Callback = None, on_finished: Callback = None):
        self.thread = threading.Thread(
            target=self._play_shard, args=(on_result, on_error, on_finished), daemon=True,
        )
        self.thread.start()

    def _play_shard(self, on_result: Callback, on_error: Callback, on_finished: Callback):
        try:
            outcomes = [self.play(episode) for episode in self.episodes]
        except Exception as e:
            if on_error:
                on_error(e)
        else:
            if on_result:
                on_result(outcomes)
        finally:
            if on_finished:
                on_finished()

    def join(self, timeout: Optional[float] = None):
        if self.thread is not None:
            self.thread.join(timeout)

    def is_running(self) -> bool:
        return self.thread is not None and self.thread.is_alive()
