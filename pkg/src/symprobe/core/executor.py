"""
Worker pool for walks and BFS chunks.

Each worker thread owns one RNG stream (index 1, 2, …); the coordinator
thread draws from stream 0.
"""

import threading
from concurrent.futures import FIRST_COMPLETED, Future, ThreadPoolExecutor, wait
from typing import Any, Callable, List, Optional, Sequence, Set, TypeVar

import numpy as np

from ..search.rng import RngStreams
from ..utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """
    Thread pool with per-thread random streams.

    Features:
    - Reproducible stream assignment by worker start order
    - Ordered chunked map for BFS
    - Bounded in-flight submission for walk loops
    """

    def __init__(self, threads: int, streams: RngStreams):
        """
        Args:
            threads: Number of worker threads
            streams: Stream factory of this solve
        """
        self.threads = threads
        self.streams = streams
        self._local = threading.local()
        self._index_lock = threading.Lock()
        self._next_index = 1
        self._executor = ThreadPoolExecutor(
            max_workers=threads,
            thread_name_prefix="symprobe-worker",
            initializer=self._init_worker,
        )

    def _init_worker(self) -> None:
        with self._index_lock:
            index = self._next_index
            self._next_index += 1
        self._local.index = index
        self._local.rng = self.streams.stream(index)

    def rng(self) -> np.random.Generator:
        """The calling thread's generator (stream 0 outside the pool)."""
        rng = getattr(self._local, "rng", None)
        if rng is None:
            rng = self.streams.stream(0)
            self._local.index = 0
            self._local.rng = rng
        return rng

    def submit(self, fn: Callable[..., R], *args: Any) -> "Future[R]":
        return self._executor.submit(fn, *args)

    def map_chunks(
        self,
        fn: Callable[[Sequence[T]], List[R]],
        items: Sequence[T],
        chunk_size: int,
    ) -> List[R]:
        """
        Apply ``fn`` to consecutive chunks of ``items`` in parallel.

        Returns:
            concatenated results, in item order
        """
        chunks = [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]
        futures = [self._executor.submit(fn, chunk) for chunk in chunks]
        results: List[R] = []
        for future in futures:
            results.extend(future.result())
        return results

    def run_until(
        self,
        next_task: Callable[[], Optional[Callable[[], R]]],
        on_result: Callable[[R], None],
    ) -> int:
        """
        Keep up to ``threads`` tasks in flight.

        ``next_task`` runs on the calling thread before every submission and
        returns the next task, or None to stop. After the first None no task
        is started; every in-flight task is still awaited and handed to
        ``on_result``.

        Returns:
            number of tasks completed
        """
        in_flight: Set["Future[R]"] = set()
        completed = 0
        stopping = False
        while True:
            while not stopping and len(in_flight) < self.threads:
                task = next_task()
                if task is None:
                    stopping = True
                    break
                in_flight.add(self._executor.submit(task))
            if not in_flight:
                return completed
            done, in_flight = wait(in_flight, return_when=FIRST_COMPLETED)
            for future in done:
                on_result(future.result())
                completed += 1

    def shutdown(self) -> None:
        self._executor.shutdown(wait=True, cancel_futures=True)

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, *exc: object) -> None:
        self.shutdown()
