"""
Worker Pool
===========
Ordered map over work items; a process pool when more than one worker is
requested, the plain built-in map otherwise.
"""

from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from typing import Callable, Iterable, List, Optional, TypeVar

from loguru import logger

from core.exceptions import DisorderWalkError, EnsembleError

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Context manager returning results in submission order."""

    def __init__(self, workers: int):
        self.workers = max(1, int(workers))
        self._executor: Optional[ProcessPoolExecutor] = None

    def __enter__(self) -> "WorkerPool":
        if self.workers > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.workers)
            logger.debug(f"Started process pool with {self.workers} workers")
        return self

    def __exit__(self, exc_type, exc, tb):
        if self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=exc_type is not None)
            self._executor = None
        return False

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        if self._executor is None:
            return [fn(item) for item in items]
        try:
            return list(self._executor.map(fn, items))
        except DisorderWalkError:
            raise
        except BrokenProcessPool as e:
            raise EnsembleError(f"worker process died: {e}")
        except Exception as e:
            logger.error(f"Worker failure: {e}")
            raise EnsembleError(str(e))
