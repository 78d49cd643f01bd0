import asyncio
import signal
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Set

from catalog.operations import parse_record, serialize_record, write_catalog
from search.enumerate import SearchSpec, Shard, shards
from search.shards import ShardResult, merge_results, process_shard
from utils.errors import InternalError
from utils.logging_config import logger
from utils.metrics import SearchMetrics
from utils.shard_state import load_shard, progress_dir, save_shard


def _ignore_signals() -> None:
    # the parent owns shutdown; workers finish their shard
    signal.signal(signal.SIGINT, signal.SIG_IGN)


def _executor(workers: int) -> Executor:
    if workers > 1:
        return ProcessPoolExecutor(max_workers=workers, initializer=_ignore_signals)
    return ThreadPoolExecutor(max_workers=1)


def _load_results(spec: SearchSpec, directory: Path, all_shards: List[Shard]) -> List[ShardResult]:
    results = []
    for shard in all_shards:
        loaded = load_shard(directory, shard.name, spec.search_id())
        if loaded is None:
            raise InternalError("INTERNAL_SHARD_MISSING", f"shard {shard.name} has no completion marker")
        covers, lines = loaded
        results.append(ShardResult(shard, covers, [parse_record(line) for line in lines]))
    return results


async def run_enumeration(
    spec: SearchSpec,
    out_path: Path,
    resume: bool = False,
    stop_event: Optional[asyncio.Event] = None
) -> bool:
    """
    Enumerate every shard of `spec` and write the sorted catalog to `out_path`.

    Shard results go to the progress directory first; the catalog is built
    from those files once every shard has a marker, so the output does not
    depend on the number of workers or on resumption.

    Returns:
        True if the catalog was written, False if the run was stopped early
    """
    spec.validate()
    metrics = SearchMetrics()
    directory = progress_dir(out_path)
    directory.mkdir(parents=True, exist_ok=True)
    all_shards = shards(spec)
    search_id = spec.search_id()

    todo: List[Shard] = []
    for shard in all_shards:
        loaded = load_shard(directory, shard.name, search_id) if resume else None
        if loaded is not None:
            covers, lines = loaded
            metrics.mark_shard(len(covers), len(lines), resumed=True)
        else:
            todo.append(shard)

    logger.info(
        f"Enumerating N={spec.modulus} m={spec.rows} s=[{spec.cols_min},{spec.cols_max}] "
        f"level={spec.level.value}: {len(todo)} shards to run, "
        f"{len(all_shards) - len(todo)} resumed, {spec.workers} workers"
    )

    loop = asyncio.get_running_loop()
    pending: Dict[asyncio.Future, Shard] = {}
    queue = list(todo)
    stopped = False

    with _executor(spec.workers) as executor:
        try:
            while queue or pending:
                if stop_event and stop_event.is_set() and not stopped:
                    logger.info("Stop signal received, finishing running shards")
                    stopped = True

                while queue and not stopped and len(pending) < spec.workers:
                    shard = queue.pop(0)
                    future = loop.run_in_executor(executor, process_shard, spec, shard)
                    pending[future] = shard

                if not pending:
                    break

                done: Set[asyncio.Future]
                done, _ = await asyncio.wait(
                    pending, timeout=0.5, return_when=asyncio.FIRST_COMPLETED
                )
                for future in done:
                    shard = pending.pop(future)
                    result: ShardResult = future.result()
                    lines = [serialize_record(r) for r in result.records]
                    save_shard(directory, shard.name, result.covers, lines, search_id)
                    metrics.mark_shard(len(result.covers), len(lines))
                    logger.info(
                        f"Shard {shard.name} done: {len(result.covers)} covers, {len(lines)} records"
                    )

        except Exception as e:
            logger.error(f"Enumeration failed: {e}", exc_info=True)
            metrics.mark_error()
            for future in pending:
                future.cancel()
            raise

    if stopped:
        logger.info(f"Run stopped with {len(queue)} shards left; rerun with --resume")
        metrics.log_summary()
        return False

    total_covers, records = merge_results(spec, _load_results(spec, directory, all_shards))
    for record in records:
        metrics.mark_verdict(record.verdict)
    write_catalog(out_path, (serialize_record(r) for r in records), total_covers)
    metrics.log_summary()
    return True
