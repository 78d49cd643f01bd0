import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from config import PROGRESS_SUFFIX
from utils.logging_config import logger

CoverEntry = Tuple[str, Tuple[int, ...]]
SearchId = Dict[str, Any]


def progress_dir(out_path: Path) -> Path:
    return Path(str(out_path) + PROGRESS_SUFFIX)


def load_shard(
    directory: Path,
    shard_name: str,
    search: Optional[SearchId] = None
) -> Optional[Tuple[List[CoverEntry], List[str]]]:
    """
    Covers and record lines of a finished shard, or None if it must be recomputed.

    A marker written for a different search (modulus, rows, flags, level or
    schema version, as given by `search`) counts as missing.
    """
    marker = directory / f"{shard_name}.done"
    if not marker.exists():
        return None

    try:
        with open(marker, "r", encoding="utf-8") as f:
            state = json.load(f)
        with open(directory / f"{shard_name}.jsonl", "r", encoding="utf-8") as f:
            lines = [line.rstrip("\n") for line in f if line.strip()]
    except Exception as e:
        logger.warning(f"Failed to load shard {shard_name}, it will be recomputed: {e}")
        return None

    if search is not None and state.get("search") != search:
        logger.warning(
            f"Shard {shard_name} belongs to another search {state.get('search')}, it will be recomputed"
        )
        return None

    if len(lines) != state.get("records"):
        logger.warning(f"Shard {shard_name} has {len(lines)} lines, marker says {state.get('records')}")
        return None

    covers = [(key, tuple(entries)) for key, entries in state["covers"]]
    return covers, lines


def save_shard(
    directory: Path,
    shard_name: str,
    covers: List[CoverEntry],
    lines: List[str],
    search: Optional[SearchId] = None
) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    data_path = directory / f"{shard_name}.jsonl"
    tmp_path = directory / f"{shard_name}.jsonl.tmp"

    with open(tmp_path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line + "\n")
    os.replace(tmp_path, data_path)

    # the marker is written last; its presence means the shard file is complete
    state = {
        "search": search,
        "covers": [[key, list(entries)] for key, entries in covers],
        "records": len(lines),
    }
    with open(directory / f"{shard_name}.done", "w", encoding="utf-8") as f:
        json.dump(state, f)
