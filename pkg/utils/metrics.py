from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional
from utils.logging_config import logger


@dataclass
class SearchMetrics:
    shards_done: int = 0
    shards_resumed: int = 0
    covers_count: int = 0
    records_count: int = 0
    not_special_count: int = 0
    inconclusive_count: int = 0
    errors_count: int = 0
    start_time: Optional[datetime] = field(default_factory=datetime.now)
    end_time: Optional[datetime] = None

    @property
    def duration_seconds(self) -> Optional[float]:
        if self.start_time and self.end_time:
            return (self.end_time - self.start_time).total_seconds()
        return None

    def mark_shard(self, covers: int, records: int, resumed: bool = False) -> None:
        self.shards_done += 1
        if resumed:
            self.shards_resumed += 1
        self.covers_count += covers
        self.records_count += records

    def mark_verdict(self, verdict: str) -> None:
        if verdict == "NOT_SPECIAL":
            self.not_special_count += 1
        else:
            self.inconclusive_count += 1

    def mark_error(self) -> None:
        self.errors_count += 1

    def finish(self) -> None:
        self.end_time = datetime.now()

    def log_summary(self) -> None:
        self.finish()
        duration = self.duration_seconds

        logger.info("=" * 60)
        logger.info("Enumeration Summary:")
        logger.info(f"  Shards: {self.shards_done} ({self.shards_resumed} resumed)")
        logger.info(f"  Covers: {self.covers_count}")
        logger.info(f"  Records: {self.records_count}")
        logger.info(f"  NOT_SPECIAL: {self.not_special_count}")
        logger.info(f"  INCONCLUSIVE: {self.inconclusive_count}")
        logger.info(f"  Errors: {self.errors_count}")
        if duration:
            logger.info(f"  Duration: {duration:.2f} seconds")
        logger.info("=" * 60)
