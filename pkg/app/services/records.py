# app/services/records.py
from pathlib import Path
from typing import List, Optional, Protocol, Union

from pydantic import ValidationError
from sqlalchemy.engine import Engine

from app.core.db import init_db, make_engine, make_session_factory
from app.core.errors import MalformedRecord
from app.models.bench import BenchRecord
from app.models.bench_record_row import BenchRecordRow


class RecordSink(Protocol):
    def write(self, record: BenchRecord) -> None: ...


class JsonlRecordSink:
    """Append-only, one JSON object per line, flushed after every record."""

    def __init__(self, path: Union[str, Path]) -> None:
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = self.path.open("a", encoding="utf-8")

    def write(self, record: BenchRecord) -> None:
        self._fh.write(record.model_dump_json() + "\n")
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()

    def __enter__(self) -> "JsonlRecordSink":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


class DbRecordSink:
    """Mirror of the record stream into the ``bench_record`` table."""

    def __init__(self, url: Optional[str] = None, engine: Optional[Engine] = None) -> None:
        if engine is None:
            if url is None:
                raise ValueError("DbRecordSink needs a url or an engine")
            engine = make_engine(url)
        init_db(engine)
        self._session = make_session_factory(engine)()

    def write(self, record: BenchRecord) -> None:
        self._session.add(BenchRecordRow.from_record(record))
        self._session.commit()

    def close(self) -> None:
        self._session.close()


def parse_records(data: Union[str, bytes]) -> List[BenchRecord]:
    if isinstance(data, str):
        data = data.encode("utf-8")
    records = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise MalformedRecord(lineno, f"not UTF-8 at byte {e.start}") from None
        if not line.strip():
            continue
        try:
            records.append(BenchRecord.model_validate_json(line))
        except ValidationError as e:
            raise MalformedRecord(lineno, f"{e.error_count()} validation error(s)") from None
    return records


def read_records(path: Union[str, Path]) -> List[BenchRecord]:
    return parse_records(Path(path).read_bytes())
