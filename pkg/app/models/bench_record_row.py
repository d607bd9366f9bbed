# app/models/bench_record_row.py

from sqlalchemy import Boolean, Column, Float, Integer, String, Text

from app.core.db import Base
from app.models.bench import BenchRecord


class BenchRecordRow(Base):
    __tablename__ = "bench_record"

    rid = Column(Integer, primary_key=True, autoincrement=True)
    solver = Column(String, nullable=False, index=True)
    n = Column(Integer, nullable=False)
    d = Column(Integer, nullable=False, index=True)
    sampler = Column(String, nullable=False)
    instance_seed = Column(String, nullable=False)  # 64-bit unsigned does not fit BIGINT
    solver_seed = Column(String, nullable=False)
    repetition = Column(Integer, nullable=False)
    alpha = Column(Integer, nullable=True)
    density = Column(Float, nullable=True)
    ar = Column(Float, nullable=True)
    valid = Column(Boolean, nullable=False)
    gen_time_s = Column(Float, nullable=True)
    solve_time_s = Column(Float, nullable=True)
    total_time_s = Column(Float, nullable=True)
    error = Column(String, nullable=True)
    version = Column(String, nullable=False)
    payload = Column(Text, nullable=False)

    @classmethod
    def from_record(cls, record: BenchRecord) -> "BenchRecordRow":
        return cls(
            solver=record.solver,
            n=record.n,
            d=record.d,
            sampler=record.sampler,
            instance_seed=str(record.instance_seed),
            solver_seed=str(record.solver_seed),
            repetition=record.repetition,
            alpha=record.alpha,
            density=record.density,
            ar=record.ar,
            valid=record.valid,
            gen_time_s=record.gen_time_s,
            solve_time_s=record.solve_time_s,
            total_time_s=record.total_time_s,
            error=record.error,
            version=record.version,
            payload=record.model_dump_json(),
        )

    def to_record(self) -> BenchRecord:
        return BenchRecord.model_validate_json(self.payload)
