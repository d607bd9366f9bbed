# app/core/db.py
from functools import lru_cache

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import sessionmaker, declarative_base, Session

from app.core.config import get_settings

Base = declarative_base()


def make_engine(url: str) -> Engine:
    return create_engine(
        url,
        future=True,
        pool_pre_ping=True,
    )


@lru_cache
def get_engine() -> Engine:
    return make_engine(get_settings().database_url)


def make_session_factory(engine: Engine) -> sessionmaker:
    return sessionmaker(
        autocommit=False,
        autoflush=False,
        bind=engine,
        class_=Session,
    )


def init_db(engine: Engine) -> None:
    # register tables on Base before create_all
    import app.models.bench_record_row  # noqa: F401

    Base.metadata.create_all(engine)


def get_db():
    engine = get_engine()
    init_db(engine)
    db = make_session_factory(engine)()
    try:
        yield db
    finally:
        db.close()
