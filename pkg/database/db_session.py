from sqlalchemy.ext.asyncio import create_async_engine, AsyncSession
from sqlalchemy.orm import sessionmaker
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Dict, List
from hecke import utils
from sqlalchemy import select, text
from .models import Base, CheckRecord, VerificationRun
import config

def _settings():
    return config.settings

def get_db_url():
    settings = _settings()
    if settings.DB_DIALECT == "sqlite":
        path = settings.SQLITE_PATH or str(config.PROJECT_ROOT / "hecke_lab.db")
        return f"sqlite+aiosqlite:///{path}"
    elif settings.DB_DIALECT == "mysql":
        return f"mysql+asyncmy://{settings.DB_USER}:{settings.DB_PASSWORD}@{settings.DB_HOST}:{settings.DB_PORT}/{settings.DB_NAME}"
    elif settings.DB_DIALECT == "postgresql":
        return f"postgresql+asyncpg://{settings.DB_USER}:{settings.DB_PASSWORD}@{settings.DB_HOST}:{settings.DB_PORT}/{settings.DB_NAME}"
    else:
        raise ValueError(f"Unsupported database dialect: {settings.DB_DIALECT}")

def get_server_url_without_db():
    settings = _settings()
    if settings.DB_DIALECT == "mysql":
        return f"mysql+asyncmy://{settings.DB_USER}:{settings.DB_PASSWORD}@{settings.DB_HOST}:{settings.DB_PORT}"
    elif settings.DB_DIALECT == "postgresql":
        # Connect to default 'postgres' db
        return f"postgresql+asyncpg://{settings.DB_USER}:{settings.DB_PASSWORD}@{settings.DB_HOST}:{settings.DB_PORT}/postgres"
    else:
        raise ValueError("Unsupported dialect")

async def create_database_if_not_exists():
    """Creates the database if it doesn't exist (sqlite creates its file on connect)."""
    settings = _settings()
    if settings.DB_DIALECT == "sqlite":
        path = settings.SQLITE_PATH
        if path:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
        return

    server_url = get_server_url_without_db()
    if settings.DB_DIALECT == "mysql":
        engine = create_async_engine(server_url, echo=False)
        async with engine.connect() as conn:
            await conn.execute(text(f"CREATE DATABASE IF NOT EXISTS {settings.DB_NAME}"))
        await engine.dispose()

    elif settings.DB_DIALECT == "postgresql":
        engine = create_async_engine(server_url, echo=False, isolation_level="AUTOCOMMIT")
        async with engine.connect() as conn:
            result = await conn.execute(
                text(f"SELECT 1 FROM pg_database WHERE datname = '{settings.DB_NAME}'")
            )
            if not result.scalar():
                await conn.execute(text(f"CREATE DATABASE {settings.DB_NAME}"))
        await engine.dispose()

async def init_db():
    """Initializes the database and creates tables."""
    await create_database_if_not_exists()

    engine = create_async_engine(get_db_url(), echo=False)
    async with engine.begin() as conn:
        await conn.run_sync(Base.metadata.create_all)
    await engine.dispose()

@asynccontextmanager
async def get_session() -> AsyncSession:
    """Provides a transactional scope around a series of operations."""
    engine = create_async_engine(get_db_url(), echo=False)
    AsyncSessionFactory = sessionmaker(engine, class_=AsyncSession, expire_on_commit=False)
    session = AsyncSessionFactory()
    try:
        yield session
        await session.commit()
    except Exception as e:
        await session.rollback()
        raise e
    finally:
        await session.close()
        await engine.dispose()

async def save_report(report, command: str, target: str = "") -> int:
    """Persist a VerificationReport with one row per check; returns the run id."""
    await init_db()
    async with get_session() as session:
        run = VerificationRun(
            command=command,
            target=target,
            seed=report.seed,
            check_count=len(report.checks),
            failures=report.failures,
            passed=1 if report.passed else 0,
            add_ts=utils.get_current_timestamp(),
        )
        session.add(run)
        await session.flush()
        for check in report.checks:
            session.add(CheckRecord(
                run_id=run.id,
                check_name=check.check,
                model=check.model,
                cases=check.cases,
                failures=check.failures,
                detail=check.detail,
            ))
        return run.id

async def load_runs(limit: int = 10) -> List[Dict]:
    """Most recent runs first, each with its check rows."""
    await init_db()
    async with get_session() as session:
        runs = (await session.execute(
            select(VerificationRun).order_by(VerificationRun.id.desc()).limit(limit)
        )).scalars().all()
        out = []
        for run in runs:
            checks = (await session.execute(
                select(CheckRecord).where(CheckRecord.run_id == run.id).order_by(CheckRecord.id)
            )).scalars().all()
            out.append({
                'id': run.id,
                'command': run.command,
                'target': run.target,
                'seed': run.seed,
                'failures': run.failures,
                'passed': bool(run.passed),
                'checks': [
                    {'check': c.check_name, 'model': c.model, 'cases': c.cases, 'failures': c.failures, 'detail': c.detail}
                    for c in checks
                ],
            })
        return out
