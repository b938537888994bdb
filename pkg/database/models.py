from sqlalchemy import BigInteger, Column, ForeignKey, Integer, String, Text
from sqlalchemy.orm import declarative_base

Base = declarative_base()

class VerificationRun(Base):
    """One verify-all / verify-finite invocation"""
    __tablename__ = 'verification_run'
    id = Column(Integer, primary_key=True)
    command = Column(String(64), nullable=False, index=True)  # verify-all, verify-finite
    target = Column(String(255), default='')  # model key or file for verify-finite
    seed = Column(BigInteger, nullable=False)
    check_count = Column(Integer, default=0)
    failures = Column(Integer, default=0)
    passed = Column(Integer, default=1)
    add_ts = Column(BigInteger, index=True)

class CheckRecord(Base):
    __tablename__ = 'check_record'
    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('verification_run.id'), nullable=False, index=True)
    check_name = Column(String(128), nullable=False)
    model = Column(String(128), default='-')
    cases = Column(Integer, default=0)
    failures = Column(Integer, default=0)
    detail = Column(Text)
