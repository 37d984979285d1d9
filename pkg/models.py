import datetime
from flask_sqlalchemy import SQLAlchemy
from sqlalchemy import Column, Integer, String, Text, DateTime, Boolean, Float, JSON

db = SQLAlchemy()


class LawCheckRun(db.Model):
    __tablename__ = 'law_check_runs'

    id = Column(Integer, primary_key=True)
    law = Column(String(50), nullable=False)  # pre-lie, coassoc, antipode, ...
    coprod = Column(String(10), nullable=False)  # L, mu, S
    descriptor = Column(String(255), nullable=True)  # stable set, strong set or pairing
    alphabet = Column(String(100), nullable=True)
    sample = Column(Text, nullable=True)  # human readable sample description
    passed = Column(Boolean, nullable=False)
    checked = Column(Integer, nullable=False, default=0)
    seed = Column(Integer, nullable=True)
    elapsed = Column(Float, nullable=True)  # seconds
    counterexample = Column(JSON, nullable=True)
    created_at = Column(DateTime, default=datetime.datetime.utcnow)

    def __repr__(self):
        return f'<LawCheckRun {self.id}: {self.law}/{self.coprod} - {"pass" if self.passed else "fail"}>'

    @classmethod
    def from_report(cls, report, coprod, descriptor=None, alphabet=None):
        return cls(
            law=report.law,
            coprod=coprod,
            descriptor=descriptor,
            alphabet=alphabet,
            sample=report.sample,
            passed=report.passed,
            checked=report.checked,
            seed=report.seed,
            elapsed=report.elapsed,
            counterexample=report.counterexample,
        )

    def to_dict(self):
        """Convert the model instance to a dictionary"""
        return {
            'id': self.id,
            'law': self.law,
            'coprod': self.coprod,
            'descriptor': self.descriptor,
            'alphabet': self.alphabet,
            'sample': self.sample,
            'passed': self.passed,
            'checked': self.checked,
            'seed': self.seed,
            'elapsed': self.elapsed,
            'counterexample': self.counterexample,
            'created_at': self.created_at.isoformat() if self.created_at else None
        }
