from nudd.exceptions import *

# Optional dependency, see nudd/__init__.py
try:
    from sqlalchemy import create_engine, inspect
    from sqlalchemy import Column, Integer, String, Text
    from sqlalchemy.orm import declarative_base, sessionmaker
except ImportError:
    import logging
    logging.debug('SQLAlchemy not available, removing SQLPointCache.')
    raise SQLEngineNotAvailable('SQLAlchemy not available.')

TABLE_NAME = 'nudd_points'
"""Name of sql table for sweep points."""


Session = sessionmaker()
"""SQL database session."""


Base = declarative_base()
"""Base class for sql tables."""


class PointTable(Base):
    """SQL sweep point table.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*digest*", "string", "Digest of the sweep config."
        "*realization*", "int", "Bath realization."
        "*tau_index*", "int", "Index into the tau grid."
        "*payload*", "string", "JSON encoded point record."
    """
    __tablename__ = TABLE_NAME

    id = Column(Integer, primary_key=True)
    """Column ID (Primary Key)."""
    digest = Column(String(64), index=True)
    """Digest of the sweep config."""
    realization = Column(Integer)
    """Bath realization."""
    tau_index = Column(Integer)
    """Index into the tau grid."""
    payload = Column(Text)
    """JSON encoded point record."""

    def __init__(self, digest, realization, tau_index, payload):
        self.digest = digest
        self.realization = realization
        self.tau_index = tau_index
        self.payload = payload


def connect_database(sql_connection):
    """Bind :attr:`Session` to a database, creating the point table when it is
    missing.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*sql_connection*", "string", "SQL alchemy dialect url."
    """
    engine = create_engine(sql_connection, pool_recycle=3600)
    Session.configure(bind=engine)

    # First use of this url
    if not inspect(engine).has_table(TABLE_NAME):
        Base.metadata.create_all(engine)
    return engine
