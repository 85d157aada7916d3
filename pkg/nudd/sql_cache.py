from nudd.exceptions import *
from nudd.cache import PointCache
from nudd.database import PointTable, Session
from sqlalchemy.exc import SQLAlchemyError
import json


class SQLPointCache(PointCache):
    """Point cache that uses sql to store sweep points. Call
    :func:`connect_database` first."""

    def _query(self, session, digest, realization, tau_index):
        return session.query(PointTable).filter(
                PointTable.digest == digest,
                PointTable.realization == realization,
                PointTable.tau_index == tau_index).first()

    def get_point(self, digest, realization, tau_index):
        """Get a point record from sql database."""
        session = Session()
        try:
            row = self._query(session, digest, realization, tau_index)
        except SQLAlchemyError as exception:
            raise CacheError(exception)
        finally:
            session.close()
        if row is None:
            return None
        return json.loads(row.payload)

    def set_point(self, digest, realization, tau_index, record):
        """Set a point record in sql database."""
        payload = json.dumps(record, sort_keys=True)
        session = Session()
        try:
            row = self._query(session, digest, realization, tau_index)
            if row is None:
                session.add(PointTable(digest, realization, tau_index, payload))
            else:
                row.payload = payload
            session.commit()
        except SQLAlchemyError as exception:
            session.rollback()
            raise CacheError(exception)
        finally:
            session.close()
