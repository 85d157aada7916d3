from nudd.exceptions import *


class PointCache(object):
    """Store of finished sweep points so an interrupted sweep can resume.
    Points are keyed by the config digest, the realization and the tau
    index. A point record is a dict ``{'D': text, 'E': {bits: text}}`` with
    every value a full precision decimal string.

    Subclasses override :meth:`get_point` and :meth:`set_point`; this class
    keeps points in memory.
    """
    _points = None

    def __init__(self):
        self._points = {}

    def get_point(self, digest, realization, tau_index):
        """Returns the stored record or None."""
        return self._points.get((digest, realization, tau_index))

    def set_point(self, digest, realization, tau_index, record):
        """Store ``record``, replacing any previous one."""
        self._points[(digest, realization, tau_index)] = record

    def get_realization(self, digest, realization, count):
        """All ``count`` records of one realization, or None if any point is
        missing."""
        records = []
        for tau_index in range(count):
            record = self.get_point(digest, realization, tau_index)
            if record is None:
                return None
            records.append(record)
        return records

    def set_realization(self, digest, realization, records):
        for tau_index, record in enumerate(records):
            self.set_point(digest, realization, tau_index, record)
