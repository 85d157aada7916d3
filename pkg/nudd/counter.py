from nudd.exceptions import *
from nudd.constants import *


class EvaluationCounter(object):
    """Counts coefficient evaluations against a budget.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*limit*", "int", "Largest number of evaluations allowed. None
        disables the limit."
    """
    limit = EVALUATION_BUDGET
    """Largest number of evaluations allowed."""
    count = 0
    """Evaluations reserved so far."""

    def __init__(self, limit=EVALUATION_BUDGET):
        self.limit = limit
        self.count = 0

    def check(self, change):
        """Check that ``change`` more evaluations fit in the budget.

        Raises:

        :attr:`BudgetExceeded` carrying the attempted total.
        """
        attempted = self.count + change
        if self.limit is not None and attempted > self.limit:
            raise BudgetExceeded('Evaluation budget of %d exceeded, %d '
                    'evaluations requested.' % (self.limit, attempted),
                    attempted=attempted, limit=self.limit)
        return attempted

    def reserve(self, change):
        """Check then add ``change`` evaluations to the count."""
        self.count = self.check(change)
        return self.count

    def remaining(self):
        if self.limit is None:
            return None
        return self.limit - self.count
