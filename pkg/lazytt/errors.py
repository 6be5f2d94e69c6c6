""" Exception classes """

__all__ = ['TrackStructureError', 'TrackParseError', 'PreconditionError',
           'InfeasibleError', 'NotInStripError', 'TighteningError',
           'BudgetExceededError', 'InvariantViolation']


class TrackStructureError(ValueError):
    """ Dangling, duplicated or otherwise malformed slot references """


class TrackParseError(TrackStructureError):
    """
    Malformed track text.

    Parameters
    ----------
    msg : str
        Message

    line : int
        1-based line number

    column : int
        1-based column number
    """
    def __init__(self, msg, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__('{}:{}: {}'.format(line, column, msg))


class PreconditionError(ValueError):
    """ A move or measure operation was called outside its domain """


class InfeasibleError(ArithmeticError):
    """ An exact linear system that must be feasible is not """


class NotInStripError(KeyError):
    """ A track or vertex is not a member of the strip asked about """


class TighteningError(RuntimeError):
    """ Tightening cannot make progress """


class BudgetExceededError(RuntimeError):
    """ An iteration exceeded its configured step budget """


class InvariantViolation(RuntimeError):
    """ A configuration that the algorithm rules out was reached """
