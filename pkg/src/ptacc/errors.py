"""Exception hierarchy.

Every error carries a short ``code`` used by the CLI for its machine-readable
``ERROR <module> <code> <detail>`` line.
"""


class PtaccError(Exception):
    module = "ptacc"
    code = "error"


class DomainError(PtaccError, ValueError):
    module = "model"
    code = "domain"


class PositivityError(PtaccError, ValueError):
    module = "boundary"
    code = "positivity"


class WindowError(PtaccError, ValueError):
    module = "boundary"
    code = "window"


class StepFailure(PtaccError, RuntimeError):
    module = "boundary"
    code = "step-failure"


class PoleError(PtaccError, ValueError):
    module = "specfun"
    code = "pole"


class NoConvergence(PtaccError, ArithmeticError):
    module = "specfun"
    code = "no-convergence"


class BracketError(PtaccError, RuntimeError):
    module = "eigen"
    code = "bracket"


class StabilityError(PtaccError, RuntimeError):
    module = "pde"
    code = "stability"


class GaussianOverflowError(PtaccError, OverflowError):
    module = "pde"
    code = "overflow"


class UsageError(PtaccError, ValueError):
    module = "cli"
    code = "usage"
