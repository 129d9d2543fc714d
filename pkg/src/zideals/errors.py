"""Exception taxonomy shared by every module.

Exit-code mapping used by the CLI: mathematical failure is never an
exception (it is a report verdict); exceptions cover refused inputs,
blown budgets, and unmet hypotheses of hypothesis-gated operations.
"""


class ZidealsError(Exception):
    """Base class for all package errors."""


class SizeCapError(ZidealsError):
    """A constructor refused to build a ring beyond the configured size cap."""


class BimoduleError(ZidealsError):
    """Generalized-triangular construction with incompatible moduli."""


class DomainError(ZidealsError):
    """An argument violates an operation's precondition (non-ideal mask,
    non-idempotent element, improper ideal, wrong structure tag)."""


class HypothesisNotMetError(ZidealsError):
    """A hypothesis-gated operation was invoked on a ring that does not
    satisfy the hypothesis (e.g. a largest-contained-annihilator query on
    a ring where annihilator sums are not annihilators)."""


class BudgetExceededError(ZidealsError):
    """An enumeration would exceed its configured budget; refused rather
    than silently approximated."""


class SpecParseError(ZidealsError):
    """Unparseable ring spec, ideal description, or catalog file."""


class InternalConsistencyError(ZidealsError):
    """Two routes that must agree produced different answers.  Always a bug
    (or a falsified theorem); never caught internally."""
