"""Exception hierarchy shared by all formcode modules."""

from __future__ import annotations


class FormcodeError(ValueError):
    """Base class for domain errors. ``kind`` is a stable machine-readable tag."""

    kind = "domain"


class FieldError(FormcodeError):
    kind = "field"


class MixedFieldError(FieldError):
    kind = "mixed_field"


class DimensionError(FormcodeError):
    kind = "dimension"


class CapacityError(FormcodeError):
    kind = "capacity"


class NotCoprimeError(FormcodeError):
    kind = "not_coprime"

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class EquidistanceError(FormcodeError):
    kind = "equidistance"

    def __init__(self, message, pair=None, observed=None, expected=None):
        super().__init__(message)
        self.pair = pair
        self.observed = observed
        self.expected = expected


class BudgetError(FormcodeError):
    kind = "budget"


class FormatError(FormcodeError):
    kind = "format"
