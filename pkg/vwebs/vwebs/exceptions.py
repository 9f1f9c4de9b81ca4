from django.core.exceptions import ValidationError


class StructuralError(ValueError):
    '''Objects that cannot be combined: different charts, wrong form
    degrees, indices out of range.'''


class PreconditionError(ValidationError):
    '''An operation was called on inputs its preconditions exclude.
    Carries a `code` and `params` like any Django validation error.
    '''


class InvalidCurve(PreconditionError):
    pass


class GenerationError(PreconditionError):
    pass
