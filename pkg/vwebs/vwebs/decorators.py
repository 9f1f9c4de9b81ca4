import functools

from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from .codec import read_curve
from .exceptions import PreconditionError
from .webs import check_at

# These decorators wrap BaseCommand.handle.  Values they compute from the
# command options are passed on as extra options entries with a leading
# underscore.


def reports_errors(handle):
    '''Turn validation and precondition failures into exit code 2.'''
    @functools.wraps(handle)
    def wrapped_handle(self, *args, **options):
        try:
            return handle(self, *args, **options)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=2) from exc
    return wrapped_handle


def form_is_valid(form_class):
    '''Validate the command options with a Django form.
    returns: _cleaned, _form
    '''
    def decorator(handle):
        @functools.wraps(handle)
        def wrapped_handle(self, *args, **options):
            data = {key: value for key, value in options.items() if value is not None}
            form = form_class(data)
            if not form.is_valid():
                messages = [f'{field}: {" ".join(errors)}' if field != '__all__'
                            else ' '.join(errors)
                            for field, errors in form.errors.items()]
                raise ValidationError(messages, code='invalid')
            options['_cleaned'] = form.cleaned_data
            options['_form'] = form
            return handle(self, *args, **options)
        return wrapped_handle
    return decorator


def curve_from_path(handle):
    '''Read the curve named by the 'curve' option.
    returns: _curve
    '''
    @functools.wraps(handle)
    def wrapped_handle(self, *args, **options):
        options['_curve'] = read_curve(options['curve'])
        return handle(self, *args, **options)
    return wrapped_handle


def anchors_are_integrable(handle):
    '''Confirm the curve is integrable at every finite anchor before the
    complexification is attempted.
    options: _curve, _cleaned['anchors']
    '''
    @functools.wraps(handle)
    def wrapped_handle(self, *args, **options):
        curve = options['_curve']
        for anchor in options['_cleaned']['anchors']:
            if not check_at(curve, anchor):
                raise PreconditionError('curve is not integrable at anchor %(anchor)s',
                                        code='non-integrable-anchor',
                                        params={'anchor': str(anchor)})
        return handle(self, *args, **options)
    return wrapped_handle
