from django import forms
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from .corpus import Family
from .exceptions import StructuralError
from .pencil import parse_points


class PointListField(forms.CharField):
    '''Comma-separated projective points: rationals like "3/2" and "inf".'''
    def to_python(self, value):
        value = super().to_python(value)
        if not value:
            return []
        try:
            return parse_points(value)
        except StructuralError:
            raise ValidationError(_('%(value)s is not a list of points.'),
                                  code='points', params={'value': value})


class CheckForm(forms.Form):
    MODES = [('full', 'full'), ('sparse', 'sparse'), ('naive', 'naive'),
             ('random', 'random')]

    mode = forms.ChoiceField(choices=MODES, required=False)
    points = PointListField(required=False)
    samples = forms.IntegerField(min_value=1, required=False)
    seed = forms.IntegerField(required=False)

    def clean_mode(self):
        return self.cleaned_data['mode'] or 'full'

    def clean(self):
        cleaned = super().clean()
        if cleaned.get('mode') in ('sparse', 'naive') and not cleaned.get('points'):
            raise ValidationError(_('--points is required in %(mode)s mode.'),
                                  code='points', params={'mode': cleaned['mode']})
        return cleaned


class TheoremForm(forms.Form):
    trials = forms.IntegerField(min_value=1, required=False)
    seed = forms.IntegerField(required=False)


class ComplexifyForm(forms.Form):
    anchors = PointListField()
    sample_ts = PointListField(required=False)
    seed = forms.IntegerField(required=False)


class GenForm(forms.Form):
    family = forms.ChoiceField(choices=[(f.value, f.value) for f in Family])
    k = forms.IntegerField(min_value=1, max_value=4)
    n = forms.IntegerField(min_value=1, max_value=6)
    seed = forms.IntegerField(required=False)
    points = forms.CharField(required=False)
    beta = forms.CharField(required=False)
    pencil = forms.IntegerField(min_value=1, required=False)
    shear = forms.CharField(required=False,
                            help_text='Components separated by ";", e.g. "x0 + x1*x2; x1; x2".')
    matrix = forms.CharField(required=False,
                             help_text='Rows separated by ";", entries by ",".')
    moebius = forms.CharField(required=False, help_text='a,b,c,d')
    profile = forms.CharField(required=False, help_text='p_0,...,p_n')

    def clean_points(self):
        value = self.cleaned_data['points']
        if not value:
            return None
        try:
            return [str(p) for p in parse_points(value)]
        except StructuralError:
            raise ValidationError(_('%(value)s is not a list of points.'),
                                  code='points', params={'value': value})

    def clean_moebius(self):
        value = self.cleaned_data['moebius']
        if not value:
            return None
        entries = [e.strip() for e in value.split(',')]
        if len(entries) != 4:
            raise ValidationError(_('A Moebius matrix needs four entries.'), code='moebius')
        return entries

    def clean_shear(self):
        value = self.cleaned_data['shear']
        return [c.strip() for c in value.split(';')] if value else None

    def clean_matrix(self):
        value = self.cleaned_data['matrix']
        if not value:
            return None
        return [[e.strip() for e in row.split(',')] for row in value.split(';')]

    def clean_profile(self):
        value = self.cleaned_data['profile']
        return [e.strip() for e in value.split(',')] if value else None

    def params(self):
        '''The family parameters given on the command line.'''
        keys = ('points', 'beta', 'pencil', 'shear', 'matrix', 'moebius', 'profile')
        return {key: self.cleaned_data[key] for key in keys
                if self.cleaned_data.get(key) not in (None, '')}


class CorpusForm(forms.Form):
    size = forms.IntegerField(min_value=1, required=False)
    seed = forms.IntegerField(required=False)
    out_dir = forms.CharField()
