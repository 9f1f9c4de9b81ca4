from django.db import models


class CorpusEntry(models.Model):
    """A CorpusEntry is one generated curve in a corpus directory: the spec it
    came from, the files it was written to and their content hashes."""
    class Family(models.TextChoices):
        FLAT = 'flat'
        RESCALED = 'rescaled'
        PULLBACK = 'pullback'
        MOEBIUS = 'moebius'
        PERTURBED = 'perturbed'

    name = models.CharField(
        max_length=50,
        unique=True)
    family = models.CharField(
        max_length=10,
        choices=Family.choices)
    k = models.PositiveSmallIntegerField()
    n = models.PositiveSmallIntegerField()
    seed = models.BigIntegerField()
    params = models.JSONField(
        default=dict,
        blank=True)
    locus = models.CharField(
        max_length=200,
        help_text='ALL, or the rational points where the curve is integrable.')
    curve_file = models.CharField(
        max_length=100)
    manifest_file = models.CharField(
        max_length=100)
    sha256 = models.CharField(
        max_length=64,
        help_text='Hash of the curve file.')
    manifest_sha256 = models.CharField(
        max_length=64)

    def __str__(self):
        return self.name

    @property
    def integrable(self):
        return self.locus == 'ALL'

    class Meta:
        ordering = ['name']
        verbose_name_plural = 'corpus entries'
