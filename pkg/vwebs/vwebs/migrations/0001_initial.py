from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CorpusEntry',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=50, unique=True)),
                ('family', models.CharField(choices=[('flat', 'Flat'), ('rescaled', 'Rescaled'), ('pullback', 'Pullback'), ('moebius', 'Moebius'), ('perturbed', 'Perturbed')], max_length=10)),
                ('k', models.PositiveSmallIntegerField()),
                ('n', models.PositiveSmallIntegerField()),
                ('seed', models.BigIntegerField()),
                ('params', models.JSONField(blank=True, default=dict)),
                ('locus', models.CharField(help_text='ALL, or the rational points where the curve is integrable.', max_length=200)),
                ('curve_file', models.CharField(max_length=100)),
                ('manifest_file', models.CharField(max_length=100)),
                ('sha256', models.CharField(help_text='Hash of the curve file.', max_length=64)),
                ('manifest_sha256', models.CharField(max_length=64)),
            ],
            options={
                'verbose_name_plural': 'corpus entries',
                'ordering': ['name'],
            },
        ),
    ]
