"""
Django settings for the vwebs project.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).parent.parent.parent

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = True

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'vwebs',
]


# Database
# Only the corpus index lives here, and only as fixtures.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Checks, experiments and corpus builds

WORKERS = int(os.environ.get('VWEBS_WORKERS', '1'))

VWEBS = {
    'WORKERS': WORKERS,
    'SEED': 0,
    'RANDOM_SAMPLES': 10,
    'THEOREM_TRIALS': 50,
    'SPAN_SAMPLE_POINTS': 4,
    'CORPUS_SIZE': 120,
    'SAMPLE_TS': '0,1,-1,5,inf',
}


# Celery
# Without a broker every task runs eagerly in the calling process.

CELERY_BROKER_URL = os.environ.get('VWEBS_BROKER_URL', 'memory://')
CELERY_RESULT_BACKEND = os.environ.get('VWEBS_RESULT_BACKEND', 'cache+memory://')
CELERY_TASK_ALWAYS_EAGER = 'VWEBS_BROKER_URL' not in os.environ
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_ACCEPT_CONTENT = ['json']
CELERY_WORKER_CONCURRENCY = WORKERS
