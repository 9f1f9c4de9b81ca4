from .defaults import *
DEBUG = False
SECRET_KEY = os.environ.get('VWEBS_SECRET_KEY', 'NEED A REAL KEY HERE')

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('VWEBS_DB', str(BASE_DIR / 'corpus.sqlite3')),
    }
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(levelname)s %(asctime)s %(module)s %(process)d %(thread)d %(message)s'
        },
    },
    'handlers': {
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose'
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': True,
        },
        'vwebs': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    }
}
