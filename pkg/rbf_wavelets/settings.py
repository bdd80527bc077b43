"""
Django settings for running the rbf-wavelets command line tools.

The numerical library does not need Django; these settings only exist so the management
commands in rbf_wavelets/management/commands can be run through manage.py or the
`rbf-wavelets` console script.
"""

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
import os

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# This is just a container for running commands, it's okay to allow it to be
# defaulted here if not present in environment settings
SECRET_KEY = os.environ.get('SECRET_KEY', 'rbf-wavelets-command-line-only')

DEBUG = False

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = (
    'rbf_wavelets',
)

# No command touches a database; the test runner still expects one.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    },
}

USE_TZ = True

TEST_RUNNER = 'rbf_wavelets.tests.runner.Runner'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'plain'},
    },
    'loggers': {
        'rbf_wavelets': {
            'handlers': ['console'],
            'level': os.environ.get('RBF_WAVELETS_LOG_LEVEL', 'WARNING'),
        },
    },
}
