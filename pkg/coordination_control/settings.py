"""
Django settings for the coordination_control project.

Only the pieces the command-line tool needs are configured: the supervisory
app, the template engine for human reports, and logging.
"""

from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

# No sessions, no cookies, no web surface; the key only satisfies Django's startup checks.
SECRET_KEY = 'django-insecure-coordination-control-cli-only'

DEBUG = False

INSTALLED_APPS = [
    'supervisory',
]

DATABASES = {}

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

USE_I18N = False

USE_TZ = True

# Reports
SUPERVISORY_REPORT_WORD_LENGTH = 8
SUPERVISORY_REPORT_WORD_LIMIT = 24
SUPERVISORY_OBSERVATION = 'flags'  # full | flags

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'supervisory': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
