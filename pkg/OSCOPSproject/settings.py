"""
Django settings for OSCOPSproject project.

Generated by 'django-admin startproject' using Django 6.0.

For more information on this file, see
https://docs.djangoproject.com/en/6.0/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

from pathlib import Path
import os

from OSCOPSapp import sweeps as sweep_defaults

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Django REST Framework
# The API is read-only and computes everything on request: no auth, JSON only.
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": (),
    "DEFAULT_PERMISSION_CLASSES": (
        "rest_framework.permissions.AllowAny",
    ),
    "DEFAULT_RENDERER_CLASSES": (
        "rest_framework.renderers.JSONRenderer",
    ),
    "UNAUTHENTICATED_USER": None,
}


# Quick-start development settings - unsuitable for production
# See https://docs.djangoproject.com/en/6.0/howto/deployment/checklist/

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv(
    "DJANGO_SECRET_KEY",
    'django-insecure-0s8f#k2m!q7w3e9r5t1y4u6i8o0p2a4s6d8f0g2h4j6k8l0z',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv("DJANGO_DEBUG", "1") == "1"

ALLOWED_HOSTS = ["localhost", "127.0.0.1", "testserver"]


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    "rest_framework",
    'OSCOPSapp.apps.OscopsappConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'OSCOPSproject.urls'

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

WSGI_APPLICATION = 'OSCOPSproject.wsgi.application'


# Database
# https://docs.djangoproject.com/en/6.0/ref/settings/#databases
# Nothing is persisted; the entry only satisfies Django's startup checks.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization
# https://docs.djangoproject.com/en/6.0/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging
# https://docs.djangoproject.com/en/6.0/topics/logging/

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "OSCOPSapp": {
            "handlers": ["console"],
            "level": os.getenv("OSC_OPS_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
    },
}

# ============================
# Oscillatory operations
# ============================

# ---- Accuracy audit of the 0F1 kernel ----
OSC_OPS_PRECISION_AUDIT = os.getenv("OSC_OPS_PRECISION_AUDIT", "0") == "1"

# ---- Sweep defaults (library values, env overrides on top) ----
OSC_OPS_OMEGA_STEP = float(os.getenv("OSC_OPS_OMEGA_STEP", sweep_defaults.OMEGA_STEP))
OSC_OPS_DERIV_OMEGA_RANGE = sweep_defaults.DERIV_OMEGA_RANGE
OSC_OPS_QUAD_OMEGA_RANGE = sweep_defaults.QUAD_OMEGA_RANGE
OSC_OPS_CSV_DIGITS = sweep_defaults.CSV_DIGITS

# ---- Quadrature envelope +-C/omega ----
OSC_OPS_ENVELOPE_COEFF = sweep_defaults.ENVELOPE_COEFF
OSC_OPS_ENVELOPE_SLACK = float(os.getenv("OSC_OPS_ENVELOPE_SLACK", sweep_defaults.ENVELOPE_SLACK))
