import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "OSCOPSproject.settings")
django.setup()
