import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'coordination_control.settings')
django.setup()
