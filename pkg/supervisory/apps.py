from django.apps import AppConfig


class SupervisoryConfig(AppConfig):
    name = 'supervisory'
    verbose_name = 'Coordination control synthesis'
