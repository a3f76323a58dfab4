from django.apps import AppConfig


class OscopsappConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'OSCOPSapp'
    verbose_name = "Oscillatory operations"
