from django.apps import AppConfig


class BcFastConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "bc_fast"
    verbose_name = "Fast bounds consistency"
