from django.apps import AppConfig


class BcReferenceConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "bc_reference"
    verbose_name = "Reference bounds consistency"
