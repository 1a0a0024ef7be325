from django.apps import AppConfig


class DcOracleConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "dc_oracle"
    verbose_name = "Domain consistency oracle"
