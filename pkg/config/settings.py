import os
from pathlib import Path
from dotenv import load_dotenv

# ===============================================================
# 1. LOAD ENVIRONMENT VARIABLES
# ===============================================================
# .env faylni yuklaymiz. Bo'lmasa, Environment Variablelardan oladi.
BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")

# ===============================================================
# 2. BASE CONFIGURATION
# ===============================================================
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "django-insecure-dev-key-change-in-prod")

# Debug rejimi (Stringni Booleanga o'girish)
DEBUG = os.environ.get("DEBUG", "False").lower() == "true"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# ===============================================================
# 3. HOSTS
# ===============================================================
# Vergul bilan ajratilgan stringni listga aylantiramiz
def get_list(text):
    if not text:
        return []
    return [item.strip() for item in text.split(",")]


def get_bool(name, default="False"):
    return os.environ.get(name, default).lower() == "true"


ALLOWED_HOSTS = get_list(os.environ.get("ALLOWED_HOSTS", "127.0.0.1,localhost,0.0.0.0,testserver"))

# ===============================================================
# 4. INSTALLED APPS
# ===============================================================
INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.staticfiles",

    # Third party apps
    "rest_framework",
    "drf_yasg",

    # Local apps
    "core.apps.CoreConfig",
    "feasibility.apps.FeasibilityConfig",
    "bc_reference.apps.BcReferenceConfig",
    "bc_fast.apps.BcFastConfig",
    "decomposition.apps.DecompositionConfig",
    "dc_oracle.apps.DcOracleConfig",
    "solver.apps.SolverConfig",
]

# ===============================================================
# 5. MIDDLEWARE
# ===============================================================
MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "config.urls"

# ===============================================================
# 6. TEMPLATES (Swagger UI uchun)
# ===============================================================
TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
            ],
        },
    },
]

WSGI_APPLICATION = "config.wsgi.application"

# ===============================================================
# 7. DATABASE
# ===============================================================
# Modellar yo'q, lekin Django test runner baza sozlamasini kutadi.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

# ===============================================================
# 8. INTERNATIONALIZATION & STATIC
# ===============================================================
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

STATIC_URL = "/static/"
STATIC_ROOT = BASE_DIR / "staticfiles"

# ===============================================================
# 9. REST FRAMEWORK
# ===============================================================
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
}

if DEBUG:
    REST_FRAMEWORK["DEFAULT_RENDERER_CLASSES"].append(
        "rest_framework.renderers.BrowsableAPIRenderer"
    )

# ===============================================================
# 10. SWAGGER
# ===============================================================
SWAGGER_SETTINGS = {
    "USE_SESSION_AUTH": False,
    "SECURITY_DEFINITIONS": {},
}

# ===============================================================
# 11. ALLDIFFPREC (propagation knobs)
# ===============================================================
ALLDIFFPREC = {
    # DC oracle: domenlar ko'paytmasi shu qiymatdan oshsa ExplosionError
    "DC_ENUMERATION_CAP": int(os.environ.get("ALLDIFFPREC_DC_CAP", "10000000")),
    # Debug: sweep invariantini har qadamda qayta hisoblash
    "CHECK_INVARIANTS": get_bool("ALLDIFFPREC_CHECK_INVARIANTS"),
    "DEFAULT_NODE_LIMIT": int(os.environ.get("ALLDIFFPREC_NODE_LIMIT", "100000")),
    "FUZZ_ORACLE_BOX_CAP": int(os.environ.get("ALLDIFFPREC_FUZZ_BOX_CAP", "200000")),
    "FUZZ_DECOMPOSITION_MAX_N": int(os.environ.get("ALLDIFFPREC_FUZZ_DECOMP_MAX_N", "6")),
    "FUZZ_DECOMPOSITION_MAX_D": int(os.environ.get("ALLDIFFPREC_FUZZ_DECOMP_MAX_D", "7")),
}

# ===============================================================
# 12. LOGGING
# ===============================================================
LOG_LEVEL = os.environ.get("ALLDIFFPREC_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in (
            "core", "feasibility", "bc_reference", "bc_fast",
            "decomposition", "dc_oracle", "solver",
        )
    },
}
