"""Helpers shared by the management commands."""
import functools
import logging

from django.core.management.base import CommandError

from core.exceptions import AllDiffPrecError, CycleError, InvariantViolation
from core.samples import SAMPLES

from .formats import load_instance

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

APP_LOGGERS = ("core", "feasibility", "bc_reference", "bc_fast", "decomposition", "dc_oracle", "solver")


def configure_logging(verbosity):
    """--verbosity 2 shows INFO, 3 shows DEBUG; lower levels keep the settings."""
    if verbosity < 2:
        return
    level = logging.DEBUG if verbosity >= 3 else logging.INFO
    for name in APP_LOGGERS:
        logging.getLogger(name).setLevel(level)


def guarded(handle):
    """
    Wrap a command's ``handle``.

    A broken internal invariant becomes exit code 3; any other unexpected
    error is logged with its traceback and re-raised.
    """
    @functools.wraps(handle)
    def wrapper(self, *args, **options):
        command = type(self).__module__.rsplit(".", 1)[-1]
        try:
            return handle(self, *args, **options)
        except CommandError:
            raise
        except InvariantViolation as exc:
            logger.error(f"❌ Invariant violated in {command} | Error: {exc}", exc_info=True)
            raise CommandError(f"⚠️ invariant violated: {exc}", returncode=EXIT_LIMIT)
        except Exception as exc:
            # Kutilmagan xato
            logger.error(f"❌ Unexpected error in {command} | Error: {exc}", exc_info=True)
            raise

    return wrapper


def add_instance_arguments(parser):
    parser.add_argument("instance", nargs="?", help="instance file (text or .json)")
    parser.add_argument("--sample", choices=sorted(SAMPLES), help="use a built-in sample instead of a file")


def read_instance(options):
    if bool(options.get("instance")) == bool(options.get("sample")):
        raise CommandError("give an instance file or --sample, not both", returncode=EXIT_USAGE)
    if options.get("sample"):
        return SAMPLES[options["sample"]]()
    try:
        return load_instance(options["instance"])
    except CycleError as exc:
        # a cycle is a well-formed but unsatisfiable constraint
        raise CommandError(f"❌ {exc}", returncode=EXIT_UNSAT)
    except AllDiffPrecError as exc:
        detail = getattr(exc, "detail", None)
        raise CommandError(f"{exc}: {detail}" if detail else str(exc), returncode=EXIT_USAGE)


def format_bounds(instance, bounds):
    return [f"{instance.name(i)} {dom}" for i, dom in enumerate(instance.denormalize_bounds(bounds))]
