#!/usr/bin/env python
"""
Command-line entry point.

Besides Django's own commands this runs propagate, solve, dc, encode_sat,
fuzz and bench (see docs/ALLDIFFPREC_GUIDE.md).
"""
import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Django is not importable; install requirements.txt into the active environment."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
