import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import MalformedFormulaError
from dc_oracle.dimacs import parse_dimacs
from dc_oracle.enumeration import support_exists
from dc_oracle.reduction import encode_3sat
from solver.cli import EXIT_LIMIT, EXIT_UNSAT, EXIT_USAGE, configure_logging, guarded
from solver.formats import InstanceFile, document_to_data, serialize_instance_text


class Command(BaseCommand):
    help = "Encode a DIMACS 3-CNF formula as an AllDiffPrec instance."

    def add_arguments(self, parser):
        parser.add_argument("cnf", help="DIMACS CNF file")
        parser.add_argument("--output", help="write the instance here instead of stdout")
        parser.add_argument("--format", choices=("text", "json"), default="text")
        parser.add_argument(
            "--check", action="store_true",
            help="compare support existence of the encoding with a truth table",
        )

    @guarded
    def handle(self, *args, **options):
        configure_logging(options["verbosity"])
        try:
            formula = parse_dimacs(Path(options["cnf"]).read_text())
            instance = encode_3sat(formula)
        except OSError as exc:
            raise CommandError(f"cannot read {options['cnf']}: {exc}", returncode=EXIT_USAGE)
        except MalformedFormulaError as exc:
            raise CommandError(f"❌ {exc}", returncode=EXIT_USAGE)

        doc = InstanceFile.from_instance(instance, {"source": Path(options["cnf"]).name})
        if options["format"] == "json":
            text = json.dumps(document_to_data(doc), indent=2) + "\n"
        else:
            text = serialize_instance_text(doc)
        if options["output"]:
            Path(options["output"]).write_text(text)
        else:
            self.stdout.write(text, ending="")

        if options["check"]:
            satisfiable = formula.is_satisfiable()
            supported = support_exists(instance, cap=float("inf"))
            if satisfiable != supported:
                raise CommandError(
                    f"⚠️ truth table says {satisfiable}, encoding support says {supported}",
                    returncode=EXIT_LIMIT,
                )
            if not satisfiable:
                raise CommandError("❌ unsatisfiable (encoding has no support)", returncode=EXIT_UNSAT)
            self.stdout.write(self.style.SUCCESS("✅ satisfiable; encoding has a support"))
