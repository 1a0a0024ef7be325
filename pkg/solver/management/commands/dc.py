from django.core.management.base import BaseCommand, CommandError

from core.exceptions import ExplosionError
from dc_oracle.enumeration import enforce_dc
from solver.cli import EXIT_LIMIT, EXIT_UNSAT, add_instance_arguments, configure_logging, guarded, read_instance


class Command(BaseCommand):
    help = "Domain consistency by exhaustive enumeration (small instances only)."

    def add_arguments(self, parser):
        add_instance_arguments(parser)
        parser.add_argument("--cap", type=int, default=None, help="override DC_ENUMERATION_CAP")

    @guarded
    def handle(self, *args, **options):
        configure_logging(options["verbosity"])
        instance = read_instance(options)
        try:
            outcome = enforce_dc(instance, cap=options["cap"])
        except ExplosionError as exc:
            raise CommandError(f"⚠️ {exc}", returncode=EXIT_LIMIT)
        if outcome.failed:
            raise CommandError("❌ no support", returncode=EXIT_UNSAT)
        for i, dom in enumerate(outcome.domains):
            self.stdout.write(f"{instance.name(i)} {dom.shift(instance.value_offset)}")
        self.stdout.write(self.style.SUCCESS("✅ domain consistent"))
