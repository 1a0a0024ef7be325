from django.core.management.base import BaseCommand, CommandError

from solver.bench import bench
from solver.cli import EXIT_USAGE, configure_logging, guarded


class Command(BaseCommand):
    help = "Time both fast sweep modes and the reference route for growing n."

    def add_arguments(self, parser):
        parser.add_argument("--max-n", type=int, default=50)
        parser.add_argument("--step", type=int, default=10)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--repeat", type=int, default=3)
        parser.add_argument("--no-reference", action="store_true")

    @guarded
    def handle(self, *args, **options):
        configure_logging(options["verbosity"])
        if options["step"] <= 0 or options["max_n"] < options["step"] or options["repeat"] <= 0:
            raise CommandError("need 0 < step <= max-n and repeat > 0", returncode=EXIT_USAGE)
        rows = bench(
            options["max_n"], options["step"], options["seed"], options["repeat"],
            with_reference=not options["no_reference"],
        )
        self.stdout.write(f"{'n':>5} {'d':>5} {'full[s]':>10} {'compr[s]':>10} {'ref[s]':>10} {'fwd':>8} {'back':>8}")
        for row in rows:
            self.stdout.write(
                f"{row.n:>5} {row.d:>5} {row.full_seconds:>10.4f} {row.compressed_seconds:>10.4f} "
                f"{row.reference_seconds:>10.4f} {row.forward_steps:>8} {row.backward_steps:>8}"
            )
