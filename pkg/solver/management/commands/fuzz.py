from django.core.management.base import BaseCommand, CommandError

from solver.cli import EXIT_LIMIT, configure_logging, guarded
from solver.fuzz import fuzz_differential


class Command(BaseCommand):
    help = "Differential fuzzing of every propagation route against each other and the oracle."

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, default=1)
        parser.add_argument("--count", type=int, default=1000)
        parser.add_argument("--max-n", type=int, default=7)
        parser.add_argument("--max-d", type=int, default=9)
        parser.add_argument("--edge-probability", type=float, default=0.3)
        parser.add_argument("--shards", type=int, default=1)
        parser.add_argument("--holey-share", type=float, default=0.25, help="share of instances with holes in their domains")
        parser.add_argument("--no-decomposition", action="store_true")
        parser.add_argument("--no-oracle", action="store_true")
        parser.add_argument("--show", type=int, default=5, help="discrepancies to print in full")

    @guarded
    def handle(self, *args, **options):
        configure_logging(options["verbosity"])
        report = fuzz_differential(
            seed=options["seed"],
            count=options["count"],
            max_n=options["max_n"],
            max_d=options["max_d"],
            edge_probability=options["edge_probability"],
            shards=options["shards"],
            check_decomposition=not options["no_decomposition"],
            check_oracle=not options["no_oracle"],
            holey_share=options["holey_share"],
        )
        self.stdout.write(report.summary())
        if report.ok:
            self.stdout.write(self.style.SUCCESS("✅ no discrepancies"))
            return
        for item in report.discrepancies[: options["show"]]:
            self.stdout.write(f"--- instance {item.index} ({item.kind}): {item.detail}")
            self.stdout.write(item.instance_text, ending="")
        raise CommandError(f"⚠️ {len(report.discrepancies)} discrepancies", returncode=EXIT_LIMIT)
