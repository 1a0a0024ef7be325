from django.core.management.base import BaseCommand, CommandError

from core.exceptions import NodeLimitReached
from solver.cli import EXIT_LIMIT, EXIT_UNSAT, EXIT_USAGE, add_instance_arguments, configure_logging, guarded, read_instance
from solver.routes import FAST, ROUTES
from solver.search import ASCENDING, ASSIGN, BRANCHINGS, MIN_DOMAIN, VALUE_ORDERS, VAR_ORDERS, SearchConfig, solve


class Command(BaseCommand):
    help = "Search for a solution with propagation at every node."

    def add_arguments(self, parser):
        add_instance_arguments(parser)
        parser.add_argument("--route", choices=ROUTES, default=FAST)
        parser.add_argument("--var-order", choices=VAR_ORDERS, default=MIN_DOMAIN)
        parser.add_argument("--value-order", choices=VALUE_ORDERS, default=ASCENDING)
        parser.add_argument("--branching", choices=BRANCHINGS, default=ASSIGN)
        parser.add_argument("--node-limit", type=int, default=None)
        parser.add_argument("--seed", type=int, default=0)

    @guarded
    def handle(self, *args, **options):
        configure_logging(options["verbosity"])
        instance = read_instance(options)
        try:
            config = SearchConfig(
                var_order=options["var_order"],
                value_order=options["value_order"],
                route=options["route"],
                branching=options["branching"],
                node_limit=options["node_limit"],
                seed=options["seed"],
            )
        except ValueError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)

        try:
            result = solve(instance, config)
        except NodeLimitReached as exc:
            raise CommandError(f"⚠️ node limit reached after {exc.nodes} nodes", returncode=EXIT_LIMIT)

        if not result.is_sat:
            raise CommandError(f"❌ unsat after {result.nodes} nodes", returncode=EXIT_UNSAT)
        values = instance.denormalize_assignment(result.assignment)
        for i, value in enumerate(values):
            self.stdout.write(f"{instance.name(i)} = {value}")
        self.stdout.write(self.style.SUCCESS(f"✅ sat after {result.nodes} nodes"))
