from django.core.management.base import BaseCommand, CommandError

from decomposition.encoder import dump_encoding, encode
from solver.cli import EXIT_UNSAT, EXIT_USAGE, add_instance_arguments, configure_logging, format_bounds, guarded, read_instance
from solver.routes import DECOMP, FAST, FAST_COMPRESSED, ROUTES, make_propagator


class Command(BaseCommand):
    help = "Propagate an instance to its bounds-consistency fixpoint and print the bounds."

    def add_arguments(self, parser):
        add_instance_arguments(parser)
        parser.add_argument("--route", choices=ROUTES, default=FAST)
        parser.add_argument("--trace", action="store_true", help="print the sweep trace (fast routes)")
        parser.add_argument("--dump", action="store_true", help="print the decomposition encoding (decomp route)")
        parser.add_argument("--debug", action="store_true", help="audit the sweep invariant after every step")

    @guarded
    def handle(self, *args, **options):
        configure_logging(options["verbosity"])
        instance = read_instance(options)
        route = options["route"]
        if options["trace"] and route not in (FAST, FAST_COMPRESSED):
            raise CommandError("--trace needs a fast route", returncode=EXIT_USAGE)
        if options["dump"] and route != DECOMP:
            raise CommandError("--dump needs --route decomp", returncode=EXIT_USAGE)

        if options["dump"]:
            self.stdout.write(dump_encoding(encode(instance)), ending="")

        trace = [] if options["trace"] else None
        if route in (FAST, FAST_COMPRESSED):
            propagate = make_propagator(instance, route, debug=options["debug"] or None, trace=trace)
        else:
            propagate = make_propagator(instance, route)
        outcome = propagate(instance.initial_bounds())

        for line in trace or []:
            self.stdout.write(line)
        if outcome.failed:
            raise CommandError(f"❌ failure: {outcome.reason}", returncode=EXIT_UNSAT)
        for line in format_bounds(instance, outcome.bounds):
            self.stdout.write(line)
        changed = ", ".join(instance.name(c.index) for c in outcome.changes) or "none"
        self.stdout.write(self.style.SUCCESS(f"✅ fixpoint ({route}); changed: {changed}"))
