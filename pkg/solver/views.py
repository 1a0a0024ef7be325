import logging

from drf_yasg.utils import swagger_auto_schema
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from core.exceptions import AllDiffPrecError, NodeLimitReached

from .formats import document_from_validated
from .routes import make_propagator
from .search import SearchConfig, solve
from .serializers import (
    PropagateRequestSerializer,
    PropagateResponseSerializer,
    SolveRequestSerializer,
    SolveResponseSerializer,
)

logger = logging.getLogger(__name__)


def _build(validated):
    """Instance from a validated request, or a 400 Response."""
    try:
        return document_from_validated(validated["instance"]).to_instance(), None
    except AllDiffPrecError as exc:
        logger.warning(f"❌ Rejected instance: {exc}")
        return None, Response({"detail": str(exc)}, status=status.HTTP_400_BAD_REQUEST)


def _unexpected(action, exc):
    # Kutilmagan xato
    logger.error(f"❌ Unexpected error in {action} | Error: {exc}", exc_info=True)
    return Response({"detail": "internal error"}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)


# ===============================================================
# 🔁 PROPAGATE
# ===============================================================
class PropagateView(APIView):
    permission_classes = [AllowAny]

    @swagger_auto_schema(
        operation_summary="Fixpoint bounds",
        operation_description="Instance hujjatini tanlangan route bilan propagatsiya qiladi (bounds consistency fixpoint).",
        request_body=PropagateRequestSerializer,
        responses={200: PropagateResponseSerializer, 400: "Invalid instance", 500: "Internal error"},
        tags=["alldiffprec"],
    )
    def post(self, request):
        serializer = PropagateRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        instance, error = _build(serializer.validated_data)
        if error:
            return error

        route = serializer.validated_data["route"]
        try:
            outcome = make_propagator(instance, route)(instance.initial_bounds())
        except Exception as exc:
            return _unexpected("propagate", exc)
        if outcome.failed:
            return Response({"status": "failed", "route": route, "reason": outcome.reason})

        bounds = instance.denormalize_bounds(outcome.bounds)
        return Response(
            {
                "status": "ok",
                "route": route,
                "bounds": [
                    {"name": instance.name(i), "min": dom.lb, "max": dom.ub}
                    for i, dom in enumerate(bounds)
                ],
                "changed": [instance.name(change.index) for change in outcome.changes],
            }
        )


# ===============================================================
# 🔎 SOLVE
# ===============================================================
class SolveView(APIView):
    permission_classes = [AllowAny]

    @swagger_auto_schema(
        operation_summary="Solve",
        operation_description="Backtracking qidiruv: har tugunda propagatsiya.",
        request_body=SolveRequestSerializer,
        responses={200: SolveResponseSerializer, 400: "Invalid instance", 500: "Internal error"},
        tags=["alldiffprec"],
    )
    def post(self, request):
        serializer = SolveRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        instance, error = _build(serializer.validated_data)
        if error:
            return error

        data = serializer.validated_data
        config = SearchConfig(
            var_order=data["var_order"],
            value_order=data["value_order"],
            route=data["route"],
            branching=data["branching"],
            node_limit=data.get("node_limit"),
            seed=data["seed"],
        )
        try:
            result = solve(instance, config)
        except NodeLimitReached as exc:
            return Response({"status": "node_limit", "nodes": exc.nodes})
        except Exception as exc:
            return _unexpected("solve", exc)

        body = {"status": result.status, "nodes": result.nodes}
        if result.is_sat:
            values = instance.denormalize_assignment(result.assignment)
            body["assignment"] = {instance.name(i): v for i, v in enumerate(values)}
        return Response(body)
