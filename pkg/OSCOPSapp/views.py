import logging

from rest_framework import permissions, status
from rest_framework.response import Response
from rest_framework.views import APIView

from .exceptions import OscOpsError
from .hypergeom import hyp0f1_basis
from .serializers import HypBasisQuerySerializer, SweepRequestSerializer, report_options
from .sweeps import run_report, run_sweep

logger = logging.getLogger(__name__)


def library_error_response(exc: OscOpsError) -> Response:
    logger.warning("Request rejected by the library: %s", exc)
    return Response({"detail": str(exc)}, status=status.HTTP_422_UNPROCESSABLE_ENTITY)


class ReportView(APIView):
    """
    GET /api/report/ -> acceptance checks as JSON
    """
    permission_classes = [permissions.AllowAny]

    def get(self, request):
        try:
            report = run_report(**report_options())
        except OscOpsError as e:
            return library_error_response(e)
        return Response(report, status=status.HTTP_200_OK)


class SweepView(APIView):
    """
    POST /api/sweeps/
    Body: {"target": "d1_2pt", "omega_min": 0, "omega_max": 80, "omega_step": 0.1, "scaling": "linear"}
    -> {"columns": [...], "rows": [{...}, ...]}
    """
    permission_classes = [permissions.AllowAny]

    def post(self, request):
        ser = SweepRequestSerializer(data=request.data)
        ser.is_valid(raise_exception=True)

        try:
            result = run_sweep(ser.to_config())
        except OscOpsError as e:
            return library_error_response(e)

        return Response(
            {"target": result.config.target, "columns": list(result.columns), "rows": result.as_dicts()},
            status=status.HTTP_200_OK,
        )


class HypBasisView(APIView):
    """
    GET /api/hyp0f1/basis/?lam=2&eta=-1&b_max_twice=7
    -> [0F1(1/2; z), ..., 0F1(b_max; z)] with z = eta lam^2 / 4
    """
    permission_classes = [permissions.AllowAny]

    def get(self, request):
        ser = HypBasisQuerySerializer(data=request.query_params)
        ser.is_valid(raise_exception=True)
        lam = ser.validated_data["lam"]
        eta = ser.validated_data["eta"]
        b_max_twice = ser.validated_data["b_max_twice"]

        try:
            values = hyp0f1_basis(lam, eta, b_max_twice)
        except OscOpsError as e:
            return library_error_response(e)

        return Response(
            {
                "lam": lam,
                "eta": eta,
                "b": [f"{2 * i + 1}/2" for i in range(len(values))],
                "values": values,
            },
            status=status.HTTP_200_OK,
        )
