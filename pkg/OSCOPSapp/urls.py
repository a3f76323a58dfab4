from django.urls import path

from .views import (
    ReportView,
    SweepView,
    HypBasisView,
)

urlpatterns = [
    path("report/", ReportView.as_view(), name="report"),
    path("sweeps/", SweepView.as_view(), name="sweeps"),
    path("hyp0f1/basis/", HypBasisView.as_view(), name="hyp0f1_basis"),
]
