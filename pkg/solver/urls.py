from django.urls import path

from .views import PropagateView, SolveView

urlpatterns = [
    path("propagate/", PropagateView.as_view(), name="propagate"),
    path("solve/", SolveView.as_view(), name="solve"),
]
