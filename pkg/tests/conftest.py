"""Hypothesis profile: exact arithmetic is slow, so no deadlines."""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")
