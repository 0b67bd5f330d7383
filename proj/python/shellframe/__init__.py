"""Thin-shell elasticity on lines-of-curvature surface patches."""

try:
    from ._shellframe import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _shellframe import *  # noqa: F401,F403  (in-build layout)
