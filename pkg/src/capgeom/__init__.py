"""Exact finite projective geometry: fields, spaces, caps, Singer cycles and
the transitive co-transitive cap classification checks."""

__version__ = "0.1.0"

from .caps import PointSet, chord_profile, is_cap, is_complete  # noqa: E402
from .field import make_field  # noqa: E402
from .space import pg  # noqa: E402

__all__ = ["PointSet", "chord_profile", "is_cap", "is_complete", "make_field", "pg", "__version__"]
