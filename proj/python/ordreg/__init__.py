"""Regression from a small labeled budget plus rankings or comparisons."""

try:
    from ._ordreg import *  # noqa: F401,F403
    from ._ordreg import __doc__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _ordreg import *  # noqa: F401,F403
