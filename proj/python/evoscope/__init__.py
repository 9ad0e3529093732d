"""Analysis of nonuniform exponential behavior of evolution families."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__  # noqa: F401
except ImportError:  # in-tree build: extension sits next to the package
    from _core import *  # noqa: F401,F403
