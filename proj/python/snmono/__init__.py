"""SN spaces, L-positive sets, Fitzpatrick functions and quasidensity certification."""

try:
    from ._snmono import *  # noqa: F401,F403
    from ._snmono import __doc__ as _doc
except ImportError:  # in-tree builds expose the module next to the package
    from _snmono import *  # noqa: F401,F403
    from _snmono import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
