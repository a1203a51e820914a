"""Stationary covariances and teleportation metrics for an
electro-optomechanical transducer.

Thin wrapper over the compiled extension. In an installed package the
extension lives inside this package; in a build tree it sits next to the
build directory on PYTHONPATH.
"""

try:
    from eomsim._core import *  # noqa: F401,F403
    from eomsim._core import __doc__ as _core_doc
except ImportError:  # build-tree layout
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = _core_doc or __doc__
__version__ = "0.1.0"
