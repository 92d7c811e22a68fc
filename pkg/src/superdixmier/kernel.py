"""Backend selection for the straightening kernel.

The compiled extension is used when it was built; setting the environment
variable SUPERDIXMIER_PURE_PYTHON=1 forces the pure-Python version.
"""

import os

from . import _straighten_py

BACKEND = "python"
Straightener = _straighten_py.Straightener
PyStraightener = _straighten_py.Straightener
CStraightener = None

try:
    from . import _straighten_c

    CStraightener = _straighten_c.Straightener
except ImportError:  # extension not built
    pass

if CStraightener is not None and not os.environ.get("SUPERDIXMIER_PURE_PYTHON"):
    Straightener = CStraightener
    BACKEND = "cython"

__all__ = ["BACKEND", "Straightener", "PyStraightener", "CStraightener"]
