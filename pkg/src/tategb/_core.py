"""Kernel backend selection.

The compiled extension ``_corecy`` is preferred when it imports; the
pure-Python module ``_corepy`` is the fallback.  Set the environment
variable ``TATEGB_BACKEND`` to ``pure`` or ``compiled`` to force one,
or call :func:`use` at runtime (used by the kernel benchmark).
"""

import os

from . import _corepy

_FORCED = os.environ.get("TATEGB_BACKEND", "")

impl = None

if _FORCED == "pure":
    impl = _corepy
else:
    try:
        from . import _corecy  # type: ignore[attr-defined]

        impl = _corecy
    except ImportError:
        if _FORCED == "compiled":
            raise
        impl = _corepy


def available():
    names = ["pure"]
    try:
        from . import _corecy  # noqa: F401

        names.append("compiled")
    except ImportError:
        pass
    return names


def use(name):
    """Switch the active kernel; returns the previously active name."""
    global impl
    before = active()
    if name == "pure":
        impl = _corepy
    elif name == "compiled":
        from . import _corecy

        impl = _corecy
    else:
        raise ValueError(f"unknown backend {name!r}")
    return before


def active():
    return impl.BACKEND
