"""k-monotonicity testing laboratory: python bindings for the C++ core."""

try:
    from kmtlab._kmt import *  # packaged wheel layout
    from kmtlab import _kmt as _core
except ImportError:  # in-tree build: the extension sits on sys.path directly
    from _kmt import *
    import _kmt as _core

__version__ = "0.1.0"
__all__ = [name for name in dir(_core) if not name.startswith("_")]
