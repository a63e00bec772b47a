"""Grid-HMM target localization from anchor range measurements."""

try:
    from ._gridloc import *  # noqa: F401,F403
    from ._gridloc import GridlocError  # noqa: F401
except ImportError:  # extension built out-of-tree (e.g. straight from CMake)
    from _gridloc import *  # noqa: F401,F403
    from _gridloc import GridlocError  # noqa: F401
