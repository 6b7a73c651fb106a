"""Da Vinci dome toolkit: rod patterns, surface maps, angular defects, form-finding."""

try:
    from ._davinci import *  # noqa: F401,F403
    from ._davinci import __version__  # noqa: F401
except ImportError:  # build-tree layout: module next to the package
    from _davinci import *  # noqa: F401,F403
    from _davinci import __version__  # noqa: F401
