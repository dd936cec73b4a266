"""Swarm resilience toolkit: spectral metrics, criticality ranking, attack decay."""

try:
    from ._swarmres import *  # noqa: F401,F403  (installed layout)
    from ._swarmres import __version__  # noqa: F401
except ImportError:  # in-tree build: the module sits next to this package on sys.path
    from _swarmres import *  # noqa: F401,F403
    from _swarmres import __version__  # noqa: F401
