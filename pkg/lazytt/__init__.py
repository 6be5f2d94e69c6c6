"""Exact train-track calculus... lazily, one split at a time"""

# ! Inside try-except so setup can still grab the __version__ prior to install
try:
    from . import config
    from . import errors
    from . import track
    from . import moves
    from . import measures
    from . import canonical
    from . import serialize
    from . import strips
    from . import subtracks
    from . import cubical
    from . import bicombing
    from . import dual
    from . import collapse
    from . import catalog
    from . import utils
    from . import inspect
    from . import alter
    from . import create
except Exception as e:
    print(e)

__version__ = '0.1.1'
