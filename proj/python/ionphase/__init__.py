from ._ionphase import *  # noqa: F401,F403
from ._ionphase import __doc__  # noqa: F401
