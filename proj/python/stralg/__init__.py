from ._stralg import *  # noqa: F401,F403
from ._stralg import __doc__  # noqa: F401
