from ._hatlab import *  # noqa: F401,F403
from ._hatlab import __doc__  # noqa: F401
