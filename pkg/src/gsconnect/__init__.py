"""Graph-state connectivity toolkit.

Graph transformations under local complementation and Pauli measurements,
multi-star connectivity protocols, and a stabilizer-tableau oracle that
checks the graph rules.
"""

from __future__ import annotations

from .builders import *  # noqa: F401,F403
from .canon import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .graph import *  # noqa: F401,F403
from .io import *  # noqa: F401,F403
from .kernels import BACKEND
from .measurement import *  # noqa: F401,F403
from .oracle import *  # noqa: F401,F403
from .protocols import *  # noqa: F401,F403
from .search import *  # noqa: F401,F403

__version__ = "0.1.0"
