"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` twin is used. Setting ``MCOV_PURE_PYTHON=1`` forces
the fallback.
"""

import os

if os.environ.get("MCOV_PURE_PYTHON") == "1":
    from mcov._pykernels import (  # noqa: F401
        allowed_edges,
        dependence_rows,
        disconnecting_triples,
        has_perfect_matching,
        maximum_matching,
    )

    BACKEND = "python"
else:
    try:
        from mcov._ckernels import (  # noqa: F401
            allowed_edges,
            dependence_rows,
            disconnecting_triples,
            has_perfect_matching,
            maximum_matching,
        )

        BACKEND = "cython"
    except ImportError:
        from mcov._pykernels import (  # noqa: F401
            allowed_edges,
            dependence_rows,
            disconnecting_triples,
            has_perfect_matching,
            maximum_matching,
        )

        BACKEND = "python"
