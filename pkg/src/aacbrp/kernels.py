"""Backend selection for the attack-mining kernel.

The compiled extension is used when it imports; set ``AACBRP_PURE_PYTHON=1``
to force the numpy implementation.
"""
from __future__ import annotations

import logging
import os

import numpy as np

from . import _kernels_py

log = logging.getLogger(__name__)

_compiled = None
if os.environ.get("AACBRP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        log.debug("compiled kernel unavailable, using numpy fallback")

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

BACKEND = "compiled" if _compiled is not None else "python"


def get_backend(name: str | None = None):
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} not available (have {sorted(BACKENDS)})") from None


def mine_attacks(cmp: np.ndarray, outcome: np.ndarray, backend: str | None = None):
    cmp = np.ascontiguousarray(cmp, dtype=np.int8)
    outcome = np.ascontiguousarray(outcome, dtype=np.int8)
    return get_backend(backend).mine_attacks(cmp, outcome)


def derived_relations(cmp: np.ndarray, outcome: np.ndarray, backend: str | None = None):
    cmp = np.ascontiguousarray(cmp, dtype=np.int8)
    outcome = np.ascontiguousarray(outcome, dtype=np.int8)
    return get_backend(backend).derived_relations(cmp, outcome)
