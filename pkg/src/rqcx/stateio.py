"""Reading state documents and option files used by the command line.

A state document is JSON with exactly one of the keys:

    "abcdrs"  -- array of six reals [a, b, c, d, r, s]
    "bloch"   -- object with t30, t03, t11, t22, t33
    "matrix"  -- 4x4 array of [re, im] pairs
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .states import BlochX, InvalidStateError, XStateParams, bloch_to_xstate

_STATE_KEYS = ("abcdrs", "bloch", "matrix")


def load_state_document(path: str | Path) -> XStateParams | np.ndarray:
    """Parse a state file; returns X parameters or a raw density matrix."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidStateError(f"cannot read state file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidStateError("state file must hold a JSON object")
    present = [k for k in _STATE_KEYS if k in doc]
    if len(present) != 1:
        raise InvalidStateError(
            f"state file must carry exactly one of {_STATE_KEYS}, found {present or 'none'}"
        )
    key = present[0]
    if key == "abcdrs":
        vals = doc[key]
        if not isinstance(vals, list) or len(vals) != 6:
            raise InvalidStateError("'abcdrs' must be an array of 6 reals")
        return XStateParams(*(float(v) for v in vals))
    if key == "bloch":
        obj = doc[key]
        try:
            b = BlochX(*(float(obj[k]) for k in ("t30", "t03", "t11", "t22", "t33")))
        except (KeyError, TypeError) as exc:
            raise InvalidStateError(f"'bloch' must name t30, t03, t11, t22, t33: {exc}") from exc
        return bloch_to_xstate(b)
    mat = doc[key]
    arr = np.asarray(mat, dtype=float)
    if arr.shape != (4, 4, 2):
        raise InvalidStateError("'matrix' must be a 4x4 array of [re, im] pairs")
    return arr[..., 0] + 1.0j * arr[..., 1]


def load_options_file(path: str | Path) -> dict:
    """Option file mirroring the command-line flags (flags win on conflict)."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("config file must hold a JSON object")
    return doc
