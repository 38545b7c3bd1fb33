"""JSON serialization of covariance matrices.

Document layout::

    {"n_modes": N, "ordering": "xpxp", "hbar": 2,
     "matrix": [[...], ...], "mean": [...]}

``mean`` is optional. Readers reject unknown orderings, a different
``hbar``, wrong dimensions and asymmetry above ``1e-9``.
"""

import json

import numpy as np

from ._validation import SYMMETRY_TOL
from .errors import InvalidArgumentError
from .states import GaussianState


def state_to_dict(state):
    st = state if isinstance(state, GaussianState) else GaussianState(state)
    doc = {
        "n_modes": st.n_modes,
        "ordering": "xpxp",
        "hbar": 2,
        "matrix": st.cm.tolist(),
    }
    if np.any(st.mean != 0):
        doc["mean"] = st.mean.tolist()
    return doc


def state_from_dict(doc):
    """Build a :class:`GaussianState` from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise InvalidArgumentError("covariance document must be a JSON object")
    for key in ("n_modes", "ordering", "matrix"):
        if key not in doc:
            raise InvalidArgumentError(f"missing field {key!r}")
    if doc["ordering"] != "xpxp":
        raise InvalidArgumentError(f"unknown ordering {doc['ordering']!r}")
    if doc.get("hbar", 2) != 2:
        raise InvalidArgumentError(f"unsupported hbar {doc['hbar']!r}; only 2 is accepted")
    n = doc["n_modes"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidArgumentError(f"n_modes must be a positive integer, got {n!r}")
    try:
        m = np.array(doc["matrix"], dtype=float)
    except (TypeError, ValueError):
        raise InvalidArgumentError("matrix must be a rectangular array of numbers") from None
    if m.shape != (2 * n, 2 * n):
        raise InvalidArgumentError(f"matrix shape {m.shape} does not match n_modes={n}")
    if np.abs(m - m.T).max() > SYMMETRY_TOL:
        raise InvalidArgumentError("matrix is not symmetric")
    mean = doc.get("mean")
    if mean is not None:
        mean = np.array(mean, dtype=float)
        if mean.shape != (2 * n,):
            raise InvalidArgumentError(f"mean must have length {2 * n}")
    return GaussianState(m, mean)


def dumps(state):
    return json.dumps(state_to_dict(state), indent=2)


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"invalid JSON: {exc}") from None
    return state_from_dict(doc)


def write_state(path, state):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(state))
        fh.write("\n")


def read_state(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
