"""JSON encodings for matrices, deformation operators and Fock tables.

Real matrix::

    {"rows": n, "cols": m, "data": [row-major numbers]}

Complex matrix::

    {"rows": n, "cols": m, "re": [...], "im": [...]}

Deformation operator::

    {"lambda": 0.3, "K": <matrix> | {"diag_fn": [values]}}

Fock tables are plain arrays or a named built-in::

    {"name": "identity" | "sinh" | "affine", "lambda": 0.2}
"""

import json

import numpy as np


def matrix_to_json(M):
    M = np.atleast_2d(np.asarray(M))
    rows, cols = M.shape
    if np.iscomplexobj(M) and np.any(M.imag != 0):
        return {
            "rows": rows,
            "cols": cols,
            "re": M.real.ravel().tolist(),
            "im": M.imag.ravel().tolist(),
        }
    return {"rows": rows, "cols": cols, "data": np.real(M).ravel().tolist()}


def matrix_from_json(doc):
    """Decode either matrix form; nested lists are accepted as a convenience."""
    if isinstance(doc, list):
        return np.array(doc, dtype=complex if _has_complex(doc) else float)
    rows, cols = int(doc["rows"]), int(doc["cols"])
    if "data" in doc:
        data = np.asarray(doc["data"], dtype=float)
    elif "re" in doc:
        data = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(
            doc.get("im", np.zeros(rows * cols)), dtype=float
        )
    else:
        raise ValueError("matrix document needs 'data' or 're'/'im'")
    if data.size != rows * cols:
        raise ValueError(
            f"matrix document has {data.size} entries, expected {rows}x{cols}"
        )
    M = data.reshape(rows, cols)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix document has non-finite entries")
    return M


def _has_complex(obj):
    if isinstance(obj, list):
        return any(_has_complex(o) for o in obj)
    return isinstance(obj, complex)


def dumps(doc):
    """Deterministic JSON text: sorted keys, fixed indentation."""
    return json.dumps(doc, sort_keys=True, indent=2, default=_default)


def _default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def table_from_json(doc, D, kind="f"):
    """Resolve an f or K table from JSON to an array of length ``D``.

    Named built-ins (``lambda`` defaults to 0.2):

    * ``identity`` -- all ones,
    * ``affine``   -- f(n) = sqrt(1 + lambda n),
    * ``sinh``     -- for ``kind="htilde"``: sinh(lambda n)/sinh(lambda);
      for ``kind="f"``: the q-oscillator profile with n f(n)^2 = sinh(lambda n)/sinh(lambda)
      (f(0) taken as the n -> 0 limit).
    """
    if isinstance(doc, str):
        doc = {"name": doc}
    if isinstance(doc, list):
        values = np.asarray(doc, dtype=float)
        if values.size < D:
            raise ValueError(f"table has {values.size} entries, need {D}")
        return values[:D]
    name = doc["name"]
    lam = float(doc.get("lambda", 0.2))
    n = np.arange(D, dtype=float)
    if name == "identity":
        return np.ones(D)
    if name == "affine":
        return np.sqrt(1 + lam * n)
    if name == "sinh":
        if kind == "htilde":
            return np.sinh(lam * n) / np.sinh(lam)
        f2 = np.empty(D)
        f2[0] = lam / np.sinh(lam)
        f2[1:] = np.sinh(lam * n[1:]) / (n[1:] * np.sinh(lam))
        return np.sqrt(f2)
    raise ValueError(f"unknown table {name!r}")
