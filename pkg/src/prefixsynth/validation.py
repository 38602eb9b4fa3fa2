"""Input checking shared by the estimators and the CLI."""

from __future__ import annotations

import numpy as np

from .circuit import ArrivalProfile


def check_arrival_times(X):
    """Return arrival times as a tuple of Python ints.

    Accepts an :class:`ArrivalProfile`, a 1-D sequence, or a 2-D array with
    a single row. Values must be nonnegative integers (integral floats are
    accepted).
    """
    if isinstance(X, ArrivalProfile):
        return X.times
    if isinstance(X, (str, bytes)):
        raise TypeError("arrival times must be numeric, not a string")
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 2 and arr.shape[0] == 1:
        arr = arr[0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D profile, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("arrival profile needs at least one input")
    times = []
    for v in arr:
        if isinstance(v, (bool, np.bool_)):
            raise TypeError("arrival times must be integers, got a bool")
        if isinstance(v, (int, np.integer)):
            t = int(v)
        else:
            try:
                f = float(v)
            except (TypeError, ValueError):
                raise TypeError(f"arrival time {v!r} is not a number") from None
            if not np.isfinite(f) or f != int(f):
                raise ValueError(f"arrival time {v!r} is not an integer")
            t = int(f)
        if t < 0:
            raise ValueError(f"arrival time {t} is negative")
        times.append(t)
    return tuple(times)


def check_bit_matrix(X, n_columns):
    """0/1 matrix of shape (m, n_columns) as uint8."""
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != n_columns:
        raise ValueError(f"expected shape (m, {n_columns}), got {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("bit matrix may only contain 0 and 1")
    return arr.astype(np.uint8)


def check_operands(X, n):
    """Operand pairs ``(A, B)`` with ``0 <= A, B < 2**n`` as two lists of ints."""
    rows = X.tolist() if isinstance(X, np.ndarray) else [list(r) for r in X]
    if rows and not isinstance(rows[0], (list, tuple)):
        rows = [rows]
    a_vals, b_vals = [], []
    limit = 1 << n
    for row in rows:
        if len(row) != 2:
            raise ValueError(f"each row must be an (A, B) pair, got {row!r}")
        a, b = int(row[0]), int(row[1])
        if not (0 <= a < limit and 0 <= b < limit):
            raise ValueError(f"operands {a}, {b} do not fit in {n} bits")
        a_vals.append(a)
        b_vals.append(b)
    return a_vals, b_vals
