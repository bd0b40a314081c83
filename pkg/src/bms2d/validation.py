"""Input coercion and validation helpers shared by the estimator and CLI."""

from __future__ import annotations

import os
from math import gcd

from .bipoly import EvaluationPoint
from .gf import FieldError, root_of_unity
from .tables import IncompleteTable, parse_table


def as_incomplete_table(X, *, field=None):
    """Coerce a table argument: an IncompleteTable passes through, a string
    is parsed as table text, a path-like is read from disk."""
    if isinstance(X, IncompleteTable):
        return X
    if isinstance(X, os.PathLike):
        with open(X, "r", encoding="utf-8") as fh:
            return parse_table(fh.read(), field=field)
    if isinstance(X, str):
        if "\n" not in X and os.path.exists(X):
            with open(X, "r", encoding="utf-8") as fh:
                return parse_table(fh.read(), field=field)
        return parse_table(X, field=field)
    raise TypeError(f"cannot interpret {type(X).__name__} as a table")


def check_semisimple(field, shape):
    """gcd(q, r1*r2) = 1 is required for the recurrence structure."""
    q = field.spec.q
    if gcd(q, shape[0] * shape[1]) != 1:
        raise FieldError(f"gcd({q}, {shape[0]}*{shape[1]}) != 1: the table "
                         f"periods must be prime to the field characteristic")


def resolve_point(table, *, alpha_exps=None):
    """The evaluation point for a table, from an override or its header;
    validates root orders and the semisimplicity condition."""
    check_semisimple(table.field, table.shape)
    if alpha_exps is not None:
        return EvaluationPoint.from_exponents(table.field, alpha_exps, table.shape)
    if table.alpha_exps is not None:
        return table.point()
    a1 = root_of_unity(table.field, table.shape[0])
    a2 = root_of_unity(table.field, table.shape[1])
    return EvaluationPoint(a1, a2, table.shape[0], table.shape[1])
