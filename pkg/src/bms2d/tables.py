"""Incomplete tables, shifted working arrays, and hyperbolic-window detection.

A table is an r1 x r2 grid of field values with some cells unknown.  All
reads wrap modulo the shape, matching the doubly periodic arrays the
recurrence machinery assumes.
"""

from __future__ import annotations

from .bipoly import EvaluationPoint
from .gf import FieldError, field_for
from .lattice import DoesNotFit, hyperbolic_set


class TableFormatError(ValueError):
    pass


class _Grid:
    __slots__ = ("field", "shape", "cells")

    def __init__(self, field, shape, cells):
        r1, r2 = shape
        if len(cells) != r1 or any(len(row) != r2 for row in cells):
            raise TableFormatError(f"grid does not match shape {r1}x{r2}")
        self.field = field
        self.shape = (r1, r2)
        self.cells = tuple(tuple(row) for row in cells)

    def get(self, pos):
        """Cell value read modulo the shape; None for unknown cells."""
        return self.cells[pos[0] % self.shape[0]][pos[1] % self.shape[1]]

    def known_positions(self):
        return [(i, j) for i in range(self.shape[0]) for j in range(self.shape[1])
                if self.cells[i][j] is not None]

    def hole_positions(self):
        return [(i, j) for i in range(self.shape[0]) for j in range(self.shape[1])
                if self.cells[i][j] is None]

    @property
    def is_complete(self):
        return all(v is not None for row in self.cells for v in row)

    def _replaced(self, pos, value):
        i, j = pos[0] % self.shape[0], pos[1] % self.shape[1]
        rows = [list(row) for row in self.cells]
        rows[i][j] = value
        return rows


class IncompleteTable(_Grid):
    """An r1 x r2 table of Known/Unknown values plus its evaluation data."""

    __slots__ = ("alpha_exps",)

    def __init__(self, field, shape, cells, alpha_exps=None):
        super().__init__(field, shape, cells)
        self.alpha_exps = tuple(alpha_exps) if alpha_exps is not None else None

    def point(self):
        if self.alpha_exps is None:
            raise FieldError("the table does not declare evaluation exponents")
        return EvaluationPoint.from_exponents(self.field, self.alpha_exps, self.shape)

    def with_cell(self, pos, value):
        return IncompleteTable(self.field, self.shape, self._replaced(pos, value),
                               self.alpha_exps)

    def __eq__(self, other):
        if not isinstance(other, IncompleteTable):
            return NotImplemented
        return (self.field is other.field and self.shape == other.shape
                and self.cells == other.cells and self.alpha_exps == other.alpha_exps)

    def __hash__(self):
        return hash((id(self.field), self.shape, self.alpha_exps))


class WorkingArray(_Grid):
    """A full shifted copy of a table: u[(i,j)] = h[tau + (i,j)] mod shape."""

    __slots__ = ("tau",)

    def __init__(self, field, shape, cells, tau=(0, 0)):
        super().__init__(field, shape, cells)
        self.tau = tuple(tau)

    def with_cell(self, pos, value):
        return WorkingArray(self.field, self.shape, self._replaced(pos, value), self.tau)


# -- text format ----------------------------------------------------------------


def parse_table(text, *, field=None):
    """Parse the table file format: `#` header lines (field, shape, alpha)
    followed by r1 rows of r2 whitespace-separated tokens (`*` = unknown)."""
    header = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if rows:
                raise TableFormatError(f"line {lineno}: comments are only allowed "
                                       "in the header block")
            body = line.lstrip("#").strip()
            if not body:
                continue
            key, *rest = body.split(None, 1)
            header[key] = rest[0] if rest else ""
            continue
        rows.append((lineno, line.split()))

    if "shape" not in header:
        raise TableFormatError("missing `# shape r1 r2` header")
    try:
        r1, r2 = (int(tok) for tok in header["shape"].split())
    except ValueError as exc:
        raise TableFormatError(f"bad shape header: {header['shape']!r}") from exc

    if field is None:
        if "field" not in header:
            raise TableFormatError("missing `# field p=.. m=.. modulus=..` header")
        opts = dict(item.split("=", 1) for item in header["field"].split())
        try:
            p = int(opts["p"])
            m = int(opts["m"])
        except (KeyError, ValueError) as exc:
            raise TableFormatError(f"bad field header: {header['field']!r}") from exc
        field = field_for(p, m, opts.get("modulus"))

    alpha_exps = None
    if "alpha" in header:
        try:
            e1, e2 = (int(tok) for tok in header["alpha"].split())
        except ValueError as exc:
            raise TableFormatError(f"bad alpha header: {header['alpha']!r}") from exc
        alpha_exps = (e1, e2)

    if len(rows) != r1:
        raise TableFormatError(f"expected {r1} rows, found {len(rows)}")
    cells = []
    for lineno, tokens in rows:
        if len(tokens) != r2:
            raise TableFormatError(f"line {lineno}: expected {r2} tokens, "
                                   f"found {len(tokens)}")
        row = []
        for tok in tokens:
            if tok == "*":
                row.append(None)
            else:
                try:
                    row.append(field.parse(tok))
                except FieldError as exc:
                    raise TableFormatError(f"line {lineno}: {exc}") from exc
        cells.append(row)
    return IncompleteTable(field, (r1, r2), cells, alpha_exps)


def format_table(table):
    spec = table.field.spec
    if spec.p == 2:
        mod = hex(sum(c << i for i, c in enumerate(spec.modulus)))
    else:
        mod = ",".join(str(c) for c in spec.modulus)
    lines = [f"# field p={spec.p} m={spec.degree} modulus={mod}",
             f"# shape {table.shape[0]} {table.shape[1]}"]
    if table.alpha_exps is not None:
        lines.append(f"# alpha {table.alpha_exps[0]} {table.alpha_exps[1]}")
    width = max((len(str(v)) if v is not None else 1)
                for row in table.cells for v in row)
    for row in table.cells:
        lines.append(" ".join((str(v) if v is not None else "*").ljust(width)
                              for v in row).rstrip())
    return "\n".join(lines) + "\n"


# -- hyperbolic windows ----------------------------------------------------------


def max_amplitude_t(shape):
    return min(shape[0] // 2, shape[1] // 2)


def window_holes(table, tau, t):
    """Unknown positions of the shifted window tau + B(2t+1), as offsets."""
    holes = []
    for l in hyperbolic_set(2 * t + 1, table.shape):
        if table.get((tau[0] + l[0], tau[1] + l[1])) is None:
            holes.append(l)
    return holes


def detect_hyperbolic(table):
    """All offsets tau whose shifted window tau + B(2t+1) is fully known,
    for the largest achievable t; sorted row-major."""
    best_t = 0
    found = []
    tmax = max_amplitude_t(table.shape)
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            for t in range(tmax, 0, -1):
                if not window_holes(table, (i, j), t):
                    if t > best_t:
                        best_t, found = t, []
                    if t == best_t:
                        found.append(((i, j), t))
                    break
    return found


def extract_working(table, tau, t=None):
    """Full shifted copy of the table; unknown source cells stay unknown.

    When t is given, the shifted window must fit the grid (the caller may
    still force a window containing holes)."""
    if t is not None and 2 * t > min(table.shape):
        raise DoesNotFit(f"t={t} needs a grid of at least {2 * t}x{2 * t}")
    r1, r2 = table.shape
    cells = [[table.get((tau[0] + i, tau[1] + j)) for j in range(r2)]
             for i in range(r1)]
    return WorkingArray(table.field, table.shape, cells, tau)


def complete_table(table, generator, tau, point):
    """Fill every unknown cell h_n with generator(alpha^(n - tau))."""
    r1, r2 = table.shape
    cells = []
    for i in range(r1):
        row = []
        for j in range(r2):
            v = table.cells[i][j]
            if v is None:
                v = generator.evaluate(point.at(((i - tau[0]) % r1, (j - tau[1]) % r2)))
            row.append(v)
        cells.append(row)
    return IncompleteTable(table.field, table.shape, cells, table.alpha_exps)


def table_from_function(field, shape, fn, alpha_exps=None):
    """Build a complete table by evaluating fn at every grid position."""
    cells = [[fn((i, j)) for j in range(shape[1])] for i in range(shape[0])]
    return IncompleteTable(field, shape, cells, alpha_exps)
