"""Dense GF(2) matrices as integer bit-rows, with rank by Gaussian elimination."""

from __future__ import annotations


class Gf2Matrix:
    """Bit matrix over the two-element field.

    Row i is stored as an int whose bit j is the entry (i, j).  Optional row
    and column labels keep track of which generators index each axis.
    """

    __slots__ = ("n_rows", "n_cols", "rows", "row_labels", "col_labels")

    def __init__(self, n_rows, n_cols, rows=None, row_labels=None, col_labels=None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows = list(rows) if rows is not None else [0] * n_rows
        if len(self.rows) != n_rows:
            raise ValueError(f"expected {n_rows} rows, got {len(self.rows)}")
        mask = (1 << n_cols) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError("row has bits outside the column range")
        self.row_labels = list(row_labels) if row_labels is not None else list(range(n_rows))
        self.col_labels = list(col_labels) if col_labels is not None else list(range(n_cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 << i for i in range(n)])

    def entry(self, i, j):
        return (self.rows[i] >> j) & 1

    def row_as_bits(self, i):
        return [(self.rows[i] >> j) & 1 for j in range(self.n_cols)]

    def is_zero(self):
        return not any(self.rows)

    def rank(self):
        return gf2_rank(self)

    def to_lists(self):
        return [self.row_as_bits(i) for i in range(self.n_rows)]

    def __eq__(self, other):
        return (
            isinstance(other, Gf2Matrix)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Gf2Matrix({self.n_rows}x{self.n_cols}, rows={self.rows!r})"


def gf2_rank(matrix):
    """GF(2) rank via elimination on the bit-rows.

    Accepts a Gf2Matrix or any iterable of int bit-rows.
    """
    rows = matrix.rows if isinstance(matrix, Gf2Matrix) else [int(r) for r in matrix]
    pivots = {}  # leading-bit index -> pivot row
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in pivots:
                row ^= pivots[lead]
            else:
                pivots[lead] = row
                break
    return len(pivots)


def gf2_compose_is_zero(second, first):
    """True when second ∘ first vanishes; first maps into second's row space.

    ``first`` is an (m x n) matrix and ``second`` an (n x p) matrix whose row
    basis matches first's column basis; the composite sends each row of
    ``first`` to the XOR of the ``second`` rows its bits select.
    """
    if first.n_cols != second.n_rows:
        raise ValueError(
            f"basis mismatch: first has {first.n_cols} columns, second has {second.n_rows} rows"
        )
    for row in first.rows:
        acc = 0
        r = row
        while r:
            j = (r & -r).bit_length() - 1
            acc ^= second.rows[j]
            r &= r - 1
        if acc:
            return False
    return True
