"""Sparse row echelon forms over the coefficient field.

Vectors are dicts ``coordinate -> Scalar``; the pivot of a vector is its
greatest coordinate under ``key``.  Rows are stored with pivot coefficient 1
and optionally carry a *tag*: the combination of inserted vectors they
represent, which lets :meth:`Echelon.express` return coordinates in terms of
the original inputs.
"""


def _axpy(acc, c, vec):
    """acc += c * vec, in place."""
    for k, v in vec.items():
        old = acc.get(k)
        if old is None:
            acc[k] = c * v
        else:
            s = old + c * v
            if s:
                acc[k] = s
            else:
                del acc[k]


class Echelon:
    def __init__(self, key=None):
        self.key = key or (lambda k: k)
        self.rows = {}  # pivot -> (row, tag)

    def __len__(self):
        return len(self.rows)

    def pivot(self, vec):
        return max(vec, key=self.key)

    def head_reduce(self, vec, tag=None):
        vec = dict(vec)
        tag = dict(tag) if tag is not None else None
        while vec:
            p = self.pivot(vec)
            entry = self.rows.get(p)
            if entry is None:
                break
            row, rtag = entry
            c = -vec[p]
            _axpy(vec, c, row)
            if tag is not None and rtag is not None:
                _axpy(tag, c, rtag)
        return vec, tag

    def contains(self, vec):
        return not self.head_reduce(vec)[0]

    def add(self, vec, tag=None):
        """Insert ``vec``; returns False (and stores nothing) if it is dependent."""
        vec, tag = self.head_reduce(vec, tag)
        if not vec:
            return False
        p = self.pivot(vec)
        inv = vec[p].inverse()
        vec = {k: v * inv for k, v in vec.items()}
        if tag is not None:
            tag = {k: v * inv for k, v in tag.items()}
        self.rows[p] = (vec, tag)
        return True

    def full_reduce(self, vec, tag=None):
        """Eliminate every pivot coordinate, largest first."""
        vec = dict(vec)
        tag = dict(tag) if tag is not None else None
        key = self.key
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return vec, tag
            p = max(hits, key=key)
            row, rtag = self.rows[p]
            c = -vec[p]
            _axpy(vec, c, row)
            if tag is not None and rtag is not None:
                _axpy(tag, c, rtag)

    def express(self, vec):
        """Write ``vec`` through the inserted tags: ``(combination, remainder)``."""
        rem, tag = self.full_reduce(vec, {})
        return {k: -v for k, v in tag.items()}, rem

    def reduced_rows(self):
        """Reduced row echelon form as ``{pivot: (row, tag)}``."""
        out = {}
        for p in sorted(self.rows, key=self.key):
            row, tag = self.rows[p]
            rest = {k: v for k, v in row.items() if k != p}
            rest_tag = None
            if tag is not None:
                rest_tag = dict(tag)
            red, red_tag = _reduce_by(out, rest, rest_tag, self.key)
            red[p] = row[p]
            out[p] = (red, red_tag)
        return out


def _reduce_by(rows, vec, tag, key):
    while True:
        hits = [k for k in vec if k in rows]
        if not hits:
            return vec, tag
        p = max(hits, key=key)
        row, rtag = rows[p]
        c = -vec[p]
        _axpy(vec, c, row)
        if tag is not None and rtag is not None:
            _axpy(tag, c, rtag)
