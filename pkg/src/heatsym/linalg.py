"""Exact sparse linear algebra over the rationals.

Rows are mappings ``column -> coefficient``.  Elimination is fraction-free:
each row is scaled to a primitive integer vector and every elimination step is
``a * row - b * pivot_row`` followed by division by the content gcd, so no
rational arithmetic occurs inside the loop.  Pivots are taken at the first
nonzero column in a fixed canonical column order.

Rows sharing no column never interact, so the matrix is first split into
connected components (by shared columns) that can be reduced independently,
optionally in worker processes.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence

IntRow = Dict[int, int]


def _primitive(row: Mapping[int, int]) -> IntRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g in (1, 0):
        return dict(row)
    return {c: v // g for c, v in row.items()}


def integer_row(row: Mapping[int, object]) -> IntRow:
    """Clear denominators of a rational row and make it primitive."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for c, v in row.items():
        v = v * den
        if isinstance(v, Fraction):
            v = v.numerator
        if v:
            out[c] = int(v)
    return _primitive(out) if out else out


class Echelon:
    """Incremental fraction-free row echelon form.

    ``insert`` reduces a row against the stored pivots and keeps it if a
    nonzero remainder survives, so inserting rows in order implements greedy
    selection of an independent subset.
    """

    def __init__(self):
        self.pivots: Dict[int, IntRow] = {}

    def reduce(self, row: IntRow) -> IntRow:
        r = dict(row)
        pivots = self.pivots
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                return r
            a = p[c]
            b = r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                for k in r:
                    r[k] *= a
            for k, v in p.items():
                nv = r.get(k, 0) - b * v
                if nv:
                    r[k] = nv
                else:
                    del r[k]
            if r:
                r = _primitive(r)
        return r

    def insert(self, row: IntRow) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _components(rows: Sequence[IntRow]) -> List[List[int]]:
    parent: Dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in rows:
        cols = list(row)
        for c in cols:
            parent.setdefault(c, c)
        for c in cols[1:]:
            ra, rb = find(cols[0]), find(c)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, List[int]] = {}
    for i, row in enumerate(rows):
        if row:
            groups.setdefault(find(next(iter(row))), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _select(rows: List[IntRow]) -> List[int]:
    ech = Echelon()
    return [i for i, r in enumerate(rows) if ech.insert(r)]


def independent_rows(
    rows: Sequence[Mapping[Hashable, object]],
    column_key: Optional[Callable] = None,
    jobs: int = 1,
) -> List[int]:
    """Indices of the rows kept by greedy insertion in input order.

    The result spans the same space as ``rows`` and its length is the rank.
    ``column_key`` fixes the canonical column order used for pivoting.
    """
    columns = sorted({c for r in rows for c in r}, key=column_key)
    index = {c: i for i, c in enumerate(columns)}
    int_rows = [integer_row({index[c]: v for c, v in r.items() if v}) for r in rows]
    comps = _components(int_rows)
    batches = [[int_rows[i] for i in comp] for comp in comps]
    if jobs > 1 and len(batches) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            picked = list(pool.map(_select, batches))
    else:
        picked = [_select(b) for b in batches]
    keep = [comp[j] for comp, sel in zip(comps, picked) for j in sel]
    return sorted(keep)


def rank(rows: Sequence[Mapping[Hashable, object]], column_key: Optional[Callable] = None, jobs: int = 1) -> int:
    return len(independent_rows(rows, column_key, jobs))


def solve_combination(
    vectors: Sequence[Mapping[Hashable, object]], target: Mapping[Hashable, object]
) -> Optional[List[Fraction]]:
    """Coefficients ``a`` with ``sum_k a_k vectors[k] == target``, or None.

    Plain Gauss-Jordan over ``Fraction``; meant for small systems such as
    expanding a bracket in a fixed generator basis.  When the vectors are
    dependent the free coefficients are set to zero.
    """
    cols = sorted({c for v in vectors for c in v} | set(target), key=repr)
    n = len(vectors)
    m = [[Fraction(v.get(c, 0)) for v in vectors] + [Fraction(target.get(c, 0))] for c in cols]
    pivot_cols = []
    r = 0
    for k in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][k] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][k]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][k] != 0:
                f = m[i][k]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(k)
        r += 1
    if any(row[n] != 0 for row in m[r:]):
        return None
    sol = [Fraction(0)] * n
    for i, k in enumerate(pivot_cols):
        sol[k] = m[i][n]
    return sol
