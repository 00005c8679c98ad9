"""Pure-Python implementation of the double-description adjacency kernel.

Zero sets arrive as a ``(nrays, nwords)`` ``uint64`` array; row ``i`` is a
bitset of the constraints that ray ``i`` satisfies with equality.  Mirrors
``_ddcore.pyx`` exactly and is used when the extension is not built.
"""


def _row_ints(zero_sets):
    nwords = zero_sets.shape[1]
    out = []
    for row in zero_sets.tolist():
        v = 0
        for w in range(nwords - 1, -1, -1):
            v = (v << 64) | row[w]
        out.append(v)
    return out


def adjacent_pairs(zero_sets, pos, neg, min_common):
    """Pairs ``(p, n)`` of rays adjacent in the current cone.

    A pair qualifies when the common zero set has at least ``min_common``
    members and no third ray's zero set contains it.
    """
    rows = _row_ints(zero_sets)
    nrays = len(rows)
    out = []
    for p in pos:
        zp = rows[p]
        for n in neg:
            common = zp & rows[n]
            if common.bit_count() < min_common:
                continue
            for t in range(nrays):
                if t != p and t != n and common & rows[t] == common:
                    break
            else:
                out.append((p, n))
    return out
