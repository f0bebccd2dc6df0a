"""Pure-Python PBW straightening kernels.

The compiled module socenter._straighten implements the same two functions;
socenter.kernels picks whichever is available.  Words are bytes of generator
ids, ordered non-decreasing when normal.  Each rewrite either swaps one
inverted adjacent pair (same length, one inversion fewer) or replaces the
pair by its bracket (strictly shorter word), so the reduction terminates:
the measure (length, inversion count) strictly decreases lexicographically.

Coefficients are opaque objects supporting +, unary -, * by a scalar and
truthiness (false means zero); zero terms are purged eagerly.
"""


def _acc(d, w, c):
    v = d.get(w)
    if v is None:
        d[w] = c
    else:
        v = v + c
        if v:
            d[w] = v
        else:
            del d[w]


def straighten(terms, bracket, gcount):
    """Reduce a dict {word: coeff} to PBW normal form.

    bracket is a flat table of length gcount*gcount: entry g1*gcount+g2 is
    0 when [g1,g2] vanishes and otherwise ±(g+1) encoding the single signed
    generator of the bracket (the so_n structure constants are that sparse).
    """
    out = {}
    if not terms:
        return out
    maxlen = 0
    buckets = {}
    for w, c in terms.items():
        if not c:
            continue
        lw = len(w)
        if lw > maxlen:
            maxlen = lw
        _acc(buckets.setdefault(lw, {}), w, c)
    for length in range(maxlen, -1, -1):
        work = buckets.get(length)
        if not work:
            continue
        lower = None
        while work:
            w, c = work.popitem()
            p = -1
            for k in range(length - 1):
                if w[k] > w[k + 1]:
                    p = k
                    break
            if p < 0:
                _acc(out, w, c)
                continue
            g1 = w[p]
            g2 = w[p + 1]
            _acc(work, w[:p] + bytes((g2, g1)) + w[p + 2 :], c)
            b = bracket[g1 * gcount + g2]
            if b:
                if lower is None:
                    lower = buckets.setdefault(length - 1, {})
                nw = w[:p] + bytes(((b if b > 0 else -b) - 1,)) + w[p + 2 :]
                _acc(lower, nw, c if b > 0 else -c)
    return out


def straighten_general(terms, bracket, gcount, head_drop=None, tail_drop=None, keep_dropped=False):
    """Straighten over an arbitrary ordered basis with general brackets.

    bracket is a flat list of length gcount*gcount whose entries are None or
    tuples of (generator, scalar) pairs.  head_drop / tail_drop are byte
    masks: a word is routed to the dropped bin as soon as its first letter is
    head-marked or its last letter is tail-marked (such words lie in the left
    ideal of the marked head letters resp. the right ideal of the tail ones,
    which is exactly what the triangular projections discard).
    """
    out = {}
    dropped = {} if keep_dropped else None
    if not terms:
        return (out, dropped) if keep_dropped else out
    maxlen = 0
    buckets = {}
    for w, c in terms.items():
        if not c:
            continue
        lw = len(w)
        if lw > maxlen:
            maxlen = lw
        _acc(buckets.setdefault(lw, {}), w, c)
    for length in range(maxlen, -1, -1):
        work = buckets.get(length)
        if not work:
            continue
        while work:
            w, c = work.popitem()
            if length:
                if head_drop is not None and head_drop[w[0]]:
                    if keep_dropped:
                        _acc(dropped, w, c)
                    continue
                if tail_drop is not None and tail_drop[w[length - 1]]:
                    if keep_dropped:
                        _acc(dropped, w, c)
                    continue
            p = -1
            for k in range(length - 1):
                if w[k] > w[k + 1]:
                    p = k
                    break
            if p < 0:
                _acc(out, w, c)
                continue
            g1 = w[p]
            g2 = w[p + 1]
            _acc(work, w[:p] + bytes((g2, g1)) + w[p + 2 :], c)
            entry = bracket[g1 * gcount + g2]
            if entry:
                lower = buckets.setdefault(length - 1, {})
                head = w[:p]
                tail = w[p + 2 :]
                for g, k in entry:
                    _acc(lower, head + bytes((g,)) + tail, c * k)
    return (out, dropped) if keep_dropped else out
