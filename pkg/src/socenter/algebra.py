"""The enveloping algebra of so_n on exact PBW normal forms.

so_n is realized on the antisymmetric matrices E_{j,i} - E_{i,j}, denoted
A(j,i) with 1 <= i < j <= n.  Monomials are words of generator ids sorted
non-decreasing under the lexicographic order on (j,i); an Element maps such
words to UPoly coefficients.  Elements are treated as immutable values; all
operations return fresh normal forms.
"""

import json
from functools import lru_cache

from .kernels import straighten
from .scalars import GR_I, GaussianRational, UP_ONE, UPoly, gr, rational

MAX_RANK = 22  # generator ids must fit in a byte


def gen_id(j, i):
    """Id of A(j,i), j > i >= 1; ids increase with (j,i) lexicographic."""
    return (j - 1) * (j - 2) // 2 + i - 1


@lru_cache(maxsize=None)
def id_pair_table(n):
    pairs = []
    for j in range(2, n + 1):
        for i in range(1, j):
            pairs.append((j, i))
    return tuple(pairs)


def gen_count(n):
    return n * (n - 1) // 2


def _basis_matrix(n, j, i):
    m = [[0] * n for _ in range(n)]
    m[j - 1][i - 1] = 1
    m[i - 1][j - 1] = -1
    return m


@lru_cache(maxsize=None)
def bracket_table(n):
    """Flat table of [A_a, A_b] for all generator pairs of so_n.

    Entry a*G+b is 0 or ±(c+1): the brackets are computed once per rank by
    commuting the realizing matrices, and for this basis every bracket is a
    single signed generator.
    """
    if not 2 <= n <= MAX_RANK:
        raise ValueError("rank must be between 2 and %d" % MAX_RANK)
    pairs = id_pair_table(n)
    g = len(pairs)
    mats = [_basis_matrix(n, j, i) for (j, i) in pairs]
    table = [0] * (g * g)
    for a in range(g):
        ma = mats[a]
        for b in range(g):
            if a == b:
                continue
            mb = mats[b]
            comm = [
                [
                    sum(ma[r][t] * mb[t][c] - mb[r][t] * ma[t][c] for t in range(n))
                    for c in range(n)
                ]
                for r in range(n)
            ]
            entry = 0
            for c in range(g):
                jj, ii = pairs[c]
                v = comm[jj - 1][ii - 1]
                if v:
                    assert entry == 0 and v in (1, -1)
                    entry = (c + 1) if v == 1 else -(c + 1)
            table[a * g + b] = entry
    return tuple(table)


def _coerce_coeff(c):
    if isinstance(c, UPoly):
        return c
    if isinstance(c, GaussianRational):
        return UPoly.const(c)
    return UPoly.const(gr(rational(c)))


class Element:
    """Exact element of U(so_n): a PBW-normal map word -> UPoly."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        if not 0 <= rank <= MAX_RANK:
            raise ValueError("rank out of range")
        norm = {}
        if terms:
            g = gen_count(rank)
            raw = {}
            for w, c in terms.items():
                w = bytes(w)
                if w and max(w) >= g:
                    raise ValueError("generator id exceeds rank %d" % rank)
                c = _coerce_coeff(c)
                if c:
                    raw[w] = raw[w] + c if w in raw else c
            if rank >= 2:
                norm = straighten(raw, bracket_table(rank), g)
            else:
                norm = {w: c for w, c in raw.items() if c}
        self.rank = rank
        self.terms = norm

    @classmethod
    def _make(cls, rank, terms):
        # trusted constructor: terms already normal, coefficients nonzero
        self = object.__new__(cls)
        self.rank = rank
        self.terms = terms
        return self

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def _check_rank(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch: %d vs %d" % (self.rank, other.rank))

    def __add__(self, other):
        if not isinstance(other, Element):
            other = unit(self.rank) * other
        self._check_rank(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return Element._make(self.rank, out)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = unit(self.rank) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element._make(self.rank, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = _coerce_coeff(other)
            if not c:
                return Element._make(self.rank, {})
            return Element._make(self.rank, {w: v * c for w, v in self.terms.items()})
        self._check_rank(other)
        cross = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                v = cross.get(w)
                if v is None:
                    cross[w] = c
                else:
                    v = v + c
                    if v:
                        cross[w] = v
                    else:
                        del cross[w]
        if self.rank < 2:
            return Element._make(self.rank, cross)
        out = straighten(cross, bracket_table(self.rank), gen_count(self.rank))
        return Element._make(self.rank, out)

    def __rmul__(self, other):
        # scalars commute with everything
        return self * other

    def evaluate_u(self, z):
        """Specialize the parameter u to an exact scalar."""
        out = {}
        for w, c in self.terms.items():
            v = c.evaluate(z)
            if v:
                out[w] = UPoly.const(v)
        return Element._make(self.rank, out)

    def words(self):
        return sorted(self.terms)

    def monomials(self):
        """Terms as ([(j,i),...], UPoly) pairs in canonical order."""
        pairs = id_pair_table(self.rank) if self.rank >= 2 else ()
        return [([pairs[g] for g in w], self.terms[w]) for w in sorted(self.terms)]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.monomials():
            word = "*".join("A(%d,%d)" % p for p in mono) or "1"
            cs = repr(c)
            if cs == "1":
                parts.append(word)
            elif word == "1":
                parts.append("(%s)" % cs)
            else:
                parts.append("(%s)*%s" % (cs, word))
        return " + ".join(parts)

    def to_json(self):
        terms = []
        for mono, c in self.monomials():
            coeff = [
                [k, v.re_num, v.re_den, v.im_num, v.im_den]
                for k, v in enumerate(c.coeffs)
                if v
            ]
            terms.append({"mono": [list(p) for p in mono], "coeff": coeff})
        return {"rank": self.rank, "terms": terms}

    def to_json_str(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data):
        terms = {}
        for t in data["terms"]:
            w = bytes(gen_id(j, i) for j, i in t["mono"])
            top = max((k for k, *_ in t["coeff"]), default=-1)
            cs = [gr(0)] * (top + 1)
            for k, rn, rd, imn, imd in t["coeff"]:
                cs[k] = GaussianRational(rational(rn, rd), rational(imn, imd))
            terms[w] = UPoly(cs)
        return cls(data["rank"], terms)


def unit(n, coeff=UP_ONE):
    c = _coerce_coeff(coeff)
    return Element._make(n, {b"": c} if c else {})


def zero(n):
    return Element._make(n, {})


def gen(n, j, i):
    """A(j,i) as an Element; gen(n, i, j) with i < j is -A(j,i)."""
    if j == i:
        raise ValueError("generator indices must differ")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("generator index out of range for rank %d" % n)
    if j > i:
        return Element._make(n, {bytes((gen_id(j, i),)): UP_ONE})
    return Element._make(n, {bytes((gen_id(i, j),)): UPoly.const(gr(-1))})


def bracket_basis(n, g1, g2):
    """[A_{g1}, A_{g2}] for generator index pairs g1=(j,i), g2=(l,k)."""
    j, i = g1
    l, k = g2
    if not (1 <= i < j <= n and 1 <= k < l <= n):
        raise ValueError("generator indices out of range")
    table = bracket_table(n)
    g = gen_count(n)
    b = table[gen_id(j, i) * g + gen_id(l, k)]
    if not b:
        return zero(n)
    if b > 0:
        return Element._make(n, {bytes((b - 1,)): UP_ONE})
    return Element._make(n, {bytes((-b - 1,)): UPoly.const(gr(-1))})


def normal_form(x):
    """Re-straighten an Element; idempotent and linear."""
    if x.rank < 2:
        return x
    out = straighten(dict(x.terms), bracket_table(x.rank), gen_count(x.rank))
    return Element._make(x.rank, out)


def _bracket_with_gen(x, gid):
    """[x, A_g] by the derivation rule, one letter at a time."""
    n = x.rank
    g = gen_count(n)
    table = bracket_table(n)
    cross = {}
    for w, c in x.terms.items():
        for p, letter in enumerate(w):
            b = table[letter * g + gid]
            if not b:
                continue
            nw = w[:p] + bytes(((b if b > 0 else -b) - 1,)) + w[p + 1 :]
            cc = c if b > 0 else -c
            v = cross.get(nw)
            if v is None:
                cross[nw] = cc
            else:
                v = v + cc
                if v:
                    cross[nw] = v
                else:
                    del cross[nw]
    return Element._make(n, straighten(cross, table, g))


def commutator(x, y):
    """normal_form(x*y - y*x), with a derivation fast path for generators."""
    if not isinstance(x, Element) or not isinstance(y, Element):
        raise TypeError("commutator expects Elements")
    x._check_rank(y)
    for a, b, sign in ((x, y, 1), (y, x, -1)):
        if len(b.terms) == 1:
            (w, c), = b.terms.items()
            if len(w) == 1 and c.is_one():
                r = _bracket_with_gen(a, w[0])
                return r if sign > 0 else -r
    return x * y - y * x


def opp(x):
    """The antiautomorphism sending a word Y1...Yp to (-Yp)...(-Y1)."""
    cross = {}
    for w, c in x.terms.items():
        cc = c if len(w) % 2 == 0 else -c
        rw = w[::-1]
        v = cross.get(rw)
        cross[rw] = v + cc if v is not None else cc
    if x.rank < 2:
        return Element._make(x.rank, {w: c for w, c in cross.items() if c})
    out = straighten(cross, bracket_table(x.rank), gen_count(x.rank))
    return Element._make(x.rank, out)


def casimir_omega(n, k):
    """Sum of A(j,i)^2 over 1 <= i < j <= k, as an Element of rank n."""
    if k > n:
        raise ValueError("sub-rank %d exceeds rank %d" % (k, n))
    terms = {}
    for j in range(2, k + 1):
        for i in range(1, j):
            terms[bytes((gen_id(j, i), gen_id(j, i)))] = UP_ONE
    return Element._make(n, terms)


def embed_shift(x, n_to):
    """Reinterpret x at a new rank; indices must fit the smaller of the two."""
    g = gen_count(n_to)
    for w in x.terms:
        if w and max(w) >= g:
            raise ValueError("element does not fit in rank %d" % n_to)
    return Element._make(n_to, dict(x.terms))


def i_times(x):
    """Multiply an Element by the imaginary unit."""
    return x * GR_I
