"""Triangular decompositions of so_n and the Harish-Chandra projections.

Relative to the Iwasawa data H, X_i of so(n-1,1), the complexified algebra
splits as n + u + h + ubar + nbar with h = t_m + a spanned by
T_i = i*A(n-2i, n-1-2i) and H.  gamma_n projects U(so_n) onto U(m + a) along
n U(g) + U(g) nbar, gamma_u continues onto U(h) along the Borel of m, and
gamma = gamma_u . gamma_n; each projection is followed by the rho shift of
the step (H by (n-2)/2, T_i by (n-2-2i)/2, with the sign pinned by the
images of the central family, see tests).

Projections are computed by straightening in secondary PBW orders in which
the letters to be discarded sit leftmost/rightmost; words are routed out as
soon as a discarded letter reaches the boundary, which keeps the large
inputs tractable.
"""

import threading
from math import comb

from .algebra import (
    Element,
    commutator,
    gen,
    gen_count,
    gen_id,
    id_pair_table,
    unit,
)
from .center import iwasawa_h, iwasawa_x, iwasawa_xbar
from .kernels import straighten_general
from .linalg import invert, mat_vec, nullspace
from .scalars import GR_I, GR_ONE, GR_ZERO, GaussianRational, UPoly, gr, rational


def _linear_coords(x):
    """Coordinates of a degree-one Element in the A(j,i) basis."""
    coords = {}
    for w, c in x.terms.items():
        if len(w) != 1:
            raise ValueError("element is not degree one")
        if c.degree() > 0:
            raise ValueError("element has u-dependent coefficients")
        coords[w[0]] = c.coeff(0)
    return coords


class OrderedBasis:
    """An ordered basis of a bracket-closed subspace of so_n, with the
    tables the generic straightening kernel needs."""

    def __init__(self, n, elements, support):
        self.n = n
        self.elements = list(elements)
        self.support = list(support)  # A-generator ids spanned, ascending
        self.size = len(self.elements)
        if len(self.support) != self.size:
            raise ValueError("basis size does not match support size")
        pos = {g: k for k, g in enumerate(self.support)}
        mat = [[GR_ZERO] * self.size for _ in range(self.size)]
        for col, el in enumerate(self.elements):
            for g, c in _linear_coords(el).items():
                if g not in pos:
                    raise ValueError("basis element leaves the claimed support")
                mat[pos[g]][col] = c
        self.matrix = mat
        inv = invert(mat)
        # expansion[gid] -> tuple of (basis letter, coefficient)
        self.expansion = {}
        for g, row in pos.items():
            col = [inv[b][row] for b in range(self.size)]
            self.expansion[g] = tuple((b, c) for b, c in enumerate(col) if c)
        self.bracket_flat = self._bracket_table()
        self.head_mask = bytes(self.size)
        self.tail_mask = bytes(self.size)

    def _bracket_table(self):
        table = [None] * (self.size * self.size)
        for a in range(self.size):
            for b in range(self.size):
                if a == b:
                    continue
                br = commutator(self.elements[a], self.elements[b])
                if br.is_zero():
                    continue
                out = {}
                for g, c in _linear_coords(br).items():
                    for bb, k in self.expansion[g]:
                        v = out.get(bb, GR_ZERO) + c * k
                        if v:
                            out[bb] = v
                        elif bb in out:
                            del out[bb]
                if out:
                    table[a * self.size + b] = tuple(sorted(out.items()))
        return table

    def with_masks(self, head_ids=(), tail_ids=()):
        head = bytearray(self.size)
        tail = bytearray(self.size)
        for b in head_ids:
            head[b] = 1
        for b in tail_ids:
            tail[b] = 1
        self.head_mask = bytes(head)
        self.tail_mask = bytes(tail)
        return self

    def expand(self, x):
        """Element -> dict of words in this basis (no straightening yet)."""
        out = {}
        for w, c in x.terms.items():
            partial = {b"": GR_ONE}
            for letter in w:
                exp = self.expansion.get(letter)
                if exp is None:
                    raise ValueError("element contains letters outside this basis")
                nxt = {}
                for pw, pc in partial.items():
                    for b, k in exp:
                        nw = pw + bytes((b,))
                        v = nxt.get(nw)
                        v = pc * k if v is None else v + pc * k
                        if v:
                            nxt[nw] = v
                        elif nw in nxt:
                            del nxt[nw]
                partial = nxt
            for pw, pc in partial.items():
                add = c * pc
                v = out.get(pw)
                v = add if v is None else v + add
                if v:
                    out[pw] = v
                elif pw in out:
                    del out[pw]
        return out

    def word_to_element(self, w, coeff):
        """Multiply the basis letters of w back out into U(so_n)."""
        acc = unit(self.n, coeff)
        for b in w:
            acc = acc * self.elements[b]
        return acc


class TriangularBasis:
    """Triangular data of so_n: Iwasawa vectors, the Cartan t_m + a, and the
    exact root-space decomposition of m = so_{n-2}."""

    def __init__(self, n):
        if n < 2:
            raise ValueError("rank must be at least 2")
        self.n = n
        self.H = iwasawa_h(n)
        self.X = tuple(iwasawa_x(n, i) for i in range(1, n - 1))
        self.Xbar = tuple(iwasawa_xbar(n, i) for i in range(1, n - 1))
        self.r = (n - 2) // 2
        self.T = tuple(
            gen(n, n - 2 * i, n - 1 - 2 * i) * GR_I for i in range(1, self.r + 1)
        )
        self._build_root_spaces()
        self._assemble_bases()

    def _build_root_spaces(self):
        n = self.n
        m_ids = [gen_id(j, i) for j in range(2, n - 1) for i in range(1, j)]
        d = len(m_ids)
        pos_of = {g: k for k, g in enumerate(m_ids)}
        ads = []
        for t in self.T:
            mat = [[GR_ZERO] * d for _ in range(d)]
            for col, g in enumerate(m_ids):
                jj, ii = id_pair_table(n)[g]
                br = commutator(t, gen(n, jj, ii))
                for gg, c in _linear_coords(br).items():
                    mat[pos_of[gg]][col] = c
            ads.append(mat)
        pos, neg = [], []
        zero_dim = 0
        for vec in _sign_vectors(self.r):
            stacked = []
            for t_idx, mat in enumerate(ads):
                c = gr(vec[t_idx])
                for row_idx in range(d):
                    row = list(mat[row_idx])
                    row[row_idx] = row[row_idx] - c
                    stacked.append(row)
            if not stacked:
                continue
            for v in nullspace(stacked):
                el = _from_coords(self.n, m_ids, v)
                if all(c == 0 for c in vec):
                    zero_dim += 1
                elif _lex_positive(vec):
                    pos.append((vec, el))
                else:
                    neg.append((vec, el))
        if zero_dim != self.r:
            raise AssertionError("Cartan of m has unexpected dimension")
        if len(pos) + len(neg) + self.r != d:
            raise AssertionError("root decomposition does not fill m")
        pos.sort(key=lambda p: p[0], reverse=True)
        neg.sort(key=lambda p: tuple(-c for c in p[0]), reverse=True)
        self.pos_roots = tuple(v for v, _ in pos)
        self.u_pos = tuple(e for _, e in pos)
        self.u_neg = tuple(e for _, e in neg)
        for vec, el in pos + neg:
            for t_idx, t in enumerate(self.T):
                if commutator(t, el) != el * gr(vec[t_idx]):
                    raise AssertionError("root vector fails its eigen equation")

    def _assemble_bases(self):
        n = self.n
        all_ids = list(range(gen_count(n)))
        m_ids = [gen_id(j, i) for j in range(2, n - 1) for i in range(1, j)]
        k_ids = [gen_id(j, i) for j in range(2, n) for i in range(1, j)]
        h_gid = gen_id(n, n - 1)

        m_elements = [gen(n, *id_pair_table(n)[g]) for g in m_ids]
        nx = len(self.X)

        # gamma_n order: X < H < (m in the primary order) < Xbar
        b1_elems = list(self.X) + [self.H] + m_elements + list(self.Xbar)
        self.b1 = OrderedBasis(n, b1_elems, all_ids).with_masks(
            head_ids=range(nx),
            tail_ids=range(nx + 1 + len(m_ids), len(b1_elems)),
        )
        self.b1_h = nx
        self.b1_m_ids = m_ids

        # projection p order: X < H < (k in the primary order)
        k_elements = [gen(n, *id_pair_table(n)[g]) for g in k_ids]
        bp_elems = list(self.X) + [self.H] + k_elements
        self.bp = OrderedBasis(n, bp_elems, all_ids).with_masks(head_ids=range(nx))
        self.bp_h = nx
        self.bp_k_ids = k_ids

        # gamma_u order on m + a: u_pos < H < T < u_neg
        b2_elems = list(self.u_pos) + [self.H] + list(self.T) + list(self.u_neg)
        self.b2 = OrderedBasis(n, b2_elems, m_ids + [h_gid]).with_masks(
            head_ids=range(len(self.u_pos)),
            tail_ids=range(len(self.u_pos) + 1 + self.r, len(b2_elems)),
        )
        self.b2_h = len(self.u_pos)

        # the full triangular basis and its exact change of basis from A(j,i)
        full = (
            list(self.X)
            + list(self.u_pos)
            + [self.H]
            + list(self.T)
            + list(self.u_neg)
            + list(self.Xbar)
        )
        self.full_basis = tuple(full)
        cols = []
        for el in full:
            coords = _linear_coords(el)
            cols.append([coords.get(g, GR_ZERO) for g in all_ids])
        self.change_of_basis = [
            [cols[c][r] for c in range(len(full))] for r in range(len(all_ids))
        ]
        invert(self.change_of_basis)  # must be invertible


def _sign_vectors(r):
    if r == 0:
        return [()]
    out = [()]
    for _ in range(r):
        out = [v + (s,) for v in out for s in (-1, 0, 1)]
    return out


def _lex_positive(vec):
    for c in vec:
        if c > 0:
            return True
        if c < 0:
            return False
    return False


def _from_coords(n, ids, coords):
    terms = {}
    for g, c in zip(ids, coords):
        if c:
            terms[bytes((g,))] = UPoly.const(c)
    return Element._make(n, terms)


_tri_cache = {}
_tri_lock = threading.Lock()


def triangular(n):
    """The TriangularBasis of rank n; computed once, shared thereafter."""
    with _tri_lock:
        td = _tri_cache.get(n)
        if td is None:
            td = TriangularBasis(n)
            _tri_cache[n] = td
    return td


def rho_a_shift(n):
    """H picks up (n-2)/2 under gamma_n."""
    return rational(n - 2, 2)


def rho_u_shift(n, i):
    """T_i picks up (n-2-2i)/2 under gamma_u."""
    return rational(n - 2 - 2 * i, 2)


class HPoly:
    """Polynomial in the commuting Cartan letters H, T_1, ..., with UPoly
    coefficients; exponent tuples index the terms."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars_, terms=None):
        self.vars = tuple(vars_)
        clean = {}
        for e, c in (terms or {}).items():
            if not isinstance(c, UPoly):
                c = UPoly.const(c if isinstance(c, GaussianRational) else gr(c))
            if c:
                e = tuple(e)
                if len(e) != len(self.vars):
                    raise ValueError("exponent arity mismatch")
                clean[e] = clean[e] + c if e in clean else c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, vars_, c):
        z = (0,) * len(vars_)
        return cls(vars_, {z: c})

    @classmethod
    def variable(cls, vars_, k):
        e = tuple(1 if i == k else 0 for i in range(len(vars_)))
        return cls(vars_, {e: UPoly.const(GR_ONE)})

    def _compat(self, other):
        if self.vars != other.vars:
            raise ValueError("variable mismatch")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return HPoly(self.vars, out)

    def __neg__(self):
        return HPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (UPoly, GaussianRational, int)):
            if isinstance(other, int):
                other = UPoly.const(gr(other))
            if isinstance(other, GaussianRational):
                other = UPoly.const(other)
            return HPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._compat(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                v = out.get(e)
                v = c if v is None else v + c
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return HPoly(self.vars, out)

    def __rmul__(self, other):
        return self * other

    def shift_var(self, k, c):
        """Substitute var_k -> var_k + c, c rational."""
        c = rational(c)
        if not c:
            return self
        out = {}
        for e, coeff in self.terms.items():
            a = e[k]
            for t in range(a + 1):
                ne = e[:k] + (t,) + e[k + 1 :]
                factor = gr(comb(a, t) * c ** (a - t))
                v = coeff * factor
                if not v:
                    continue
                cur = out.get(ne)
                cur = v if cur is None else cur + v
                if cur:
                    out[ne] = cur
                elif ne in out:
                    del out[ne]
        return HPoly(self.vars, out)

    def flip_var(self, k):
        """Substitute var_k -> -var_k."""
        return HPoly(
            self.vars,
            {e: (c if e[k] % 2 == 0 else -c) for e, c in self.terms.items()},
        )

    def swap_vars(self, k1, k2):
        def sw(e):
            e = list(e)
            e[k1], e[k2] = e[k2], e[k1]
            return tuple(e)

        return HPoly(self.vars, {sw(e): c for e, c in self.terms.items()})

    def evaluate_vars(self, values):
        """Substitute scalars for all variables; returns a UPoly in u."""
        out = UPoly(())
        for e, c in self.terms.items():
            f = GR_ONE
            for k, a in enumerate(e):
                v = values[k] if isinstance(values[k], GaussianRational) else gr(values[k])
                for _ in range(a):
                    f = f * v
            out = out + c * f
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(
                v if a == 1 else "%s^%d" % (v, a)
                for v, a in zip(self.vars, e)
                if a
            )
            c = repr(self.terms[e])
            parts.append("(%s)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(parts)

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [
                {"exps": list(e), "coeff": self.terms[e].to_json()}
                for e in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            data["vars"],
            {tuple(t["exps"]): UPoly.from_json(t["coeff"]) for t in data["terms"]},
        )


def hc_vars(n):
    return ("H",) + tuple("T%d" % i for i in range(1, (n - 2) // 2 + 1))


def _project(x, basis, h_letter, letter_gids, h_shift, keep_dropped=False):
    """Shared survivor machinery for gamma_n and projection p.

    Straightens x in the given order, drops the masked words, shifts the
    H-letter by h_shift and maps the survivors (words in H and primary
    letters) back to a PBW-normal Element directly.
    """
    n = x.rank
    terms = basis.expand(x)
    out, dropped = straighten_general(
        terms,
        basis.bracket_flat,
        basis.size,
        basis.head_mask,
        basis.tail_mask,
        keep_dropped=True,
    )
    h_gid = gen_id(n, n - 1)
    result = {}
    for w, c in out.items():
        a = 0
        rest = []
        for letter in w:
            if letter == h_letter:
                a += 1
            else:
                rest.append(letter_gids[letter - h_letter - 1])
        base = bytes(rest)
        for t in range(a + 1):
            factor = gr(comb(a, t) * h_shift ** (a - t)) if h_shift else None
            if h_shift:
                if not factor:
                    continue
                coeff = c * (factor * (GR_I**t))
            else:
                if t != a:
                    continue
                coeff = c * GR_I**t
            word = base[: len(base)] + bytes((h_gid,)) * t
            # H letters commute with the rest and sort last in the primary order
            word = bytes(sorted(word))
            v = result.get(word)
            v = coeff if v is None else v + coeff
            if v:
                result[word] = v
            elif word in result:
                del result[word]
    surv = Element._make(n, result)
    if not keep_dropped:
        return surv
    rest_el = unit(n) * 0
    for w, c in (dropped or {}).items():
        rest_el = rest_el + basis.word_to_element(w, c)
    return surv, rest_el


def gamma_n(x, keep_dropped=False):
    """Project onto U(m + a) along n U(g) + U(g) nbar, then shift H.

    The result is an ordinary Element of U(so_n) supported on letters of m
    and A(n,n-1).
    """
    td = triangular(x.rank)
    return _project(
        x, td.b1, td.b1_h, td.b1_m_ids, rho_a_shift(x.rank), keep_dropped
    )


def projection_p(x, keep_dropped=False):
    """Project onto U(a) (x) U(k) along n U(g); no rho shift."""
    td = triangular(x.rank)
    return _project(x, td.bp, td.bp_h, td.bp_k_ids, 0, keep_dropped)


def gamma_u(x):
    """Project an element of U(m + a) onto U(h), then shift each T_i.

    Raises if x contains letters outside m + a (in particular any X or Xbar
    content）.
    """
    n = x.rank
    td = triangular(n)
    terms = td.b2.expand(x)
    out = straighten_general(
        terms,
        td.b2.bracket_flat,
        td.b2.size,
        td.b2.head_mask,
        td.b2.tail_mask,
    )
    vars_ = hc_vars(n)
    h_letter = td.b2_h
    hp_terms = {}
    for w, c in out.items():
        exps = [0] * len(vars_)
        for letter in w:
            k = letter - h_letter
            if not 0 <= k <= td.r:
                raise AssertionError("survivor contains a non-Cartan letter")
            exps[k] += 1
        e = tuple(exps)
        v = hp_terms.get(e)
        v = c if v is None else v + c
        if v:
            hp_terms[e] = v
        elif e in hp_terms:
            del hp_terms[e]
    hp = HPoly(vars_, hp_terms)
    for i in range(1, td.r + 1):
        hp = hp.shift_var(i, rho_u_shift(n, i))
    return hp


def gamma(x):
    """The full Harish-Chandra image gamma_u(gamma_n(x)) in U(h)."""
    return gamma_u(gamma_n(x))


def expected_center_image(n):
    """(u^2 - H^2)(u^2 - T_1^2)...(u^2 - T_r^2) as an HPoly."""
    vars_ = hc_vars(n)
    u2 = HPoly.constant(vars_, UPoly.u_power(2))
    acc = HPoly.constant(vars_, UPoly.const(GR_ONE))
    for k in range(len(vars_)):
        v = HPoly.variable(vars_, k)
        acc = acc * (u2 - v * v)
    return acc


def expected_pfaffian_image(m):
    """(-i)^m H T_1 ... T_{m-1} as an HPoly at rank n = 2m."""
    vars_ = hc_vars(2 * m)
    e = (1,) * len(vars_)
    c = GR_ONE
    for _ in range(m):
        c = c * GaussianRational(0, -1)
    return HPoly(vars_, {e: UPoly.const(c)})
