"""Central elements of U(so_n): the u-family C_n(u) and the Pfaffian.

The family is built by a two-step recursion adapted to the Iwasawa
decomposition of so(n-1,1): with H = i*A(n,n-1) and the nilpotent basis
X_i = A(n-1,i) + i*A(n,i),

    C_n(u) = -{(H-(n-2)/2)^2 - u^2 + sum_i X_i^2} C_{n-2}(u)
             + sum_i X_i (H-(n-5)/2) [A(n-1,i), C_{n-2}(u)]
             + 2 sum_i X_i C_{n-2}(u) A(n-1,i)
             - 1/2 sum_i X_i [Omega_{n-2}, [A(n-1,i), C_{n-2}(u)]]
             - 1/2 sum_{i,j} X_i X_j [A(n-1,i), [A(n-1,j), C_{n-2}(u)]]

with C_0(u) = C_1(u) = 1, the products taken exactly as written.  u stays a
formal parameter throughout; specialization is left to callers, so the
verified identities are polynomial identities covering every value at once.
"""

import logging
import threading
from dataclasses import dataclass

from .algebra import (
    Element,
    casimir_omega,
    commutator,
    embed_shift,
    gen,
    id_pair_table,
    normal_form,
    unit,
)
from .scalars import GR_I, UPoly, gr, rational

log = logging.getLogger("socenter")

_cache = {}
_cache_lock = threading.Lock()


def iwasawa_h(n):
    """H = i*A(n,n-1), the abelian part of the Iwasawa decomposition."""
    return gen(n, n, n - 1) * GR_I


def iwasawa_x(n, i):
    """X_i = A(n-1,i) + i*A(n,i), root vector with [H, X_i] = X_i."""
    return gen(n, n - 1, i) + gen(n, n, i) * GR_I


def iwasawa_xbar(n, i):
    """Conjugate root vector A(n-1,i) - i*A(n,i)."""
    return gen(n, n - 1, i) - gen(n, n, i) * GR_I


@dataclass(frozen=True)
class IwasawaGens:
    H: Element
    X: tuple


def iwasawa_gens(n):
    return IwasawaGens(iwasawa_h(n), tuple(iwasawa_x(n, i) for i in range(1, n - 1)))


def build_c(n):
    """The central element C_n(u), memoized per rank."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    with _cache_lock:
        got = _cache.get(n)
    if got is not None:
        return got
    if n <= 1:
        result = unit(n)
    else:
        result = _build_c_step(n)
    with _cache_lock:
        _cache[n] = result
    return result


def _build_c_step(n):
    log.info("assembling C_%d(u)", n)
    prev = embed_shift(build_c(n - 2), n)
    H = iwasawa_h(n)
    xs = [iwasawa_x(n, i) for i in range(1, n - 1)]
    a_row = [gen(n, n - 1, i) for i in range(1, n - 1)]
    omega = casimir_omega(n, n - 2)
    # inner brackets are reused across every i- and (i,j)-sum
    inner = [commutator(a, prev) for a in a_row]

    u2 = unit(n, UPoly.u_power(2))
    h_a = H - rational(n - 2, 2)
    h_b = H - rational(n - 5, 2)

    sum_x2 = unit(n) * 0
    for x in xs:
        sum_x2 = sum_x2 + x * x
    result = -((h_a * h_a - u2 + sum_x2) * prev)
    for i, x in enumerate(xs):
        result = result + x * h_b * inner[i]
    for i, x in enumerate(xs):
        result = result + 2 * (x * prev * a_row[i])
    half = gr(rational(1, 2))
    for i, x in enumerate(xs):
        result = result - (x * commutator(omega, inner[i])) * half
    for i, x in enumerate(xs):
        for j in range(len(xs)):
            result = result - (x * xs[j] * commutator(a_row[i], inner[j])) * half
    return result


@dataclass
class CentralityReport:
    ok: bool
    witness: tuple = None
    residual_terms: int = 0

    def to_json(self):
        return {
            "ok": self.ok,
            "witness": list(self.witness) if self.witness else None,
            "residual_terms": self.residual_terms,
        }


def is_central(x, progress=None):
    """Check [x, A(j,i)] == 0 for every generator of the rank of x.

    Returns a report carrying the first offending generator and the size of
    the nonzero residual, if any.
    """
    n = x.rank
    for j, i in id_pair_table(n):
        r = commutator(x, gen(n, j, i))
        if progress is not None:
            progress(j, i, r)
        if not r.is_zero():
            return CentralityReport(False, (j, i), len(r.terms))
    return CentralityReport(True)


def monic_degree_check(x, n):
    """True iff x is monic of degree floor(n/2) in u^2 with no odd powers."""
    top = 2 * (n // 2)
    lead_ok = False
    for w, c in x.terms.items():
        if any(c.coeff(k) for k in range(1, c.degree() + 1, 2)):
            return False
        if c.degree() > top:
            return False
        if c.coeff(top):
            if w != b"" or not c.coeff(top).re == 1 or c.coeff(top).im:
                return False
            lead_ok = True
    return lead_ok


def pfaffian(indices, n=None):
    """Pf_{2k}(i_{2k}, ..., i_1) by the alternating first-row expansion.

    indices are listed highest slot first, matching Pf_2(i_2, i_1) = A(i_2, i_1).
    Fully expanded the sum has (2k-1)!! products, so sizes beyond 2k ~ 12
    are expensive; ranks used here stay far below that.
    """
    idx = tuple(indices)
    if len(idx) % 2 or len(set(idx)) != len(idx):
        raise ValueError("need an even number of distinct indices")
    if any(i < 1 for i in idx):
        raise ValueError("indices must be positive")
    if n is None:
        n = max(idx)
    if max(idx) > n:
        raise ValueError("index exceeds rank")
    memo = {}

    def rec(lst):
        if lst in memo:
            return memo[lst]
        if len(lst) == 2:
            r = gen(n, lst[0], lst[1])
        else:
            top = lst[0]
            rest = lst[1:]
            r = unit(n) * 0
            # slot j counts from the low end: rest[-j] is i_j
            for j in range(1, len(lst)):
                sub = rest[: len(rest) - j] + rest[len(rest) - j + 1 :]
                term = gen(n, top, rest[len(rest) - j]) * rec(sub)
                r = r + term if j % 2 else r - term
        memo[lst] = r
        return r

    return rec(idx)


def full_pfaffian(m, n=None):
    """PF_{2m} = Pf_{2m}(2m, 2m-1, ..., 1), central in U(so_{2m})."""
    if n is None:
        n = 2 * m
    return pfaffian(range(2 * m, 0, -1), n)


def iwasawa_pfaffian_residual(m):
    """Residual of i*PF_{2m} - (H-m+1) PF_{2m-2} + sum_i X_i [A(2m-1,i), PF_{2m-2}]."""
    n = 2 * m
    lhs = full_pfaffian(m) * GR_I
    prev = embed_shift(full_pfaffian(m - 1) if m > 1 else unit(0), n)
    rhs = (iwasawa_h(n) - (m - 1)) * prev
    for i in range(1, n - 1):
        rhs = rhs - iwasawa_x(n, i) * commutator(gen(n, n - 1, i), prev)
    return normal_form(lhs - rhs)


def iwasawa_pfaffian_check(m):
    return iwasawa_pfaffian_residual(m).is_zero()
