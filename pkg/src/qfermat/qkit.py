"""Named q-objects: q-integers, Gaussian binomials, q-Pochhammer products,
q-Fermat quotients, q-Delannoy numbers and q-harmonic numbers.
"""

import threading
from fractions import Fraction
from functools import lru_cache

from .errors import NotDivisible, NotPrime
from .quotient import Residue, is_prime, qr_for_prime
from .ring import ONE, ZERO, LaurentPoly


def q_int(n):
    """[n] = 1 + q + ... + q**(n-1); [0] = 0."""
    if n < 0:
        raise ValueError("q_int expects n >= 0")
    return LaurentPoly.from_coeffs([1] * n)


class QBinomialTable:
    """Memoized Gaussian binomials built by the q-Pascal recurrence

        [n, k] = [n-1, k-1] + q**k [n-1, k].

    The memo is guarded by a lock so one table can be shared between threads.
    """

    def __init__(self):
        self.memo = {}
        self._lock = threading.RLock()

    def __call__(self, n, k):
        if k < 0 or k > n:
            return ZERO
        if k == 0 or k == n:
            return ONE
        with self._lock:
            hit = self.memo.get((n, k))
            if hit is not None:
                return hit
            # fill column-wise so the recursion depth stays bounded
            for m in range(k + 1, n + 1):
                key = (m, k)
                if key in self.memo:
                    continue
                self.memo[key] = self(m - 1, k - 1) + self(m - 1, k).shift(k)
            return self.memo[(n, k)]


_table = QBinomialTable()


def q_binomial(n, k):
    """Gaussian binomial coefficient; 0 outside 0 <= k <= n."""
    return _table(n, k)


def poch(a, n):
    """(a; q)_n = (1 - a)(1 - a q) ... (1 - a q**(n-1))."""
    a = LaurentPoly.coerce(a)
    out = ONE
    for j in range(n):
        out = out * (ONE - a.shift(j))
    return out


@lru_cache(maxsize=None)
def neg_q_poch(n):
    """(-q; q)_n."""
    return poch(LaurentPoly.monomial(1, -1), n)


@lru_cache(maxsize=None)
def q_fermat_quotient(p):
    """((-q; q)_{p-1} - 1) / [p] as an exact polynomial.

    Raises NotDivisible if [p] does not divide the numerator, which cannot
    happen for an odd prime.
    """
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    return (neg_q_poch(p - 1) - ONE).exact_div(q_int(p))


def q_delannoy(n):
    """D_n(q) = sum_k (1 + q^k)/2 [n+k, 2k] [2k, k] q^(C(k,2) - 2nk)."""
    return _delannoy(n, weighted=True)


def q_delannoy_bar(n):
    """The unweighted variant: the (1 + q^k)/2 factor is dropped."""
    return _delannoy(n, weighted=False)


def _delannoy(n, weighted):
    if n < 0:
        raise ValueError("n must be nonnegative")
    half = Fraction(1, 2)
    total = ZERO
    for k in range(n + 1):
        term = (q_binomial(n + k, 2 * k) * q_binomial(2 * k, k)).shift(k * (k - 1) // 2 - 2 * n * k)
        if weighted:
            term = (term + term.shift(k)).scale(half)
        total = total + term
    return total


# -- residue-valued constructors ---------------------------------------------


def q_int_res(ring, n):
    return ring.reduce(q_int(n))


def q_harmonic_res(ring, n):
    """H_n(q) = sum_{k=1}^n 1/[k] in the given quotient ring."""
    total = ring.zero()
    for k in range(1, n + 1):
        total = total + q_int_res(ring, k).inv()
    return total


class ResidueBinomialTable:
    """Gaussian binomials reduced into one quotient ring, row by row.

    For a modulus [m] the rows are kept in Z[q]/(q**m - 1), where the q-Pascal
    step is a rotation, and folded to residues on demand.  Other moduli use
    residue arithmetic directly.
    """

    def __init__(self, ring):
        self.ring = ring
        self._cyclic = ring._cyclic
        self._rows = []
        self._lock = threading.RLock()

    def _extend(self, n):
        with self._lock:
            rows = self._rows
            if not rows:
                rows.append([self._one()])
            while len(rows) <= n:
                prev = rows[-1]
                m = len(rows)
                row = [self._one()]
                for k in range(1, m):
                    row.append(self._add(prev[k - 1], self._shift(prev[k], k)))
                row.append(self._one())
                rows.append(row)

    def _one(self):
        if self._cyclic:
            return (1,) + (0,) * (self._cyclic - 1)
        return self.ring.one()

    def _shift(self, v, k):
        if self._cyclic:
            k %= len(v)
            return v[-k:] + v[:-k] if k else v
        return v.mul_q_power(k)

    def _add(self, a, b):
        if self._cyclic:
            return tuple(x + y for x, y in zip(a, b))
        return a + b

    def __call__(self, n, k):
        if k < 0 or k > n:
            return self.ring.zero()
        self._extend(n)
        v = self._rows[n][k]
        if self._cyclic:
            return self.ring._from_folded(list(v), 1)
        return v


@lru_cache(maxsize=16)
def residue_binomials(ring):
    return ResidueBinomialTable(ring)


def q_binomial_res(ring, n, k):
    """Residue of the Gaussian binomial [n, k] in ``ring``."""
    return residue_binomials(ring)(n, k)


def q_delannoy_res(ring, n, weighted=True):
    """Residue of D_n(q) (or the unweighted variant) without building the polynomial."""
    table = residue_binomials(ring)
    total = ring.zero()
    for k in range(n + 1):
        term = table(n + k, 2 * k) * table(2 * k, k)
        term = term.mul_q_power(k * (k - 1) // 2 - 2 * n * k)
        if weighted:
            term = (term + term.mul_q_power(k)).scale(Fraction(1, 2))
        total = total + term
    return total


def central_qbinom_divisible(p, k):
    """True iff [p] divides the Gaussian binomial [2k, k].

    The remainder modulo [p] is computed by the q-Pascal recurrence inside
    the quotient ring, so large k never materializes the full polynomial.
    """
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    return q_binomial_res(qr_for_prime(p), 2 * k, k).is_zero()


def central_qbinom_divisible_direct(p, k):
    """Same test by exact polynomial division; practical for small p."""
    try:
        q_binomial(2 * k, k).exact_div(q_int(p))
    except NotDivisible:
        return False
    return True


__all__ = [
    "QBinomialTable", "ResidueBinomialTable", "Residue", "q_int", "q_binomial", "poch",
    "neg_q_poch", "q_fermat_quotient", "q_delannoy", "q_delannoy_bar", "q_harmonic_res",
    "q_binomial_res", "q_delannoy_res", "central_qbinom_divisible",
    "central_qbinom_divisible_direct",
]
