"""Exact verification of q-analogues of Fermat-quotient congruences.

The package builds q-binomials, q-Pochhammer products, q-Delannoy numbers and
q-Fermat quotients as exact Laurent polynomials, reduces them modulo [p] or
[p]^2, and checks congruences, polynomial identities and their q = 1 shadows.
"""

from .errors import (InvalidParams, NonInvertible, NotDivisible, NotPrime, QFermatError,
                     RingMismatch, UnknownCase, ZeroAtNegativeExponent)
from .quotient import QuotientRing, Residue, qr_for_prime, is_prime
from .report import Report, render, exit_status
from .ring import LaurentPoly, Q, ONE, ZERO
from .qkit import (q_int, q_binomial, poch, neg_q_poch, q_fermat_quotient, q_delannoy,
                   q_delannoy_bar)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "Q", "ONE", "ZERO", "QuotientRing", "Residue", "qr_for_prime", "is_prime",
    "Report", "render", "exit_status", "q_int", "q_binomial", "poch", "neg_q_poch",
    "q_fermat_quotient", "q_delannoy", "q_delannoy_bar", "QFermatError", "InvalidParams",
    "NonInvertible", "NotDivisible", "NotPrime", "RingMismatch", "UnknownCase",
    "ZeroAtNegativeExponent",
]
