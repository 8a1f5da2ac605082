"""Exception types shared across the package."""


class QFermatError(Exception):
    pass


class NotDivisible(QFermatError, ArithmeticError):
    """Exact division left a nonzero remainder."""

    def __init__(self, remainder=None, msg="division is not exact"):
        super().__init__(msg)
        self.remainder = remainder


class ZeroAtNegativeExponent(QFermatError, ZeroDivisionError):
    pass


class NotPrime(QFermatError, ValueError):
    pass


class RingMismatch(QFermatError, TypeError):
    pass


class NonInvertible(QFermatError, ArithmeticError):
    """Raised by residue inversion; ``gcd`` is the common factor with the modulus."""

    def __init__(self, gcd, msg=None):
        super().__init__(msg or f"element shares the factor {gcd} with the modulus")
        self.gcd = gcd


class UnknownCase(QFermatError, KeyError):
    pass


class InvalidParams(QFermatError, ValueError):
    pass
