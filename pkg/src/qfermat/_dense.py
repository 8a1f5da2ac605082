"""Dense integer coefficient vectors, the kernel under LaurentPoly and Residue.

A rational polynomial is carried as a list of integer numerators plus one
positive common denominator.  Products use Kronecker substitution: both
vectors are packed into a single big integer, multiplied by CPython's
Karatsuba, and unpacked again.
"""

from math import gcd

_SCHOOLBOOK = 12


def _pack(a, s, half):
    nb = s // 8
    raw = b"".join((c + half).to_bytes(nb, "little") for c in a)
    return int.from_bytes(raw, "little") - _offset(len(a), s, half)


def _offset(n, s, half):
    return half * (((1 << (s * n)) - 1) // ((1 << s) - 1))


def _unpack(x, s, half, n):
    nb = s // 8
    raw = (x + _offset(n, s, half)).to_bytes(nb * n, "little")
    return [int.from_bytes(raw[i:i + nb], "little") - half for i in range(0, nb * n, nb)]


def mul(a, b):
    """Product of two integer coefficient lists (ascending order)."""
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _SCHOOLBOOK:
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, cb in enumerate(b):
            if cb:
                for i, ca in enumerate(a):
                    out[i + j] += ca * cb
        return out
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    bound = ma * mb * min(len(a), len(b))
    s = -(-(bound.bit_length() + 2) // 8) * 8
    half = 1 << (s - 1)
    prod = _pack(a, s, half) * _pack(b, s, half)
    return _unpack(prod, s, half, len(a) + len(b) - 1)


def add_scaled(a, ka, b, kb):
    """ka*a + kb*b for integer lists of possibly different length."""
    if len(a) < len(b):
        a, b, ka, kb = b, a, kb, ka
    out = [ka * c for c in a] if ka != 1 else list(a)
    for i, c in enumerate(b):
        if c:
            out[i] += kb * c
    return out


def content(nums, den):
    """gcd of den and every numerator (den > 0)."""
    return gcd(den, *nums)


def strip(nums):
    """Return (leading zero count, stripped list) with no zeros at either end."""
    lo = 0
    n = len(nums)
    while lo < n and nums[lo] == 0:
        lo += 1
    if lo == n:
        return 0, []
    hi = n
    while nums[hi - 1] == 0:
        hi -= 1
    return lo, nums[lo:hi]


def common(da, db):
    """Multipliers (ma, mb, l) with l = lcm(da, db) = ma*da = mb*db."""
    if da == db:
        return 1, 1, da
    g = gcd(da, db)
    return db // g, da // g, da // g * db
