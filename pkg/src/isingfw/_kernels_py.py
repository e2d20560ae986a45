"""Pure-Python versions of the integer kernels in ``_kernels.pyx``."""

from operator import mul


def int_convolve(a, b, n):
    """First ``n`` coefficients of the product of two integer sequences."""
    la, lb = len(a), len(b)
    n = min(n, la + lb - 1) if la and lb else 0
    rb = b[::-1]
    out = []
    for i in range(n):
        lo = i - lb + 1 if i >= lb else 0
        hi = i if i < la else la - 1
        # rb[lb-1-j] == b[j]
        out.append(sum(map(mul, a[lo:hi + 1], rb[lb - 1 - i + lo:lb - i + hi])))
    return out


def int_square(a, n):
    return int_convolve(a, a, n)
