"""q-integers, q-factorials and q-binomials in balanced polynomial form.

[n]_b = (b^n - b^(-n)) / (b - b^(-1)) is always expanded as the Laurent
polynomial sum_(k=0)^(n-1) b^(n-1-2k). The polynomial form stays exact
when b is specialized to a root of unity, where the defining quotient
degenerates to 0/0.
"""

from __future__ import annotations

from .ratfun import RatFun
from .rings import Ring, QS


def q_number(n: int, base=None, ring: Ring = QS):
    """Balanced q-integer [n] at the given base (default: the generic q)."""
    if base is None:
        base = RatFun.q_power(1)
    if n < 0:
        return ring.neg(q_number(-n, base, ring))
    out = ring.zero()
    for k in range(n):
        out = ring.add(out, ring.pow(base, n - 1 - 2 * k))
    return out


def q_factorial(n: int, base=None, ring: Ring = QS):
    """[n]! = [1][2]...[n]."""
    if base is None:
        base = RatFun.q_power(1)
    out = ring.one()
    for k in range(1, n + 1):
        out = ring.mul(out, q_number(k, base, ring))
    return out


def q_binomial(n: int, k: int, base=None, ring: Ring = QS):
    """Balanced q-binomial [n choose k] as a quotient of q-factorials.

    At a root of unity the quotient can degenerate; use the generic form
    and specialize the result when that happens.
    """
    if base is None:
        base = RatFun.q_power(1)
    if k < 0 or k > n:
        return ring.zero()
    num = ring.one()
    den = ring.one()
    for j in range(1, k + 1):
        num = ring.mul(num, q_number(n - k + j, base, ring))
        den = ring.mul(den, q_number(j, base, ring))
    return ring.div(num, den)
