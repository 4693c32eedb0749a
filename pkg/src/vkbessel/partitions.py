"""Integer partition combinatorics.

Partitions index Jack polynomials and power-sum monomials throughout the
package.  They are immutable (tuple-backed) value types so they can key
memoization caches, and they are kept in canonical form with trailing
zeros stripped.
"""

from __future__ import annotations

from collections import Counter

__all__ = ["Partition", "enumerate_partitions", "z_lambda", "dominance_leq"]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Zeros are accepted on input (only in trailing position) and stripped,
    so equal partitions compare equal as tuples::

        >>> Partition([3, 1, 0, 0])
        Partition(3, 1)
        >>> Partition([]).weight
        0
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        cleaned = []
        prev = None
        for p in parts:
            q = int(p)
            if q != p:
                raise ValueError(f"partition parts must be integers, got {p!r}")
            if q < 0:
                raise ValueError(f"partition parts must be nonnegative, got {q}")
            if prev is not None and q > prev:
                raise ValueError(f"parts must be weakly decreasing, got {tuple(parts)}")
            prev = q
            if q > 0:
                cleaned.append(q)
        return super().__new__(cls, cleaned)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram."""
        if not self:
            return Partition()
        cols = [0] * self[0]
        for part in self:
            for j in range(part):
                cols[j] += 1
        return Partition(cols)

    def multiplicities(self) -> Counter:
        """Map part value -> number of occurrences."""
        return Counter(self)

    def __repr__(self):
        return "Partition(%s)" % ", ".join(str(p) for p in self)


def enumerate_partitions(weight: int, max_length: int) -> list[Partition]:
    """All partitions of ``weight`` into at most ``max_length`` parts.

    The list is in reverse lexicographic order, e.g. for weight 4 and
    length 3: (4), (3,1), (2,2), (2,1,1).  This order refines dominance
    downward, so triangular solves can scan the list in one pass.
    """
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    if max_length < 1:
        raise ValueError("max_length must be positive")

    out = []

    def rec(prefix, remaining, max_part, slots):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        if slots == 0:
            return
        for first in range(min(remaining, max_part), 0, -1):
            rec(prefix + [first], remaining - first, first, slots - 1)

    rec([], weight, weight if weight else 1, max_length)
    return out


def z_lambda(kappa: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type ``kappa``.

    z_kappa = prod_i i^{m_i} m_i! with m_i the multiplicity of part i.
    This is the squared norm scale of the power-sum basis.
    """
    z = 1
    for value, mult in Counter(kappa).items():
        z *= value ** mult
        for t in range(1, mult + 1):
            z *= t
    return z


def dominance_leq(kappa, mu):
    """Dominance comparison of equal-weight partitions.

    Returns True when every partial sum of ``kappa`` is <= the matching
    partial sum of ``mu`` (zero padded), False when the strict reverse
    holds, and None when the two are incomparable.
    """
    kappa = Partition(kappa)
    mu = Partition(mu)
    if kappa.weight != mu.weight:
        raise ValueError(
            f"dominance needs equal weights, got {kappa.weight} and {mu.weight}"
        )
    length = max(kappa.length, mu.length)
    ka = list(kappa) + [0] * (length - kappa.length)
    mu_ = list(mu) + [0] * (length - mu.length)
    leq = True
    geq = True
    sk = sm = 0
    for a, b in zip(ka, mu_):
        sk += a
        sm += b
        if sk > sm:
            leq = False
        if sk < sm:
            geq = False
    if leq:
        return True
    if geq:
        return False
    return None
