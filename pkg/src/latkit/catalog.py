"""Named lattices and combinators.

Product numbering is lexicographic: element (x1, x2) of product(L1, L2)
gets index x1 * L2.n + x2.  boolean(k) numbers subsets by bitmask.
"""

import re

import numpy as np

from .core import FiniteLattice, size_cap
from .errors import SizeCapExceeded


def chain(k):
    """The k-element chain 0 < 1 < ... < k-1."""
    if k < 1:
        raise ValueError("chain needs k >= 1")
    return FiniteLattice.from_covers(k, [(i, i + 1) for i in range(k - 1)])


def product(L1, L2):
    """Direct product with lexicographic numbering."""
    n = L1.n * L2.n
    if n > size_cap():
        raise SizeCapExceeded(f"product has {n} elements, cap {size_cap()}")
    leq = np.kron(L1.leq, L2.leq).astype(bool)
    names = None
    if L1.names or L2.names:
        names = [
            f"({L1.name_of(i)},{L2.name_of(j)})"
            for i in range(L1.n)
            for j in range(L2.n)
        ]
    return FiniteLattice(leq, names=names, _validated=True)


def linear_sum(L1, L2):
    """Stack L1 below L2: every element of L1 lies below all of L2."""
    n = L1.n + L2.n
    if n > size_cap():
        raise SizeCapExceeded(f"sum has {n} elements, cap {size_cap()}")
    leq = np.zeros((n, n), dtype=bool)
    leq[: L1.n, : L1.n] = L1.leq
    leq[L1.n :, L1.n :] = L2.leq
    leq[: L1.n, L1.n :] = True
    names = None
    if L1.names or L2.names:
        names = [L1.name_of(i) for i in range(L1.n)] + [
            L2.name_of(j) for j in range(L2.n)
        ]
    return FiniteLattice(leq, names=names, _validated=True)


def two_by_chain(k):
    """2 x C_k, the width-two ladder segment."""
    return product(chain(2), chain(k))


def boolean(k):
    """The boolean lattice of subsets of {0..k-1}, numbered by bitmask."""
    n = 1 << k
    if n > size_cap():
        raise SizeCapExceeded(f"boolean({k}) has {n} elements, cap {size_cap()}")
    masks = np.arange(n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    return FiniteLattice(leq, _validated=True)


def cube3():
    """The eight-element boolean algebra 2 x 2 x 2."""
    return boolean(3)


def m3():
    """The diamond: bottom 0, atoms 1,2,3, top 4."""
    return FiniteLattice.from_covers(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    )


def n5():
    """The pentagon: 0 < 1 < 3 < 4 on one side, 0 < 2 < 4 on the other."""
    return FiniteLattice.from_covers(5, [(0, 1), (0, 2), (1, 3), (3, 4), (2, 4)])


_CALL = re.compile(r"^([a-z_0-9]+)\s*(?:\((.*)\))?$", re.S)

_NULLARY = {"cube3": cube3, "m3": m3, "n5": n5}
_UNARY = {"chain": chain, "two_by_chain": two_by_chain, "boolean": boolean}
_BINARY = {"product": product, "linear_sum": linear_sum}


def _split_args(text):
    parts, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:pos])
            start = pos + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def construct(spec):
    """Build a catalog lattice from a spec string.

    Examples: "m3", "chain(4)", "product(chain(2), chain(3))",
    "linear_sum(cube3, two_by_chain(3))".
    """
    spec = spec.strip()
    match = _CALL.match(spec)
    if not match:
        raise ValueError(f"bad construct spec: {spec!r}")
    head, argtext = match.groups()
    if argtext is None or argtext.strip() == "":
        if head not in _NULLARY:
            raise ValueError(f"unknown lattice name: {head!r}")
        return _NULLARY[head]()
    args = _split_args(argtext)
    if head in _UNARY:
        if len(args) != 1:
            raise ValueError(f"{head} takes one argument")
        return _UNARY[head](int(args[0]))
    if head in _BINARY:
        if len(args) != 2:
            raise ValueError(f"{head} takes two arguments")
        return _BINARY[head](construct(args[0]), construct(args[1]))
    raise ValueError(f"unknown constructor: {head!r}")
