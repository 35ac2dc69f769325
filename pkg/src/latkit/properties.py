"""Equational and forbidden-sublattice property checkers.

The equational laws, with + for join and juxtaposition for meet:

  modular:        a <= c  implies  a + bc = (a + b)c
  distributive:   a(b + c) = ab + ac
  SD-join:        a + b = a + c  implies  a + b = a + bc
  SD-meet:        ab = ac        implies  ab = a(b + c)
  Whitman (W):    ab <= c + d  implies  a <= c+d, b <= c+d,
                  ab <= c, or ab <= d

The semidistributive laws and (W) follow the standard formulations from
the free-lattice literature.  Witnesses are the lexicographically least
violating tuples, so reports are deterministic; (W) witnesses are
normalized to x < y and z < w (the law is symmetric in each pair).
"""

from dataclasses import dataclass

from .catalog import m3, n5
from .core import find_isomorphism
from .errors import M3N5Disagreement


@dataclass(frozen=True)
class PropertyReport:
    property: str
    verdict: bool
    witness: tuple | None = None

    def to_json_dict(self):
        return {
            "property": self.property,
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def is_modular(L):
    n, leq = L.n, L.leq
    join, meet = L.join_table, L.meet_table
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if leq[a, c] and join[a, meet[b, c]] != meet[join[a, b], c]:
                    return PropertyReport("modular", False, (a, b, c))
    return PropertyReport("modular", True)


def is_distributive(L):
    n = L.n
    join, meet = L.join_table, L.meet_table
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                    return PropertyReport("distributive", False, (a, b, c))
    return PropertyReport("distributive", True)


def is_semidistributive(L, side="both"):
    if side not in ("join", "meet", "both"):
        raise ValueError(f"side must be join|meet|both, got {side!r}")
    n = L.n
    join, meet = L.join_table, L.meet_table
    if side in ("join", "both"):
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    ab = join[a, b]
                    if ab == join[a, c] and ab != join[a, meet[b, c]]:
                        return PropertyReport(f"sd-{side}", False, (a, b, c))
    if side in ("meet", "both"):
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    ab = meet[a, b]
                    if ab == meet[a, c] and ab != meet[a, join[b, c]]:
                        return PropertyReport(f"sd-{side}", False, (a, b, c))
    return PropertyReport(f"sd-{side}", True)


def whitman_w(L):
    """Quadruple scan with early exit; quadratic prefilter on (x, y)."""
    n, leq = L.n, L.leq
    join, meet = L.join_table, L.meet_table
    for x in range(n):
        for y in range(x + 1, n):
            xy = meet[x, y]
            for z in range(n):
                if xy == meet[xy, z]:
                    continue  # xy <= z settles every (z, w) and (w, z)
                for w in range(z + 1, n):
                    if xy != meet[xy, w]:
                        zw = join[z, w]
                        if (
                            leq[xy, zw]
                            and not leq[x, zw]
                            and not leq[y, zw]
                        ):
                            return PropertyReport("whitman", False, (x, y, z, w))
    return PropertyReport("whitman", True)


_PATTERNS = {"M3": m3, "N5": n5}


def find_forbidden(L, pattern):
    """Search for a sublattice isomorphic to M3 or N5.

    A pentagon exists iff some triple x, y < z with x parallel to both
    has x+y = x+z and xy = xz; a diamond iff some pairwise-incomparable
    triple shares its pairwise joins and meets.  The two extra elements
    of the five-tuple are forced, so this is the pruned five-tuple
    search.  Returns the least embedding as a map from the catalog
    pattern's elements, or None.
    """
    if pattern not in _PATTERNS:
        raise ValueError(f"pattern must be M3 or N5, got {pattern!r}")
    n = L.n
    join, meet = L.join_table, L.meet_table
    inc = L.incomparable
    if pattern == "N5":
        for x in range(n):
            for y in range(n):
                if inc(x, y):
                    for z in range(n):
                        if (
                            z != y
                            and L.leq[y, z]
                            and inc(x, z)
                            and join[x, y] == join[x, z]
                            and meet[x, y] == meet[x, z]
                        ):
                            bot, top = int(meet[x, y]), int(join[x, y])
                            return {0: bot, 1: y, 2: x, 3: z, 4: top}
        return None
    for x in range(n):
        for y in range(x + 1, n):
            if inc(x, y):
                for z in range(y + 1, n):
                    if (
                        inc(x, z)
                        and inc(y, z)
                        and join[x, y] == join[x, z] == join[y, z]
                        and meet[x, y] == meet[x, z] == meet[y, z]
                    ):
                        bot, top = int(meet[x, y]), int(join[x, y])
                        return {0: bot, 1: x, 2: y, 3: z, 4: top}
    return None


def embedding_is_valid(L, pattern, emb):
    """Re-check an embedding: closed image, pattern-isomorphic order."""
    P = _PATTERNS[pattern]()
    elems = sorted(set(emb.values()))
    if len(elems) != P.n:
        return False
    for i in range(P.n):
        for j in range(P.n):
            if P.leq[i, j] != L.leq[emb[i], emb[j]]:
                return False
    for x in elems:
        for y in elems:
            if L.join(x, y) not in elems or L.meet(x, y) not in elems:
                return False
    sub, subset = L.restrict(elems)
    return find_isomorphism(P, sub) is not None


@dataclass(frozen=True)
class CrossCheckReport:
    modular: bool
    distributive: bool
    n5_embedding: dict | None
    m3_embedding: dict | None

    @property
    def agree(self):
        return True  # construction refuses to produce a disagreement

    def to_json_dict(self):
        return {
            "modular": self.modular,
            "distributive": self.distributive,
            "n5_found": self.n5_embedding is not None,
            "m3_found": self.m3_embedding is not None,
        }


def m3n5_crosscheck(L):
    """Assert: modular iff no N5 sublattice; distributive iff neither
    N5 nor M3 occurs.  A disagreement would falsify the implementation,
    never the theorem.
    """
    mod = is_modular(L)
    dist = is_distributive(L)
    emb_n5 = find_forbidden(L, "N5")
    emb_m3 = find_forbidden(L, "M3")
    if mod.verdict != (emb_n5 is None):
        raise M3N5Disagreement(
            f"modular={mod.verdict} but N5 embedding={emb_n5} (witness {mod.witness})"
        )
    if dist.verdict != (emb_n5 is None and emb_m3 is None):
        raise M3N5Disagreement(
            f"distributive={dist.verdict} but embeddings N5={emb_n5} M3={emb_m3}"
        )
    return CrossCheckReport(mod.verdict, dist.verdict, emb_n5, emb_m3)


def check_property(L, name):
    """Dispatch used by the CLI; returns a PropertyReport-shaped result."""
    if name == "modular":
        return is_modular(L)
    if name == "distributive":
        return is_distributive(L)
    if name == "sd-join":
        return is_semidistributive(L, "join")
    if name == "sd-meet":
        return is_semidistributive(L, "meet")
    if name == "sd":
        return is_semidistributive(L, "both")
    if name == "whitman":
        return whitman_w(L)
    if name in ("forbidden-m3", "forbidden-n5"):
        pattern = "M3" if name.endswith("m3") else "N5"
        emb = find_forbidden(L, pattern)
        witness = tuple(sorted(emb.items())) if emb else None
        return PropertyReport(name, emb is not None, witness)
    raise ValueError(f"unknown property: {name!r}")
