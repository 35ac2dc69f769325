"""Sublattice generation, gadgets, and the nine-element free lattice on
the fence poset B < C with A incomparable to both.

A gadget G(a; b, c) is the sublattice generated by three distinct
elements with b < c, a || b, a || c.  Every gadget is the image of the
nine elements of FL(P) under the evaluation homomorphism; the gadget's
fingerprint is the partition those nine named terms induce by equality
of their images, and its iso class is the canonical form of the
generated sublattice.
"""

from dataclasses import dataclass

from .core import FiniteLattice, canonical_key
from .errors import BadConfiguration, UniversalityFailure
from .freeterm import eval_term, parse

FLP_TERMS = {
    "AB": parse("A*B"),
    "B": parse("B"),
    "AC": parse("A*C"),
    "AC+B": parse("A*C+B"),
    "A": parse("A"),
    "(A+B)C": parse("(A+B)*C"),
    "C": parse("C"),
    "A+B": parse("A+B"),
    "A+C": parse("A+C"),
}

_FLP_ORDER = ["AB", "AC", "B", "AC+B", "A", "(A+B)C", "C", "A+B", "A+C"]

# Name map induced by order duality (B and C swap, joins and meets swap).
FLP_DUALITY = {
    "A": "A",
    "B": "C",
    "C": "B",
    "AB": "A+C",
    "AC": "A+B",
    "AC+B": "(A+B)C",
    "(A+B)C": "AC+B",
    "A+B": "AC",
    "A+C": "AB",
}


def flp_nine():
    """The nine-element free lattice FL(P), hard-coded from its diagram.

    Covers: AB < AC, AB < B, AC < A, AC < AC+B, B < AC+B,
    AC+B < (A+B)C, (A+B)C < A+B, (A+B)C < C, A < A+B, A+B < A+C,
    C < A+C.
    """
    names = _FLP_ORDER
    index = {name: i for i, name in enumerate(names)}
    cover_names = [
        ("AB", "AC"),
        ("AB", "B"),
        ("AC", "A"),
        ("AC", "AC+B"),
        ("B", "AC+B"),
        ("AC+B", "(A+B)C"),
        ("(A+B)C", "A+B"),
        ("(A+B)C", "C"),
        ("A", "A+B"),
        ("A+B", "A+C"),
        ("C", "A+C"),
    ]
    covers = [(index[lo], index[hi]) for lo, hi in cover_names]
    L = FiniteLattice.from_covers(9, covers, names=names)
    # transcription guard: the three generators must regenerate everything
    gen = generate_sublattice(L, {index["A"], index["B"], index["C"]})
    assert gen == set(range(9)), "FL(P) transcription error"
    return L


def generate_sublattice(L, seed):
    """Least subset containing seed closed under join and meet."""
    seed = set(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    current = set(seed)
    frontier = list(current)
    while frontier:
        fresh = []
        members = list(current)
        for x in frontier:
            for y in members:
                for z in (L.join(x, y), L.meet(x, y)):
                    if z not in current:
                        current.add(z)
                        fresh.append(z)
        frontier = fresh
    return current


@dataclass(frozen=True)
class GadgetReport:
    generators: tuple
    generated: tuple
    size: int
    fingerprint: tuple  # partition of the nine FL(P) names by image
    iso_class: tuple  # canonical form of the generated sublattice

    def to_json_dict(self):
        return {
            "generators": list(self.generators),
            "generated": list(self.generated),
            "size": self.size,
            "fingerprint": [list(block) for block in self.fingerprint],
            "iso_class": _key_to_covers(self.iso_class),
        }


def _key_to_covers(key):
    """Canonical keys are relabeled order matrices; emit their covers."""
    n = len(key)
    out = []
    for i in range(n):
        for j in range(n):
            if i != j and key[i][j]:
                if not any(
                    k != i and k != j and key[i][k] and key[k][j] for k in range(n)
                ):
                    out.append([i, j])
    return out


def admissible_triples(L):
    """All (a, b, c) with b < c, a parallel to b and to c, ascending."""
    n = L.n
    out = []
    for a in range(n):
        for b in range(n):
            if L.incomparable(a, b):
                for c in range(n):
                    if c != b and L.le(b, c) and L.incomparable(a, c):
                        out.append((a, b, c))
    return out


def gadget(L, a, b, c):
    """Generate and fingerprint the gadget G(a; b, c)."""
    if len({a, b, c}) != 3:
        raise BadConfiguration("a, b, c distinct")
    if not (L.le(b, c) and b != c):
        raise BadConfiguration("b < c")
    if not L.incomparable(a, b):
        raise BadConfiguration("a || b")
    if not L.incomparable(a, c):
        raise BadConfiguration("a || c")
    assignment = {"A": a, "B": b, "C": c}
    images = {
        name: eval_term(term, L, assignment) for name, term in FLP_TERMS.items()
    }
    generated = generate_sublattice(L, {a, b, c})
    assert generated == set(images.values()), "gadget closure beyond FL(P) images"
    by_image = {}
    for name in _FLP_ORDER:
        by_image.setdefault(images[name], []).append(name)
    fingerprint = tuple(
        sorted(tuple(sorted(block)) for block in by_image.values())
    )
    sub, _ = L.restrict(generated)
    return GadgetReport(
        generators=(a, b, c),
        generated=tuple(sorted(generated)),
        size=len(generated),
        fingerprint=fingerprint,
        iso_class=canonical_key(sub),
    )


@dataclass(frozen=True)
class UniversalityReport:
    triples_checked: int

    def to_json_dict(self):
        return {"triples_checked": self.triples_checked, "all_passed": True}


def verify_universal(L):
    """Check the universal property on every admissible triple of L.

    The generator assignment A->a, B->b, C->c must extend to a
    join/meet-preserving map of FL(P) onto the gadget; the extension is
    evaluation of the nine terms and uniqueness is forced on
    generators.  Failure would indicate an implementation bug.
    """
    F = flp_nine()
    index = {name: i for i, name in enumerate(F.names)}
    checked = 0
    for a, b, c in admissible_triples(L):
        assignment = {"A": a, "B": b, "C": c}
        phi = [None] * 9
        for name, term in FLP_TERMS.items():
            phi[index[name]] = eval_term(term, L, assignment)
        generated = generate_sublattice(L, {a, b, c})
        if set(phi) != generated:
            raise UniversalityFailure((a, b, c))
        for u in range(9):
            for v in range(9):
                if phi[F.join(u, v)] != L.join(phi[u], phi[v]) or phi[
                    F.meet(u, v)
                ] != L.meet(phi[u], phi[v]):
                    raise UniversalityFailure((a, b, c))
        checked += 1
    return UniversalityReport(triples_checked=checked)


@dataclass(frozen=True)
class GadgetCensus:
    lattices: int
    gadgets: int
    pairs: dict  # (fingerprint, iso_class) -> count
    fingerprints: dict  # fingerprint -> count
    iso_classes: dict  # canonical key -> count

    def to_json_dict(self):
        return {
            "lattices": self.lattices,
            "gadgets": self.gadgets,
            "distinct_pairs": len(self.pairs),
            "distinct_fingerprints": len(self.fingerprints),
            "distinct_iso_classes": len(self.iso_classes),
            "cases": [
                {
                    "fingerprint": [list(b) for b in fp],
                    "gadget_size": len(key),
                    "count": count,
                }
                for (fp, key), count in sorted(self.pairs.items())
            ],
            "iso_class_sizes": sorted(len(key) for key in self.iso_classes),
        }


def census_one(L):
    """(fingerprint, iso_class) multiset of a single lattice's gadgets."""
    pairs, total = {}, 0
    for a, b, c in admissible_triples(L):
        report = gadget(L, a, b, c)
        total += 1
        key = (report.fingerprint, report.iso_class)
        pairs[key] = pairs.get(key, 0) + 1
    return total, pairs


def gadget_census(lattices, jobs=1):
    """Count gadget (fingerprint, iso class) cases over a lattice stream."""
    lattices = list(lattices)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(census_one, lattices, chunksize=8))
    else:
        results = [census_one(L) for L in lattices]
    pairs, gadgets = {}, 0
    for total, chunk in results:
        gadgets += total
        for key, count in chunk.items():
            pairs[key] = pairs.get(key, 0) + count
    fingerprints, iso_classes = {}, {}
    for (fp, key), count in pairs.items():
        fingerprints[fp] = fingerprints.get(fp, 0) + count
        iso_classes[key] = iso_classes.get(key, 0) + count
    return GadgetCensus(
        lattices=len(lattices),
        gadgets=gadgets,
        pairs=pairs,
        fingerprints=fingerprints,
        iso_classes=iso_classes,
    )
