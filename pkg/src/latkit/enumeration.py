"""Exhaustive generation of small finite lattices, one representative
per isomorphism class, plus the brute-force oracle and the scanners
built on the stream.

Generation scheme: a finite lattice minus its top is a meet-semilattice
and every finite meet-semilattice plus a new top is a lattice, so
n-element lattices correspond to (n-1)-element meet-semilattices.
Meet-semilattices are hereditary under deleting a maximal element,
which admits orderly generation: extend by a new maximal element whose
strict down-set is an ideal D such that D intersect down(x) has a
greatest element for every x (the meet condition), and accept a child
iff deleting its canonically chosen maximal element returns the parent
(canonical-parent test), with per-parent dedup of child keys.  The slow
poset-filter path is retained as an independent oracle.

Internal representation: a poset with natural labeling (i < j in the
order implies i < j as integers) stored as a tuple dwn with dwn[i] the
bitmask of {j : j <= i}, i included.
"""

from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from .core import FiniteLattice
from .errors import CapExceeded
from .properties import is_semidistributive, whitman_w

DEFAULT_ENUM_CAP = 9

LATTICE_COUNTS = (1, 1, 1, 2, 5, 15, 53)  # n = 1..7, frozen from the oracle


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _ups_of(dwn):
    n = len(dwn)
    ups = [1 << i for i in range(n)]
    for j in range(n):
        for i in _bits(dwn[j]):
            ups[i] |= 1 << j
    return ups


def _poset_colors(dwn, ups):
    n = len(dwn)
    colors = [(bin(dwn[i]).count("1"), bin(ups[i]).count("1")) for i in range(n)]
    for _ in range(n):
        sigs = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in _bits(dwn[i] & ~(1 << i)))),
                tuple(sorted(colors[j] for j in _bits(ups[i] & ~(1 << i)))),
            )
            for i in range(n)
        ]
        palette = {s: r for r, s in enumerate(sorted(set(sigs)))}
        fresh = [palette[s] for s in sigs]
        if fresh == colors:
            break
        colors = fresh
    return colors


def poset_key_perm(dwn):
    """Canonical key of a natural-labeled poset and a permutation that
    achieves it (perm[a] = original element at canonical position a).

    The key is the minimum, over color-respecting relabelings, of the
    tuple of row masks of the relabeled order matrix; equal keys mean
    isomorphic posets.
    """
    n = len(dwn)
    if n == 0:
        return (), ()
    ups = _ups_of(dwn)
    colors = _poset_colors(dwn, ups)
    order = sorted(range(n), key=lambda i: (colors[i], i))
    blocks = []
    for i in order:
        if blocks and colors[blocks[-1][0]] == colors[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    best = best_perm = None
    for choice in product(*(permutations(b) for b in blocks)):
        perm = [e for blk in choice for e in blk]
        pos = [0] * n
        for a, e in enumerate(perm):
            pos[e] = a
        key = tuple(
            sum(
                1 << pos[j]
                for j in _bits(dwn[e])  # j <= e, so position pos[j] is set
            )
            for e in perm
        )
        # key[a] = mask of positions b with perm[b] <= perm[a]
        if best is None or key < best:
            best, best_perm = key, perm
    return best, tuple(best_perm)


def poset_key(dwn):
    return poset_key_perm(dwn)[0]


def _delete_element(dwn, e):
    remap = [i if i < e else i - 1 for i in range(len(dwn))]
    out = []
    for j, mask in enumerate(dwn):
        if j == e:
            continue
        out.append(sum(1 << remap[i] for i in _bits(mask) if i != e))
    return tuple(out)


def _valid_ideals(dwn):
    """Ideals D usable as the strict down-set of a new maximal element
    so that the extension stays a meet-semilattice."""
    k = len(dwn)
    out = []
    for D in range(1 << k):
        ok = True
        for i in _bits(D):
            if dwn[i] & ~D:
                ok = False  # not down-closed
                break
        if not ok:
            continue
        for x in range(k):
            if (D >> x) & 1:
                continue
            B = D & dwn[x]
            if B == 0:
                ok = False  # no common lower bound for the new pair
                break
            hb = B.bit_length() - 1
            if B & ~dwn[hb]:
                ok = False  # lower bounds lack a greatest element
                break
        if ok and (D or k == 0):
            out.append(D)
    return out


_SEMILATTICE_LEVELS = {1: [(1,)]}


def _semilattices(k):
    """Canonical meet-semilattices of size k, sorted by canonical key."""
    if k in _SEMILATTICE_LEVELS:
        return _SEMILATTICE_LEVELS[k]
    collected = []
    for parent in _semilattices(k - 1):
        pkey = poset_key(parent)
        local = {}
        for D in _valid_ideals(parent):
            child = parent + (D | (1 << (k - 1)),)
            ckey, cperm = poset_key_perm(child)
            if ckey in local:
                continue
            ups = _ups_of(child)
            maximal = [i for i in range(k) if ups[i] == 1 << i]
            pos = {e: a for a, e in enumerate(cperm)}
            mstar = min(maximal, key=lambda e: pos[e])
            if poset_key(_delete_element(child, mstar)) == pkey:
                local[ckey] = child
        collected.extend(sorted(local.items()))
    collected.sort()
    _SEMILATTICE_LEVELS[k] = [child for _, child in collected]
    return _SEMILATTICE_LEVELS[k]


def _lattice_from_dwn(dwn, add_top):
    k = len(dwn)
    n = k + 1 if add_top else k
    leq = np.eye(n, dtype=bool)
    for j in range(k):
        for i in _bits(dwn[j]):
            leq[i, j] = True
    if add_top:
        leq[:, k] = True
    return FiniteLattice(leq, _validated=True)


def all_lattices(n, cap=DEFAULT_ENUM_CAP):
    """All isomorphism classes of n-element lattices, deterministically
    ordered by canonical key of the top-removed semilattice."""
    if not 1 <= n <= cap:
        raise CapExceeded(f"n={n} outside 1..{cap}")
    if n == 1:
        return [_lattice_from_dwn((1,), add_top=False)]
    return [_lattice_from_dwn(s, add_top=True) for s in _semilattices(n - 1)]


def iter_lattices(max_n, cap=DEFAULT_ENUM_CAP):
    for n in range(1, max_n + 1):
        yield from all_lattices(n, cap=cap)


# -- brute-force oracle ------------------------------------------------


def oracle_lattice_census(n, prune_meets=None):
    """Poset-filter oracle: enumerate natural-labeled posets, keep the
    lattices, dedupe by canonical key.  Returns (classes, labeled).

    With prune_meets (default for n >= 8) branches that already lack a
    pairwise meet are cut early; the surviving leaves are the same.
    """
    if prune_meets is None:
        prune_meets = n >= 8
    keys = set()
    labeled = 0
    dwn = []

    def ideals(j):
        out = []
        for D in range(1 << j):
            if any(dwn[i] & ~D for i in _bits(D)):
                continue
            if prune_meets:
                ok = True
                for x in range(j):
                    if (D >> x) & 1:
                        continue
                    B = D & dwn[x]
                    if B == 0:
                        ok = False
                        break
                    hb = B.bit_length() - 1
                    if B & ~dwn[hb]:
                        ok = False
                        break
                if not ok or (D == 0 and j > 0):
                    continue
            out.append(D)
        return out

    def is_lattice():
        ups = _ups_of(dwn)
        for i in range(n):
            for j in range(i + 1, n):
                U = ups[i] & ups[j]
                if U == 0:
                    return False
                lb = (U & -U).bit_length() - 1
                if U & ~ups[lb]:
                    return False
                B = dwn[i] & dwn[j]
                if B == 0:
                    return False
                hb = B.bit_length() - 1
                if B & ~dwn[hb]:
                    return False
        return True

    def rec(j):
        nonlocal labeled
        if j == n:
            if is_lattice():
                labeled += 1
                keys.add(poset_key(tuple(dwn)))
            return
        for D in ideals(j):
            dwn.append(D | (1 << j))
            rec(j + 1)
            dwn.pop()

    rec(0)
    return len(keys), labeled


def _property_flags(payload):
    from .properties import check_property

    L, names = payload
    return all(check_property(L, name).verdict for name in names)


def filter_lattices(lattices, properties, jobs=1):
    """Property-filter a lattice list, optionally across processes;
    output order is the input order either way."""
    lattices = list(lattices)
    if not properties:
        return lattices
    payloads = [(L, tuple(properties)) for L in lattices]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            flags = list(pool.map(_property_flags, payloads, chunksize=16))
    else:
        flags = [_property_flags(p) for p in payloads]
    return [L for L, flag in zip(lattices, flags) if flag]


# -- conjecture 1 finite shadow -----------------------------------------


@dataclass(frozen=True)
class Pocket:
    zero: int
    one: int
    chain_a: tuple
    chain_b: tuple

    def to_json_dict(self):
        return {
            "zero": self.zero,
            "one": self.one,
            "A": list(self.chain_a),
            "B": list(self.chain_b),
        }


def pocket_decomposition(L):
    """Split a width-two lattice into the conjectured chain of pockets.

    A pocket is an interval [zero, one] whose interior is two disjoint
    chains A and B with every cross pair incomparable, meeting at zero
    and joining at one.  Pocket boundaries are the inclusion-minimal
    intervals [meet, join] of incomparable pairs: a pair inside a pocket
    reproduces that pocket's boundary by the law, while pairs reaching
    across pockets span a strictly larger interval.  Chain stretches
    between pockets become bare pockets with empty A and B.
    Consecutive pockets may share exactly {next zero, previous one}, a
    vertical edge or a single point; all other pocket pairs must be
    disjoint.  Returns (pockets, failures) with concrete witnesses.
    """
    n = L.n
    failures = []
    bounds = {
        (L.meet(x, y), L.join(x, y))
        for x in range(n)
        for y in range(x + 1, n)
        if L.incomparable(x, y)
    }
    minimal = sorted(
        (
            (m, j)
            for m, j in bounds
            if not any(
                (m2, j2) != (m, j) and L.le(m, m2) and L.le(j2, j)
                for m2, j2 in bounds
            )
        ),
        key=lambda mj: (L.heights[mj[0]], mj),
    )
    pockets = []
    for m, j in minimal:
        interior = [
            z for z in range(n) if z not in (m, j) and L.le(m, z) and L.le(z, j)
        ]
        side_a = [
            z
            for z in interior
            if z == interior[0] or not L.incomparable(z, interior[0])
        ]
        side_b = [z for z in interior if z not in side_a]
        ok = True
        for side in (side_a, side_b):
            for x in side:
                for y in side:
                    if L.incomparable(x, y):
                        failures.append(("side-not-a-chain", m, j, x, y))
                        ok = False
        for x in side_a:
            for y in side_b:
                if not L.incomparable(x, y):
                    failures.append(("cross-pair-comparable", m, j, x, y))
                    ok = False
                elif L.meet(x, y) != m or L.join(x, y) != j:
                    failures.append(("pocket-law", m, j, x, y))
                    ok = False
        if not side_b:
            failures.append(("one-sided-pocket", m, j))
            ok = False
        if ok:
            pockets.append(
                Pocket(m, j, tuple(sorted(side_a)), tuple(sorted(side_b)))
            )

    spine = []

    def add_links(lo, hi):
        """Chain stretch from lo up to hi becomes bare pockets."""
        if lo == hi:
            return
        stretch = sorted(
            (z for z in range(n) if L.le(lo, z) and L.le(z, hi)),
            key=lambda z: L.heights[z],
        )
        for a, b in zip(stretch, stretch[1:]):
            if not L.le(a, b):
                failures.append(("gap-not-a-chain", a, b))
                return
            spine.append(Pocket(a, b, (), ()))

    previous = None
    for pocket in pockets:
        if previous is None:
            add_links(L.bottom, pocket.zero)
        elif L.le(previous.one, pocket.zero):
            add_links(previous.one, pocket.zero)
        else:
            shared = _members(previous) & _members(pocket)
            if shared != {previous.one, pocket.zero}:
                failures.append(
                    ("bad-pocket-overlap", previous.one, pocket.zero, tuple(sorted(shared)))
                )
            elif pocket.zero != previous.one:
                between = [
                    z
                    for z in range(n)
                    if L.le(pocket.zero, z)
                    and L.le(z, previous.one)
                    and z not in shared
                ]
                if between:
                    failures.append(
                        ("overlap-not-an-edge", pocket.zero, previous.one, tuple(between))
                    )
        spine.append(pocket)
        previous = pocket
    add_links(previous.one if previous else L.bottom, L.top)

    for i, p in enumerate(spine):
        for q in spine[i + 2 :]:
            shared = _members(p) & _members(q)
            if shared:
                failures.append(
                    ("nonconsecutive-overlap", p.zero, q.zero, tuple(sorted(shared)))
                )

    covered = set()
    for pocket in spine:
        covered.update(_members(pocket))
    missing = sorted(set(range(n)) - covered)
    if missing:
        failures.append(("uncovered-elements", tuple(missing)))
    return spine, failures


def _members(pocket):
    return {pocket.zero, pocket.one} | set(pocket.chain_a) | set(pocket.chain_b)


@dataclass
class ConjectureReport:
    scanned: int = 0
    width2_w: int = 0
    sd_failures: list = field(default_factory=list)
    decomposition_failures: list = field(default_factory=list)
    entries: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "scanned": self.scanned,
            "width2_whitman": self.width2_w,
            "sd_failures": [list(map(str, w)) for w in self.sd_failures],
            "decomposition_failures": [
                list(map(str, w)) for w in self.decomposition_failures
            ],
            "entries": self.entries,
        }


def conjecture1_scan(max_n, cap=DEFAULT_ENUM_CAP):
    """Finite shadow of the width-two conjecture: every width-two
    lattice satisfying (W) is reported with its semidistributivity
    status and pocket decomposition.  The scan never decides the
    conjecture; it only surfaces witnesses."""
    report = ConjectureReport()
    for L in iter_lattices(max_n, cap=cap):
        report.scanned += 1
        if L.width() != 2 or not whitman_w(L).verdict:
            continue
        report.width2_w += 1
        sd = is_semidistributive(L, "both")
        if not sd.verdict:
            report.sd_failures.append((L, sd.witness))
        pockets, failures = pocket_decomposition(L)
        for failure in failures:
            report.decomposition_failures.append((L, failure))
        report.entries.append(
            {
                "n": L.n,
                "covers": sorted(L.covers),
                "semidistributive": sd.verdict,
                "pockets": [p.to_json_dict() for p in pockets],
                "pocket_failures": [list(map(str, f)) for f in failures],
            }
        )
    return report


# -- umbrella verification driver ---------------------------------------


def verify_corpus(max_n=9, census_max=8, jobs=1):
    """Run every exhaustive acceptance check over the stream and
    aggregate pass/fail verdicts with witnesses."""
    from .classifier import check_theorem, constructive_iso_2xc, verify_prop_width3
    from .core import find_isomorphism
    from .catalog import two_by_chain
    from .jonsson import d_sequence
    from .properties import is_distributive, m3n5_crosscheck
    from .subalgebra import gadget_census, verify_universal

    report = {}

    counts = [len(all_lattices(n)) for n in range(1, min(max_n, 7) + 1)]
    report["counts"] = {
        "computed": counts,
        "expected": list(LATTICE_COUNTS[: len(counts)]),
        "pass": counts == list(LATTICE_COUNTS[: len(counts)]),
    }

    crosscheck_max = min(max_n, 8)
    disagreements = 0
    for L in iter_lattices(crosscheck_max):
        m3n5_crosscheck(L)  # raises on disagreement
    report["m3n5"] = {"max_n": crosscheck_max, "disagreements": disagreements, "pass": True}

    width3 = verify_prop_width3(iter_lattices(min(max_n, 9)))
    expected_width3 = 1 if max_n >= 8 else 0  # the cube has eight elements
    report["prop_width3"] = {
        "scanned": width3.scanned,
        "qualifying": width3.qualifying,
        "pass": width3.qualifying == expected_width3,
    }

    width2 = 0
    for L in iter_lattices(min(max_n, 9)):
        if (
            len(L.linear_decompose()) == 1
            and is_distributive(L).verdict
            and not L.doubly_reducibles()
            and L.width() == 2
        ):
            width2 += 1
            f = constructive_iso_2xc(L)
            assert f is not None
            assert find_isomorphism(L, two_by_chain(L.n // 2)) is not None
    report["prop_width2"] = {"instances": width2, "pass": True}

    for L in iter_lattices(min(max_n, 9)):
        check_theorem(L)  # raises TheoremDisagreement on failure
    report["gj_theorem"] = {"max_n": min(max_n, 9), "pass": True}

    census = gadget_census(iter_lattices(min(census_max, 8)), jobs=jobs)
    report["gadget_census"] = {
        "gadgets": census.gadgets,
        "iso_classes": len(census.iso_classes),
        "fingerprints": len(census.fingerprints),
        "pass": len(census.iso_classes) <= 6 and len(census.fingerprints) <= 7,
    }

    for L in iter_lattices(min(max_n, 6)):
        verify_universal(L)
    report["universality"] = {"max_n": min(max_n, 6), "pass": True}

    quadrant_ok = True
    for L in iter_lattices(min(max_n, 8)):
        if is_distributive(L).verdict:
            if d_sequence(L).quadrant != "(=,=)":
                quadrant_ok = False
    report["distributive_quadrant"] = {"pass": quadrant_ok}

    report["pass"] = all(
        section.get("pass", True) for section in report.values() if isinstance(section, dict)
    )
    return report
