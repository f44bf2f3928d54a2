"""Exact engine for the small finite groups occurring as cell stabilizers.

Groups are concrete permutation groups on {0..degree-1}, pinned by
generator lists so that every downstream artifact is byte-reproducible.
Everything here is brute force by design: subgroup lattices, Sylow
subgroups, normalizers and isomorphism tests are exhaustive searches,
valid for the catalog scale (order <= 24) plus the dihedral groups used
by the homology oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import numpy as np

from ._modp import SpanTracker, nullspace_mod, rank_mod

Perm = tuple[int, ...]

#: Catalog tags and their group orders.  D2 is the Klein four-group.
TAG_ORDERS = {
    "C1": 1, "C2": 2, "C3": 3, "C4": 4, "C6": 6,
    "D2": 4, "D3": 6, "D4": 8, "D6": 12, "A4": 12, "S4": 24,
}

CATALOG_TAGS = tuple(TAG_ORDERS)

#: Pinned permutation generators for each catalog tag.
_CATALOG_GENERATORS: dict[str, tuple[int, tuple[Perm, ...]]] = {
    "C1": (1, ()),
    "C2": (2, ((1, 0),)),
    "C3": (3, ((1, 2, 0),)),
    "C4": (4, ((1, 2, 3, 0),)),
    "C6": (5, ((1, 0, 3, 4, 2),)),
    "D2": (4, ((1, 0, 3, 2), (2, 3, 0, 1))),
    "D3": (3, ((1, 2, 0), (1, 0, 2))),
    "D4": (4, ((1, 2, 3, 0), (0, 3, 2, 1))),
    "D6": (6, ((1, 2, 3, 4, 5, 0), (0, 5, 4, 3, 2, 1))),
    "A4": (4, ((1, 0, 3, 2), (0, 2, 3, 1))),
    "S4": (4, ((1, 0, 2, 3), (1, 2, 3, 0))),
}


def compose(p: Perm, q: Perm) -> Perm:
    """Product p*q meaning: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def perm_order(p: Perm) -> int:
    e = identity_perm(len(p))
    q, n = p, 1
    while q != e:
        q = compose(q, p)
        n += 1
    return n


class FiniteGroup:
    """A concrete finite permutation group, immutable after construction."""

    __slots__ = ("degree", "elements", "tag", "_elemset")

    def __init__(self, degree: int, elements, tag: str | None = None):
        self.degree = degree
        self.elements: tuple[Perm, ...] = tuple(sorted(elements))
        self.tag = tag
        self._elemset = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def __contains__(self, p: Perm) -> bool:
        return p in self._elemset

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteGroup)
                and self.degree == other.degree
                and self._elemset == other._elemset)

    def __hash__(self) -> int:
        return hash((self.degree, self._elemset))

    def __repr__(self) -> str:
        name = self.tag or f"<order {self.order}>"
        return f"FiniteGroup({name}, degree={self.degree})"

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.degree == other.degree and self._elemset <= other._elemset


def closure(degree: int, gens) -> frozenset[Perm]:
    """Subgroup generated by gens, by breadth-first products."""
    found = {identity_perm(degree)}
    frontier = [g for g in gens if g not in found]
    found.update(frontier)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in found:
                    found.add(b)
                    nxt.append(b)
        # products with previously found elements close the set because
        # every element is a word in the generators
        frontier = nxt
    return frozenset(found)


def generate(degree: int, gens, tag: str | None = None) -> FiniteGroup:
    return FiniteGroup(degree, closure(degree, gens), tag)


def catalog_group(tag: str) -> FiniteGroup:
    """Pinned permutation realization of a catalog tag."""
    if tag not in _CATALOG_GENERATORS:
        raise ValueError(f"unknown catalog tag {tag!r}")
    degree, gens = _CATALOG_GENERATORS[tag]
    g = generate(degree, gens, tag)
    assert g.order == TAG_ORDERS[tag]
    return g


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return FiniteGroup(1, [()], "C1")
    gen = tuple((i + 1) % n for i in range(n))
    tag = f"C{n}" if f"C{n}" in TAG_ORDERS else None
    return generate(n, [gen], tag)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n (n >= 1) acting on n points."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return generate(2, [(1, 0)], "C2")
    if n == 2:
        return catalog_group("D2")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    tag = f"D{n}" if f"D{n}" in TAG_ORDERS else None
    return generate(n, [rot, ref], tag)


_SUBGROUP_CACHE: dict[tuple[int, frozenset], tuple[FiniteGroup, ...]] = {}


def subgroups(G: FiniteGroup) -> tuple[FiniteGroup, ...]:
    """All subgroups, by exhaustive closure growth.  Capped at order 24."""
    if G.order > 24:
        raise ValueError("subgroup enumeration is capped at order 24")
    key = (G.degree, G._elemset)
    cached = _SUBGROUP_CACHE.get(key)
    if cached is not None:
        return cached
    trivial = frozenset([G.identity])
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for g in G.elements:
                if g in H:
                    continue
                K = closure(G.degree, tuple(H) + (g,))
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    out = tuple(FiniteGroup(G.degree, H) for H in sorted(found, key=sorted))
    _SUBGROUP_CACHE[key] = out
    return out


def is_normal(G: FiniteGroup, H: FiniteGroup) -> bool:
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    for g in G.elements:
        gi = invert(g)
        for h in H.elements:
            if compose(compose(g, h), gi) not in H:
                return False
    return True


def normal_subgroups(G: FiniteGroup) -> tuple[FiniteGroup, ...]:
    return tuple(H for H in subgroups(G) if is_normal(G, H))


def sylow_subgroup(G: FiniteGroup, ell: int) -> FiniteGroup:
    """A Sylow ell-subgroup; deterministic choice (least element tuple)."""
    _check_prime(ell)
    pk = 1
    while G.order % (pk * ell) == 0:
        pk *= ell
    if pk == 1:
        return FiniteGroup(G.degree, [G.identity])
    candidates = [H for H in subgroups(G) if H.order == pk]
    return min(candidates, key=lambda H: H.elements)


def all_sylow_subgroups(G: FiniteGroup, ell: int) -> tuple[FiniteGroup, ...]:
    _check_prime(ell)
    pk = 1
    while G.order % (pk * ell) == 0:
        pk *= ell
    if pk == 1:
        return (FiniteGroup(G.degree, [G.identity]),)
    return tuple(H for H in subgroups(G) if H.order == pk)


def center(G: FiniteGroup) -> FiniteGroup:
    elems = [g for g in G.elements
             if all(compose(g, h) == compose(h, g) for h in G.elements)]
    return FiniteGroup(G.degree, elems)


def normalizer(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    elems = []
    for g in G.elements:
        gi = invert(g)
        if all(compose(compose(g, h), gi) in H for h in H.elements):
            elems.append(g)
    return FiniteGroup(G.degree, elems)


def is_ell_normal(G: FiniteGroup, ell: int) -> bool:
    """Zassenhaus: the center of one Sylow ell-subgroup is the center of
    every Sylow ell-subgroup in which it is contained.  Vacuously true
    when ell does not divide the group order."""
    _check_prime(ell)
    if G.order % ell:
        return True
    sylows = all_sylow_subgroups(G, ell)
    for P in sylows:
        Z = center(P)
        for Q in sylows:
            if Z.is_subgroup_of(Q) and center(Q) != Z:
                return False
    return True


def quotient_group(G: FiniteGroup, N: FiniteGroup) -> FiniteGroup:
    """G/N as a permutation group on the left cosets of N."""
    if not is_normal(G, N):
        raise ValueError("N is not normal in G")
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for g in G.elements:
        if g in coset_of:
            continue
        k = len(reps)
        for h in N.elements:
            coset_of[compose(g, h)] = k
        reps.append(g)
    index = len(reps)
    perms = set()
    for g in G.elements:
        perms.add(tuple(coset_of[compose(g, r)] for r in reps))
    return FiniteGroup(index, perms)


def commutator_subgroup(G: FiniteGroup) -> FiniteGroup:
    comms = set()
    for a in G.elements:
        ai = invert(a)
        for b in G.elements:
            comms.add(compose(compose(a, b), compose(ai, invert(b))))
    return FiniteGroup(G.degree, closure(G.degree, comms))


def _order_multiset(G: FiniteGroup) -> tuple[int, ...]:
    return tuple(sorted(perm_order(g) for g in G.elements))


def _fingerprint(G: FiniteGroup):
    ab = quotient_group(G, commutator_subgroup(G))
    return (G.order, _order_multiset(G), center(G).order, _order_multiset(ab))


def _generating_sequence(G: FiniteGroup) -> list[Perm]:
    gens: list[Perm] = []
    span = {G.identity}
    for g in G.elements:
        if g not in span:
            gens.append(g)
            span = set(closure(G.degree, gens))
            if len(span) == G.order:
                break
    return gens


def _extends_to_isomorphism(G: FiniteGroup, H: FiniteGroup,
                            gens: list[Perm], images: tuple[Perm, ...]) -> bool:
    # grow the map over G's Cayley graph; any conflict kills it
    phi = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            fx = phi[x]
            for g, h in zip(gens, images):
                y = compose(x, g)
                fy = compose(fx, h)
                if y in phi:
                    if phi[y] != fy:
                        return False
                else:
                    phi[y] = fy
                    nxt.append(y)
        frontier = nxt
    if len(set(phi.values())) != G.order:
        return False
    return all(phi[compose(a, b)] == compose(phi[a], phi[b])
               for a in G.elements for b in G.elements)


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Isomorphism test: invariant fingerprints with exhaustive
    generator-image fallback.  Complete for order <= 24."""
    if G.order != H.order:
        return False
    if G.degree == H.degree and G._elemset == H._elemset:
        return True
    if _fingerprint(G) != _fingerprint(H):
        return False
    gens = _generating_sequence(G)
    if not gens:
        return True
    orders = [perm_order(g) for g in gens]
    pools = [[h for h in H.elements if perm_order(h) == o] for o in orders]
    for images in itertools.product(*pools):
        if _extends_to_isomorphism(G, H, gens, images):
            return True
    return False


def identify_catalog_tag(G: FiniteGroup) -> str | None:
    """Catalog tag of G's isomorphism class, if it has one."""
    for tag in CATALOG_TAGS:
        if TAG_ORDERS[tag] == G.order and are_isomorphic(G, catalog_group(tag)):
            return tag
    return None


def has_trivial_mod_ell_cohomology(G: FiniteGroup, ell: int) -> bool:
    """True iff gcd(|G|, ell) = 1: for a finite group the reduced mod-ell
    cohomology vanishes exactly when the order is invertible mod ell."""
    _check_prime(ell)
    return gcd(G.order, ell) == 1


def dihedral_mod_ell_homology(n: int, ell: int, q: int) -> int:
    """dim over F_ell of H_q of the dihedral group of order 2n, for odd
    primes ell: 1 at q = 0, 1 at q = 3,4 mod 4 when ell | n, else 0."""
    _check_prime(ell)
    if ell == 2:
        raise ValueError("formula only stated for odd primes")
    if n < 1 or q < 0:
        raise ValueError("need n >= 1 and q >= 0")
    if q == 0:
        return 1
    if q % 4 in (3, 0):
        return 1 if gcd(n, ell) == ell else 0
    return 0


# --------------------------------------------------------------------------
# Brute-force homology oracle


RESOURCE_BOUND = 10 ** 5
_BAR_FEASIBLE = 1300  # largest (|G|-1)^(q_max+1) handled by the bar path


def mod_ell_homology_bruteforce(G: FiniteGroup, ell: int, q_max: int,
                                method: str = "auto") -> list[int]:
    """dim_{F_ell} H_q(G; F_ell) for 0 <= q <= q_max.

    Two interchangeable strategies sit behind one contract:

    * ``bar``: the normalized bar complex with rank computation over
      F_ell.  Exact but the chain groups grow like (|G|-1)^q, so it is
      only used at small scale.
    * ``resolution``: a free resolution over the group algebra F_ell[G]
      built degree by degree from kernel computations, tensored down to
      F_ell.  Same outputs, tiny matrices.

    ``auto`` picks the bar complex whenever it is cheap and the
    resolution otherwise; the two are cross-checked in the test suite.
    """
    _check_prime(ell)
    if q_max < 0:
        raise ValueError("q_max must be non-negative")
    if G.order ** (q_max + 1) > RESOURCE_BOUND:
        raise ValueError(
            f"resource bound exceeded: |G|^(q_max+1) = {G.order ** (q_max + 1)}"
            f" > {RESOURCE_BOUND}")
    if method == "auto":
        method = "bar" if (G.order - 1) ** (q_max + 1) <= _BAR_FEASIBLE else "resolution"
    if method == "bar":
        return _homology_via_bar(G, ell, q_max)
    if method == "resolution":
        return _homology_via_resolution(G, ell, q_max)
    raise ValueError(f"unknown method {method!r}")


def _homology_via_bar(G: FiniteGroup, p: int, q_max: int) -> list[int]:
    ident = G.identity
    nontriv = [g for g in G.elements if g != ident]
    m = len(nontriv)
    if m == 0:
        return [1] + [0] * q_max
    index = {g: i for i, g in enumerate(nontriv)}
    prod = [[index.get(compose(a, b)) for b in nontriv] for a in nontriv]

    def pos(tup: tuple[int, ...]) -> int:
        k = 0
        for t in tup:
            k = k * m + t
        return k

    ranks = [0] * (q_max + 2)
    for q in range(1, q_max + 2):
        rows, cols = m ** (q - 1), m ** q
        d = np.zeros((rows, cols), dtype=np.int64)
        for ci, tup in enumerate(itertools.product(range(m), repeat=q)):
            d[pos(tup[1:]), ci] += 1
            for i in range(q - 1):
                j = prod[tup[i]][tup[i + 1]]
                if j is not None:  # identity products vanish (normalized)
                    merged = tup[:i] + (j,) + tup[i + 2:]
                    d[pos(merged), ci] += (-1) ** (i + 1)
            d[pos(tup[:-1]), ci] += (-1) ** q
        ranks[q] = rank_mod(d, p)
    dims = [1 - ranks[1]]
    for q in range(1, q_max + 1):
        dims.append(m ** q - ranks[q] - ranks[q + 1])
    return dims


def _homology_via_resolution(G: FiniteGroup, p: int, q_max: int) -> list[int]:
    elems = list(G.elements)
    n = len(elems)
    index = {g: i for i, g in enumerate(elems)}
    lperm = np.array([[index[compose(a, b)] for b in elems] for a in elems],
                     dtype=np.int64)

    def left_act(v: np.ndarray, gi: int, slots: int) -> np.ndarray:
        out = np.zeros_like(v)
        perm = lperm[gi]
        for s in range(slots):
            out[s * n + perm] = v[s * n:(s + 1) * n]
        return out

    def module_generators(basis: np.ndarray, slots: int) -> list[np.ndarray]:
        tracker = SpanTracker(n * slots, p)
        gens = []
        for v in basis:
            if tracker.contains(v):
                continue
            gens.append(v)
            for gi in range(n):
                tracker.add(left_act(v, gi, slots))
        return gens

    aug = np.ones((1, n), dtype=np.int64)
    kernel = nullspace_mod(aug, p)
    ranks = [1]
    tensored: list[np.ndarray] = []
    slots = 1
    for _ in range(q_max + 1):
        gens = module_generators(kernel, slots)
        r_new = len(gens)
        T = np.zeros((slots, r_new), dtype=np.int64)
        for k, v in enumerate(gens):
            for s in range(slots):
                T[s, k] = int(v[s * n:(s + 1) * n].sum() % p)
        tensored.append(T)
        if r_new == 0:
            kernel = np.zeros((0, 0), dtype=np.int64)
            ranks.append(0)
            slots = 0
            continue
        phi = np.zeros((n * slots, n * r_new), dtype=np.int64)
        for k, v in enumerate(gens):
            for gi in range(n):
                phi[:, k * n + gi] = left_act(v, gi, slots)
        kernel = nullspace_mod(phi, p)
        ranks.append(r_new)
        slots = r_new
    t_ranks = [rank_mod(T, p) if T.size else 0 for T in tensored]
    dims = [ranks[0] - t_ranks[0]]
    for q in range(1, q_max + 1):
        ker_dim = ranks[q] - t_ranks[q - 1]
        dims.append(ker_dim - (t_ranks[q] if q < len(t_ranks) else 0))
    return dims


def _check_prime(ell: int) -> None:
    if ell < 2 or any(ell % d == 0 for d in range(2, int(ell ** 0.5) + 1)):
        raise ValueError(f"{ell} is not prime")


def mod_ell_cohomology_bruteforce(G: FiniteGroup, ell: int, q_max: int) -> list[int]:
    """Cohomology dims; equal to homology dims over a field."""
    return mod_ell_homology_bruteforce(G, ell, q_max)
