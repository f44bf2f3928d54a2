"""Exact Poincare-series arithmetic and closed-form dimension formulas.

Series are rational functions p(t)/q(t) with exact rational
coefficients, reduced to lowest terms and printed with integer
polynomials.  The generating functions encode stabilizer cohomology
dimensions above the virtual cohomological dimension (which is 2 for
the groups treated here, so every series vanishes below degree 3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

import numpy as np

from ._modp import rank_mod
from .complexes import OrbitComplex
from .groups import dihedral_mod_ell_homology, _check_prime


class CensusError(ValueError):
    """Inconsistent subgroup census data."""


# --------------------------------------------------------------------------
# Polynomials over Q (dense, ascending coefficients)

Coeffs = tuple[Fraction, ...]


def _poly(coeffs) -> Coeffs:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _poly_add(a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    return _poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)])


def _poly_mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly(out)


def _poly_scale(c: Fraction, a: Coeffs) -> Coeffs:
    return _poly([c * x for x in a])


def _poly_divmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(rem) >= len(b):
        c = rem[-1] / b[-1]
        k = len(rem) - len(b)
        quot[k] = c
        for i, y in enumerate(b):
            rem[k + i] -= c * y
        while rem and rem[-1] == 0:
            rem.pop()
    return _poly(quot), _poly(rem)


def _poly_gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if not a:
        return ()
    return _poly_scale(1 / a[-1], a)  # monic


def _poly_str(a: Coeffs) -> str:
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "t" if mag == 1 else f"{mag}*t"
        else:
            body = f"t^{k}" if mag == 1 else f"{mag}*t^{k}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms)


class RationalSeries:
    """Exact rational function in t, reduced, with den(0) != 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        n, d = _poly(num), _poly(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        g = _poly_gcd(n, d) if n else ()
        if g and len(g) > 1:
            n = _poly_divmod(n, g)[0]
            d = _poly_divmod(d, g)[0]
        if not n:
            d = (Fraction(1),)
        if d[0] == 0:
            raise ValueError("denominator vanishes at t = 0")
        # integerize with joint content 1 and positive leading denominator
        denoms = [c.denominator for c in n + d]
        mult = 1
        for q in denoms:
            mult = mult * q // gcd(mult, q)
        n = _poly_scale(Fraction(mult), n)
        d = _poly_scale(Fraction(mult), d)
        content = 0
        for c in n + d:
            content = gcd(content, c.numerator)
        if content > 1:
            n = _poly_scale(Fraction(1, content), n)
            d = _poly_scale(Fraction(1, content), d)
        if d[-1] < 0:
            n = _poly_scale(Fraction(-1), n)
            d = _poly_scale(Fraction(-1), d)
        self.num, self.den = n, d

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(
            _poly_add(_poly_mul(self.num, other.den), _poly_mul(other.num, self.den)),
            _poly_mul(self.den, other.den))

    def scale(self, c) -> "RationalSeries":
        return RationalSeries(_poly_scale(Fraction(c), self.num), self.den)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalSeries)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def expand(self, n: int) -> list[Fraction]:
        """Power-series coefficients up to degree n, by long division."""
        if n < 0:
            raise ValueError("degree must be non-negative")
        out = []
        d0 = self.den[0]
        for k in range(n + 1):
            acc = self.num[k] if k < len(self.num) else Fraction(0)
            for j in range(1, min(k, len(self.den) - 1) + 1):
                acc -= self.den[j] * out[k - j]
            out.append(acc / d0)
        return out

    def __str__(self) -> str:
        if not self.num:
            return "0"
        if self.den == (Fraction(1),):
            return _poly_str(self.num)
        return f"({_poly_str(self.num)}) / ({_poly_str(self.den)})"

    __repr__ = __str__


ZERO_SERIES = RationalSeries(())


def series_add(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    return a + b


def series_scale(c, s: RationalSeries) -> RationalSeries:
    return s.scale(c)


def series_expand(s: RationalSeries, n: int) -> list[Fraction]:
    return s.expand(n)


# --------------------------------------------------------------------------
# Canonical component series

SERIES_CIRCLE = "Circle"
SERIES_EDGE3 = "Edge3"
SERIES_D2STAR = "D2star"
SERIES_A4STAR = "A4star"


def canonical_series(kind: str) -> RationalSeries:
    """The four pinned component generating functions:

    Circle  -2t^3 / (t-1)                 constant dims 2 from degree 3
    Edge3   -t^3 (t^2-t+2) / ((t-1)(t^2+1))   4-periodic 2,1,0,1
    D2star  -t^3 (3t-5) / (2 (t-1)^2)     half-integral, dims q - 1/2
    A4star  -t^3 (t^3-2t^2+2t-3) / (2 (t-1)^2 (t^2+t+1))
    """
    if kind == SERIES_CIRCLE:
        return RationalSeries([0, 0, 0, -2], [-1, 1])
    if kind == SERIES_EDGE3:
        return RationalSeries([0, 0, 0, -2, 1, -1], [-1, 1, -1, 1])
    if kind == SERIES_D2STAR:
        return RationalSeries([0, 0, 0, 5, -3], [2, -4, 2])
    if kind == SERIES_A4STAR:
        return RationalSeries([0, 0, 0, 3, -2, 2, -1], [2, -2, 0, -2, 2])
    raise ValueError(f"unknown series kind {kind!r}")


# --------------------------------------------------------------------------
# Subgroup census

_CENSUS_ALIASES = {
    "lambda4": "lambda4", "λ4": "lambda4", "lambda_4": "lambda4",
    "lambda4star": "lambda4star", "λ4*": "lambda4star", "λ4star": "lambda4star",
    "lambda_4*": "lambda4star",
    "lambda6": "lambda6", "λ6": "lambda6", "lambda_6": "lambda6",
    "lambda6star": "lambda6star", "λ6*": "lambda6star", "λ6star": "lambda6star",
    "lambda_6*": "lambda6star",
    "mu2": "mu2", "μ2": "mu2", "mu_2": "mu2",
    "mu3": "mu3", "μ3": "mu3", "mu_3": "mu3",
    "muT": "muT", "μT": "muT", "mu_T": "muT", "μ_T": "muT",
    "z2": "z2", "d2": "d2", "v": "v", "c": "c",
    "beta1": "beta1", "β1": "beta1", "β¹": "beta1",
    "beta2": "beta2", "β2": "beta2", "β²": "beta2",
}


@dataclass(frozen=True)
class SubgroupCensus:
    """Counts of conjugacy classes of finite subgroups, by type, plus the
    Betti data of the orbit space.  Missing fields default to zero; the
    counts are inputs here, never computed from number fields."""

    lambda4: int = 0
    lambda4star: int = 0
    lambda6: int = 0
    lambda6star: int = 0
    mu2: int = 0
    mu3: int = 0
    muT: int = 0
    z2: int = 0
    d2: int = 0
    v: int = 0
    c: int = 0
    beta1: int = 0
    beta2: int = 0

    @property
    def o2(self) -> int:
        return self.lambda4 - self.lambda4star

    @property
    def o3(self) -> int:
        return self.lambda6 - self.lambda6star

    @property
    def iota3(self) -> int:
        return self.lambda6star

    def validate(self) -> "SubgroupCensus":
        for name in self.__dataclass_fields__:
            val = getattr(self, name)
            if not isinstance(val, int) or val < 0:
                raise CensusError(f"{name} must be a non-negative integer")
        if self.lambda4star > self.lambda4:
            raise CensusError("lambda4star exceeds lambda4")
        if self.lambda6star > self.lambda6:
            raise CensusError("lambda6star exceeds lambda6")
        if self.mu3 % 2:
            raise CensusError("mu3 must be even")
        if self.d2 % 2:
            raise CensusError("d2 must be even")
        return self

    @staticmethod
    def from_dict(doc: dict) -> "SubgroupCensus":
        fields = {}
        for key, val in doc.items():
            name = _CENSUS_ALIASES.get(key)
            if name is None:
                raise CensusError(f"unknown census field {key!r}")
            if name in fields:
                raise CensusError(f"duplicate census field {key!r}")
            fields[name] = val
        return SubgroupCensus(**fields).validate()

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


def _validated_expansion(series: RationalSeries, what: str, degree: int = 20) -> None:
    coeffs = series.expand(degree)
    for q, cq in enumerate(coeffs):
        if cq.denominator != 1 or cq < 0 or (q < 3 and cq != 0):
            raise CensusError(
                f"census inconsistency: {what} has coefficient {cq} at degree {q}")


def poincare_2torsion(census: SubgroupCensus) -> RationalSeries:
    """Generating function of the mod-2 homology dimensions above the vcd:
    the circle / D2-excess / A4-excess combination weighted by the census."""
    census.validate()
    s = canonical_series(SERIES_CIRCLE).scale(
        Fraction(census.lambda4) - Fraction(3 * census.mu2 - 2 * census.muT, 2))
    s = s + canonical_series(SERIES_D2STAR).scale(census.mu2 - census.muT)
    s = s + canonical_series(SERIES_A4STAR).scale(census.muT)
    _validated_expansion(s, "2-torsion series")
    return s


def poincare_3torsion(census: SubgroupCensus) -> RationalSeries:
    """Mod-3 counterpart: circles plus single edges, weighted by the census."""
    census.validate()
    s = canonical_series(SERIES_CIRCLE).scale(
        Fraction(census.lambda6) - Fraction(census.mu3, 2))
    s = s + canonical_series(SERIES_EDGE3).scale(Fraction(census.mu3, 2))
    _validated_expansion(s, "3-torsion series")
    return s


# --------------------------------------------------------------------------
# Equivariant cohomology oracle for 1-dimensional complexes

ORACLE_STABILIZERS = ("C1", "C2", "C3", "D2", "D3")


def stabilizer_cohomology_dim(tag: str, ell: int, q: int) -> int:
    """Pinned dim of H^q(G; F_ell) for the oracle's stabilizer types."""
    if tag not in ORACLE_STABILIZERS:
        raise ValueError(f"unsupported stabilizer {tag!r}")
    if q < 0:
        return 0
    if q == 0:
        return 1
    if ell == 2:
        if tag in ("C2", "D3"):
            return 1
        if tag == "D2":
            return q + 1
        return 0
    if ell == 3:
        if tag == "C3":
            return 1
        if tag == "D3":
            return 1 if q % 4 in (0, 3) else 0
        return 0
    return 0


def restriction_block(vtag: str, etag: str, emb: int, ell: int, q: int) -> np.ndarray:
    """Pinned matrix of the restriction H^q(vertex) -> H^q(edge) for the
    catalog inclusions; emb indexes the conjugacy class of the embedding
    (only C2 in D2 has more than one)."""
    dv = stabilizer_cohomology_dim(vtag, ell, q)
    de = stabilizer_cohomology_dim(etag, ell, q)
    block = np.zeros((de, dv), dtype=np.int64)
    if de == 0 or dv == 0:
        return block
    if vtag == etag:
        np.fill_diagonal(block, 1)
        return block
    if (vtag, etag, ell) == ("D2", "C2", 2):
        # basis of H^q(D2; F2): monomials x^(q-j) y^j, j = 0..q
        if emb % 3 == 0:
            block[0, 0] = 1          # substitute (x, y) -> (t, 0)
        elif emb % 3 == 1:
            block[0, q] = 1          # (x, y) -> (0, t)
        else:
            block[0, :] = 1          # (x, y) -> (t, t)
        return block
    if (vtag, etag) in (("D3", "C2"), ("D3", "C3")):
        # Sylow restrictions are injective on the ell-primary part and
        # both sides are at most one-dimensional here
        block[0, 0] = 1
        return block
    raise ValueError(f"unsupported inclusion {etag!r} in {vtag!r}")


def equivariant_graph_cohomology_oracle(cx: OrbitComplex, ell: int,
                                        q_range) -> dict[int, int]:
    """Equivariant cohomology dims of a 1-dimensional complex, assembled
    degree by degree from the vertex-to-edge restriction maps:
    dim H^q = dim ker(alpha_q) + dim coker(alpha_{q-1}) for the map
    alpha_q : (+)_v H^q(G_v) -> (+)_e H^q(G_e)."""
    from .complexes import edge_end_assignments

    if cx.dimension > 1:
        raise ValueError("oracle requires a complex of dimension <= 1")
    for c in cx.cells:
        if c.stabilizer not in ORACLE_STABILIZERS:
            raise ValueError(f"unsupported stabilizer {c.stabilizer!r} on {c.id!r}")
    vertices = sorted(cx.cells_of_dim(0), key=lambda c: c.id)
    edges = sorted(cx.cells_of_dim(1), key=lambda c: c.id)
    ends = edge_end_assignments(cx)

    def alpha(q: int) -> np.ndarray:
        vdims = [stabilizer_cohomology_dim(v.stabilizer, ell, q) for v in vertices]
        edims = [stabilizer_cohomology_dim(e.stabilizer, ell, q) for e in edges]
        voff = np.concatenate([[0], np.cumsum(vdims)])
        eoff = np.concatenate([[0], np.cumsum(edims)])
        mat = np.zeros((int(eoff[-1]), int(voff[-1])), dtype=np.int64)
        vindex = {v.id: k for k, v in enumerate(vertices)}
        for j, e in enumerate(edges):
            for vid, sign, emb in ends[e.id]:
                k = vindex[vid]
                block = restriction_block(vertices[k].stabilizer, e.stabilizer,
                                          emb, ell, q)
                mat[eoff[j]:eoff[j + 1], voff[k]:voff[k + 1]] += sign * block
        return mat

    dims = {}
    prev = None
    prev_q = None
    for q in sorted(q_range):
        if q < 1:
            raise ValueError("oracle degrees must be >= 1")
        a_q = alpha(q)
        a_prev = prev if prev_q == q - 1 else alpha(q - 1)
        ker = a_q.shape[1] - rank_mod(a_q, ell)
        coker = a_prev.shape[0] - rank_mod(a_prev, ell)
        dims[q] = ker + coker
        prev, prev_q = a_q, q
    return dims


# --------------------------------------------------------------------------
# Closed-form dimension formulas

def coxeter_homology(m: int, ell: int, q: int) -> int:
    """Mod-ell homology dimension for reflection groups whose ell-torsion
    structure is m disjoint non-branching segments: m copies of the
    dihedral pattern."""
    _check_prime(ell)
    if ell == 2:
        raise ValueError("only odd primes supported")
    if m < 0:
        raise ValueError("component count must be non-negative")
    return m * dihedral_mod_ell_homology(ell, ell, q)


def triangle_group_homology(p: int, q: int, r: int, ell: int, deg: int) -> int:
    """Mod-ell homology dimension of the non-spherical triangle reflection
    group with parameters (p, q, r): the dihedral contributions add up."""
    _check_prime(ell)
    if ell == 2:
        raise ValueError("only odd primes supported")
    if min(p, q, r) < 2:
        raise ValueError("parameters must be >= 2")
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1:
        raise ValueError("spherical triple: the group is finite")
    if deg < 1:
        raise ValueError("degree must be >= 1")
    return sum(dihedral_mod_ell_homology(n, ell, deg) for n in (p, q, r))


def sl2_mod2_dims(beta1: int, beta2: int, q: int) -> int:
    """Mod-2 cohomology dimensions of the rank-one special linear groups
    whose non-central reduced 2-torsion quotient is a single edge, as a
    function of the orbit space Betti numbers."""
    if q < 1:
        raise ValueError("dimension display starts at q = 1")
    if q == 1:
        return beta1
    rem = q % 4
    if rem == 2:
        return beta1 + beta2 + 1
    if rem == 3:
        return beta1 + beta2 + 3
    if rem == 0:
        return beta1 + beta2 + 2
    return beta1 + beta2  # q = 4k+5


@dataclass(frozen=True)
class E2Page:
    """The spectral-sequence page concentrated in columns n = 0, 1, 2,
    with 4-periodic rows; entries are F_2-dimensions."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    a1: int = 0
    a2: int = 0
    a3: int = 0

    def row(self, q_mod4: int) -> tuple[int, int, int]:
        return tuple(self.entries[(n, q_mod4)] for n in range(3))


def e2_page(census: SubgroupCensus, chi_xs: int, xs_rows: dict) -> E2Page:
    """Assemble the 4-row page from the census (v, c), the orbit space
    Betti numbers, the Euler characteristic of the torsion subcomplex
    quotient and its own page entries (E01, E11, E03, E13, H2Xsprime)."""
    required = {"E01", "E11", "E03", "E13", "H2Xsprime"}
    missing = required - set(xs_rows)
    if missing:
        raise ValueError(f"missing xs_rows entries: {sorted(missing)}")
    v, c = census.v, census.c
    b1, b2 = census.beta1, census.beta2
    sign_v = 0 if v == 0 else 1
    a1 = chi_xs - 1 + b1 + c
    a2 = b2 + c
    a3 = b1 + v - sign_v
    for name, val in (("a1", a1), ("a2", a2), ("a3", a3)):
        if val < 0:
            raise ValueError(f"inconsistent inputs: {name} = {val} < 0")
    entries = {
        (0, 0): 1, (1, 0): b1, (2, 0): b2,
        (0, 1): xs_rows["E01"], (1, 1): xs_rows["E11"] + a1, (2, 1): a2,
        (0, 2): xs_rows["H2Xsprime"] + (1 - sign_v), (1, 2): a3, (2, 2): b2,
        (0, 3): xs_rows["E03"], (1, 3): xs_rows["E13"] + a1, (2, 3): a2,
    }
    return E2Page(entries, a1, a2, a3)


def farrell_tate_sl2_dims(r: int, invariant_class: bool, q: int, ell: int) -> int:
    """Graded dimension of the ell-primary stable cohomology of a rank-one
    normalizer: a Laurent algebra on a degree-2 class tensored with an
    exterior algebra on r degree-1 classes, optionally taking invariants
    of the sign involution (which negates all generators)."""
    _check_prime(ell)
    if ell == 2:
        raise ValueError("only odd primes supported")
    if r < 0:
        raise ValueError("rank must be non-negative")
    total = 0
    for k in range(r + 1):
        if (q - k) % 2:
            continue
        if invariant_class and ((q - k) // 2 + k) % 2:
            continue
        total += comb(r, k)
    return total
