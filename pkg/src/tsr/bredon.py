"""Bredon chain complexes over complex representation rings.

The coefficient data is pinned: character tables of the stabilizer
types (values in Z[w], w a primitive cube root of unity), class fusions
for the catalog inclusions, and unimodular base changes that split every
induced map into a rank-1 block plus a 2-torsion and a 3-torsion block.
All pinned data is re-verified at first use (orthogonality, Frobenius
reciprocity, block structure), not trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complexes import OrbitComplex, edge_end_assignments
from .series import SubgroupCensus

# --------------------------------------------------------------------------
# Arithmetic in Q(w), w^2 = -1 - w (enough for all catalog characters)

Cyc = tuple[Fraction, Fraction]  # a + b*w


def _cyc(a, b=0) -> Cyc:
    return (Fraction(a), Fraction(b))


W = _cyc(0, 1)
W2 = _cyc(-1, -1)


def _cadd(x: Cyc, y: Cyc) -> Cyc:
    return (x[0] + y[0], x[1] + y[1])


def _cmul(x: Cyc, y: Cyc) -> Cyc:
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)


def _cconj(x: Cyc) -> Cyc:
    a, b = x
    return (a - b, -b)


# --------------------------------------------------------------------------
# Pinned character tables: (class sizes, rows of character values)

_CHARS: dict[str, tuple[list[int], list[list[Cyc]]]] = {
    "C1": ([1], [[_cyc(1)]]),
    "C2": ([1, 1], [
        [_cyc(1), _cyc(1)],
        [_cyc(1), _cyc(-1)],
    ]),
    "C3": ([1, 1, 1], [
        [_cyc(1), _cyc(1), _cyc(1)],
        [_cyc(1), W, W2],
        [_cyc(1), W2, W],
    ]),
    "D2": ([1, 1, 1, 1], [
        [_cyc(1), _cyc(1), _cyc(1), _cyc(1)],
        [_cyc(1), _cyc(1), _cyc(-1), _cyc(-1)],
        [_cyc(1), _cyc(-1), _cyc(1), _cyc(-1)],
        [_cyc(1), _cyc(-1), _cyc(-1), _cyc(1)],
    ]),
    "D3": ([1, 2, 3], [
        [_cyc(1), _cyc(1), _cyc(1)],
        [_cyc(1), _cyc(1), _cyc(-1)],
        [_cyc(2), _cyc(-1), _cyc(0)],
    ]),
    "A4": ([1, 3, 4, 4], [
        [_cyc(1), _cyc(1), _cyc(1), _cyc(1)],
        [_cyc(1), _cyc(1), W, W2],
        [_cyc(1), _cyc(1), W2, W],
        [_cyc(3), _cyc(-1), _cyc(0), _cyc(0)],
    ]),
}

SUPPORTED_VERTEX_TAGS = ("C1", "C2", "C3", "D2", "D3", "A4")
SUPPORTED_EDGE_TAGS = ("C1", "C2", "C3")

#: Class fusion per (source, target, embedding index): the k-th source
#: element (cyclic groups: e, g, g^2, ...) lands in the listed target
#: conjugacy class.
_FUSION: dict[tuple[str, str, int], list[int]] = {
    ("C1", "C1", 0): [0],
    ("C1", "C2", 0): [0],
    ("C1", "C3", 0): [0],
    ("C1", "D2", 0): [0],
    ("C1", "D3", 0): [0],
    ("C1", "A4", 0): [0],
    ("C2", "C2", 0): [0, 1],
    ("C3", "C3", 0): [0, 1, 2],
    ("C2", "D2", 0): [0, 1],
    ("C2", "D2", 1): [0, 2],
    ("C2", "D2", 2): [0, 3],
    ("C2", "D3", 0): [0, 2],
    ("C3", "D3", 0): [0, 1, 1],
    ("C2", "A4", 0): [0, 1],
    ("C3", "A4", 0): [0, 2, 3],
}

#: Source character values per element of the cyclic source groups.
_SOURCE_ELEMENT_CHARS: dict[str, list[list[Cyc]]] = {
    "C1": [[_cyc(1)]],
    "C2": [[_cyc(1), _cyc(1)], [_cyc(1), _cyc(-1)]],
    "C3": [[_cyc(1), _cyc(1), _cyc(1)], [_cyc(1), W, W2], [_cyc(1), W2, W]],
}


class BlockSplitError(RuntimeError):
    """A base-changed matrix failed to be block diagonal; this would
    falsify the splitting for the given data and aborts the run."""


@dataclass(frozen=True)
class RepRing:
    group: str
    rank: int
    class_sizes: tuple[int, ...]
    characters: tuple[tuple[Cyc, ...], ...]

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[0][0]) for row in self.characters)


_VERIFIED: set[str] = set()


def rep_ring(tag: str) -> RepRing:
    """Pinned complex representation ring; orthogonality-verified once."""
    if tag not in _CHARS:
        raise ValueError(f"unsupported representation ring {tag!r}")
    sizes, rows = _CHARS[tag]
    ring = RepRing(tag, len(rows), tuple(sizes), tuple(tuple(r) for r in rows))
    if tag not in _VERIFIED:
        _verify_orthogonality(ring)
        _VERIFIED.add(tag)
    return ring


def _verify_orthogonality(ring: RepRing) -> None:
    n = ring.order
    for i, chi in enumerate(ring.characters):
        for j, psi in enumerate(ring.characters):
            acc = _cyc(0)
            for k, size in enumerate(ring.class_sizes):
                acc = _cadd(acc, _cmul(_cyc(size), _cmul(chi[k], _cconj(psi[k]))))
            expect = _cyc(n if i == j else 0)
            if acc != expect:
                raise AssertionError(
                    f"character table of {ring.group} fails row orthogonality")
    for k in range(len(ring.class_sizes)):
        for l in range(len(ring.class_sizes)):
            acc = _cyc(0)
            for chi in ring.characters:
                acc = _cadd(acc, _cmul(chi[k], _cconj(chi[l])))
            expect = _cyc(n // ring.class_sizes[k] if k == l else 0)
            if acc != expect:
                raise AssertionError(
                    f"character table of {ring.group} fails column orthogonality")


@dataclass(frozen=True)
class InductionBlock:
    source: str
    target: str
    embedding: int
    matrix: np.ndarray  # rank(target) x rank(source)


def embedding_count(source: str, target: str) -> int:
    return len([k for (s, t, k) in _FUSION if s == source and t == target])


def induction_matrix(source: str, target: str, embedding: int = 0) -> InductionBlock:
    """Induced-map matrix on representation rings from the pinned fusion,
    via reciprocity: the multiplicity of a target character psi in the
    induction of a source character chi is <chi, Res psi>."""
    key = (source, target, embedding)
    if key not in _FUSION:
        raise ValueError(f"unsupported inclusion {source!r} in {target!r} "
                         f"(embedding {embedding})")
    fusion = _FUSION[key]
    src = rep_ring(source)
    tgt = rep_ring(target)
    src_elems = _SOURCE_ELEMENT_CHARS[source]
    mat = np.zeros((tgt.rank, src.rank), dtype=np.int64)
    for i, psi in enumerate(tgt.characters):
        for j in range(src.rank):
            acc = _cyc(0)
            for e, cls in enumerate(fusion):
                acc = _cadd(acc, _cmul(src_elems[j][e], _cconj(psi[cls])))
            val = (acc[0] / src.order, acc[1] / src.order)
            if val[1] != 0 or val[0].denominator != 1 or val[0] < 0:
                raise AssertionError(
                    f"induction {source}->{target} produced non-integral "
                    f"multiplicity {val}")
            mat[i, j] = int(val[0])
    block = InductionBlock(source, target, embedding, mat)
    _verify_degree_preservation(block, src, tgt)
    return block


def _verify_degree_preservation(block: InductionBlock, src: RepRing,
                                tgt: RepRing) -> None:
    index = tgt.order // src.order
    lhs = np.array(tgt.degrees, dtype=np.int64) @ block.matrix
    rhs = index * np.array(src.degrees, dtype=np.int64)
    if not np.array_equal(lhs, rhs):
        raise AssertionError(
            f"induction {src.group}->{tgt.group} does not scale degrees by "
            f"the index {index}")


# --------------------------------------------------------------------------
# Splitting base change

#: Unimodular base changes U per tag.  New coordinates are U @ old
#: coordinates; the new basis vectors are the columns of U^{-1}, whose
#: first column is always the regular representation.
_SPLITTING_BASES: dict[str, list[list[int]]] = {
    "C1": [[1]],
    "C2": [[1, 0], [-1, 1]],
    "C3": [[1, 0, 0], [-1, 1, 0], [-1, 0, 1]],
    "D2": [[1, 0, 0, 0], [-1, 1, 0, 0], [-1, 0, 1, 0], [-1, 0, 0, 1]],
    "D3": [[1, 0, 0], [-1, 1, 0], [-1, -1, 1]],
    "A4": [[1, 0, 0, 0], [-1, -1, -1, 1], [-1, 1, 0, 0], [-1, 0, 1, 0]],
}

#: Index partition of the base-changed coordinates into the rank-1 part,
#: the 2-torsion part and the 3-torsion part.
BLOCK_PARTS: dict[str, tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = {
    "C1": ((0,), (), ()),
    "C2": ((0,), (1,), ()),
    "C3": ((0,), (), (1, 2)),
    "D2": ((0,), (1, 2, 3), ()),
    "D3": ((0,), (1,), (2,)),
    "A4": ((0,), (1,), (2, 3)),
}


def splitting_basis(tag: str) -> np.ndarray:
    """The pinned unimodular base change of the representation ring."""
    if tag not in _SPLITTING_BASES:
        raise ValueError(f"no splitting basis for {tag!r}")
    return np.array(_SPLITTING_BASES[tag], dtype=np.int64)


def _int_inverse(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    aug = np.concatenate([mat.astype(object), np.eye(n, dtype=object)], axis=1)
    # exact Gauss-Jordan; valid because the bases are unimodular
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r, col] != 0)
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        if aug[col, col] < 0:
            aug[col] = -aug[col]
        assert aug[col, col] == 1, "basis is not unimodular-triangularizable"
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug[:, n:].astype(np.int64)


def transformed_induction(source: str, target: str, embedding: int = 0) -> np.ndarray:
    """U_target @ M @ U_source^{-1}: the induced map in the split bases."""
    block = induction_matrix(source, target, embedding)
    u_t = splitting_basis(target)
    u_s_inv = _int_inverse(splitting_basis(source))
    return u_t @ block.matrix @ u_s_inv


def check_block_diagonal(mat: np.ndarray, target: str, source: str) -> None:
    """Raise BlockSplitError if mat has entries outside the diagonal
    (1 | 2-part | 3-part) blocks."""
    rparts = BLOCK_PARTS[target]
    cparts = BLOCK_PARTS[source]
    for bi, rows in enumerate(rparts):
        for bj, cols in enumerate(cparts):
            if bi == bj:
                continue
            for r in rows:
                for c in cols:
                    if mat[r, c] != 0:
                        raise BlockSplitError(
                            f"off-block entry {mat[r, c]} at ({r}, {c}) in the "
                            f"base-changed {source}->{target} induction")


# --------------------------------------------------------------------------
# Abelian groups and Smith normal form


def _invariant_factors(entries) -> tuple[int, ...]:
    """Normalize torsion entries (> 1) into a divisibility chain."""
    powers: dict[int, list[int]] = {}
    for n in entries:
        n = int(n)
        if n <= 1:
            continue
        d = 2
        while d * d <= n:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e:
                powers.setdefault(d, []).append(d ** e)
            d += 1
        if n > 1:
            powers.setdefault(n, []).append(n)
    length = max((len(v) for v in powers.values()), default=0)
    chain = [1] * length
    for p, vals in powers.items():
        vals.sort(reverse=True)
        for i, pk in enumerate(vals):
            chain[length - 1 - i] *= pk
    return tuple(c for c in chain if c > 1)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", _invariant_factors(self.torsion))

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.free_rank + other.free_rank,
                            self.torsion + other.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


def smith_normal_form(mat) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(U, D, V) with U, V unimodular, D = U @ mat @ V diagonal with a
    divisibility chain.  Exact integer arithmetic throughout."""
    a = np.array(mat, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = a.shape
    u = np.eye(rows, dtype=object)
    v = np.eye(cols, dtype=object)

    def swap_rows(i, j):
        a[[i, j]] = a[[j, i]]
        u[[i, j]] = u[[j, i]]

    def swap_cols(i, j):
        a[:, [i, j]] = a[:, [j, i]]
        v[:, [i, j]] = v[:, [j, i]]

    k = 0
    while k < min(rows, cols):
        # locate a pivot of least magnitude
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                if a[i, j] != 0 and (best is None or abs(a[i, j]) < abs(a[best[0], best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        dirty = False
        for i in range(k + 1, rows):
            q = a[i, k] // a[k, k]
            if q:
                a[i] -= q * a[k]
                u[i] -= q * u[k]
            if a[i, k]:
                dirty = True
        for j in range(k + 1, cols):
            q = a[k, j] // a[k, k]
            if q:
                a[:, j] -= q * a[:, k]
                v[:, j] -= q * v[:, k]
            if a[k, j]:
                dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block
        offender = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if a[i, j] % a[k, k]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[k] += a[offender]
            u[k] += u[offender]
            continue
        if a[k, k] < 0:
            a[k] = -a[k]
            u[k] = -u[k]
        k += 1
    return u, a, v


def elementary_divisors(mat) -> list[int]:
    _, d, _ = smith_normal_form(mat)
    return [int(d[i, i]) for i in range(min(d.shape)) if d[i, i] != 0]


@dataclass(frozen=True)
class IntegerChainComplex:
    """0 -> Z^{n2} --psi2--> Z^{n1} --psi1--> Z^{n0} -> 0."""

    psi1: np.ndarray
    psi2: np.ndarray

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.psi1.shape[0], self.psi1.shape[1], self.psi2.shape[1])


def homology(chain: IntegerChainComplex) -> list[AbelianGroup]:
    """[H0, H1, H2] of the two-step integer chain complex, by SNF."""
    psi1 = np.array(chain.psi1, dtype=object)
    psi2 = np.array(chain.psi2, dtype=object)
    n0, n1 = psi1.shape
    n2 = psi2.shape[1]
    if psi2.shape[0] != n1:
        raise ValueError("psi1 and psi2 are not composable")
    if n1 and n2 and (psi1 @ psi2 != 0).any():
        raise ValueError("not a chain complex: psi1 @ psi2 != 0")
    div1 = elementary_divisors(psi1) if psi1.size else []
    div2 = elementary_divisors(psi2) if psi2.size else []
    rank1, rank2 = len(div1), len(div2)
    h0 = AbelianGroup(n0 - rank1, tuple(d for d in div1 if d > 1))
    h1 = AbelianGroup((n1 - rank1) - rank2, tuple(d for d in div2 if d > 1))
    h2 = AbelianGroup(n2 - rank2)
    return [h0, h1, h2]


# --------------------------------------------------------------------------
# The Bredon complex of a reduced orbit complex


@dataclass(frozen=True)
class BredonComplex:
    vertices: tuple
    edges: tuple
    faces: tuple
    psi1: np.ndarray
    psi2: np.ndarray

    def chain(self) -> IntegerChainComplex:
        return IntegerChainComplex(self.psi1, self.psi2)


def _oriented_boundary_walk(cx: OrbitComplex, face_id: str,
                            ends: dict) -> list[tuple[str, int]]:
    """Decompose a 2-cell boundary into a closed edge walk; returns
    (edge id, sign) pairs where the sign compares the traversal with the
    edge's intrinsic direction (second end slot -> first end slot)."""
    uses: list[str] = []
    for inc in cx.faces(face_id):
        uses.extend([inc.face] * inc.multiplicity)
    if not uses:
        return []
    # adjacency: each use is an undirected connection between end vertices
    remaining: dict[int, tuple[str, str, str]] = {}
    adj: dict[str, list[int]] = {}
    for k, eid in enumerate(uses):
        (v_head, _, _), (v_tail, _, _) = ends[eid][0], ends[eid][1]
        remaining[k] = (eid, v_tail, v_head)
        adj.setdefault(v_tail, []).append(k)
        adj.setdefault(v_head, []).append(k)
    if any(len(v) % 2 for v in adj.values()):
        raise ValueError(f"boundary of {face_id!r} is not a closed walk")
    # iterative Hierholzer circuit; records (use, from, to)
    start = min(adj)
    used: set[int] = set()
    st: list[str] = [start]
    edge_stack: list[tuple[int, str, str]] = []
    out: list[tuple[int, str, str]] = []
    while st:
        v = st[-1]
        found = None
        for k in adj.get(v, []):
            if k in used:
                continue
            found = k
            break
        if found is None:
            st.pop()
            if edge_stack:
                out.append(edge_stack.pop())
        else:
            used.add(found)
            eid, a, b = remaining[found]
            w = b if v == a else a
            edge_stack.append((found, v, w))
            st.append(w)
    if len(out) != len(uses):
        raise ValueError(f"boundary of {face_id!r} is not connected")
    signs = []
    for k, frm, to in reversed(out):
        eid, v_tail, v_head = remaining[k]
        sign = 1 if (frm, to) == (v_tail, v_head) else -1
        signs.append((eid, sign))
    return signs


def bredon_complex(cx: OrbitComplex) -> BredonComplex:
    """Block differential matrices of the chain complex of representation
    rings: psi1 from the edge-to-vertex inductions with end signs, psi2
    from oriented 2-cell boundaries through the regular representation."""
    if not cx.rigid:
        raise ValueError("Bredon complex requires a rigid complex")
    if cx.dimension > 2:
        raise ValueError("complex dimension must be <= 2")
    vertices = tuple(sorted(cx.cells_of_dim(0), key=lambda c: c.id))
    edges = tuple(sorted(cx.cells_of_dim(1), key=lambda c: c.id))
    faces = tuple(sorted(cx.cells_of_dim(2), key=lambda c: c.id))
    for v in vertices:
        if v.stabilizer not in SUPPORTED_VERTEX_TAGS:
            raise ValueError(f"unsupported vertex stabilizer {v.stabilizer!r}")
    for e in edges:
        if e.stabilizer not in SUPPORTED_EDGE_TAGS:
            raise ValueError(f"edge stabilizer {e.stabilizer!r} is not cyclic of "
                             "order <= 3")
    for f in faces:
        if f.stabilizer != "C1":
            raise ValueError("cells of dimension 2 must be trivially stabilized")
    vranks = [rep_ring(v.stabilizer).rank for v in vertices]
    eranks = [rep_ring(e.stabilizer).rank for e in edges]
    voff = np.concatenate([[0], np.cumsum(vranks)]).astype(int)
    eoff = np.concatenate([[0], np.cumsum(eranks)]).astype(int)
    vindex = {v.id: k for k, v in enumerate(vertices)}
    eindex = {e.id: k for k, e in enumerate(edges)}
    ends = edge_end_assignments(cx) if edges else {}
    psi1 = np.zeros((int(voff[-1]), int(eoff[-1])), dtype=np.int64)
    for j, e in enumerate(edges):
        for vid, sign, emb in ends[e.id]:
            k = vindex[vid]
            block = induction_matrix(e.stabilizer, vertices[k].stabilizer, emb)
            psi1[voff[k]:voff[k + 1], eoff[j]:eoff[j + 1]] += sign * block.matrix
    psi2 = np.zeros((int(eoff[-1]), len(faces)), dtype=np.int64)
    for j, f in enumerate(faces):
        for eid, sign in _oriented_boundary_walk(cx, f.id, ends):
            k = eindex[eid]
            reg = np.array(rep_ring(edges[k].stabilizer).degrees, dtype=np.int64)
            psi2[eoff[k]:eoff[k + 1], j] += sign * reg
    if psi1.size and psi2.size and (psi1 @ psi2 != 0).any():
        raise AssertionError("orientation bookkeeping broke psi1 @ psi2 = 0")
    return BredonComplex(vertices, edges, faces, psi1, psi2)


@dataclass(frozen=True)
class SplitBlocks:
    trivial: IntegerChainComplex
    two: IntegerChainComplex
    three: IntegerChainComplex


def split_blocks(bc: BredonComplex, bases=None) -> SplitBlocks:
    """Base-change the Bredon differentials and split them into the
    orbit-space block and the 2- and 3-torsion blocks.  Block diagonality
    is checked entry by entry, not assumed."""
    if bases is None:
        bases = {tag: splitting_basis(tag) for tag in SUPPORTED_VERTEX_TAGS}

    def blockdiag(cells, invert=False):
        mats = []
        for c in cells:
            u = bases[c.stabilizer]
            mats.append(_int_inverse(u) if invert else u)
        total = sum(m.shape[0] for m in mats)
        out = np.zeros((total, total), dtype=np.int64)
        pos = 0
        for m in mats:
            out[pos:pos + m.shape[0], pos:pos + m.shape[0]] = m
            pos += m.shape[0]
        return out

    u_v = blockdiag(bc.vertices)
    u_e = blockdiag(bc.edges)
    p_e = blockdiag(bc.edges, invert=True)
    psi1 = u_v @ bc.psi1 @ p_e
    psi2 = u_e @ bc.psi2

    def part_indices(cells, which):
        idx = []
        pos = 0
        for c in cells:
            parts = BLOCK_PARTS[c.stabilizer]
            idx.extend(pos + i for i in parts[which])
            pos += rep_ring(c.stabilizer).rank
        return np.array(idx, dtype=int)

    vparts = [part_indices(bc.vertices, w) for w in range(3)]
    eparts = [part_indices(bc.edges, w) for w in range(3)]
    fparts = [np.arange(len(bc.faces)), np.array([], dtype=int), np.array([], dtype=int)]
    # verify block structure of psi1 and psi2
    for bi in range(3):
        for bj in range(3):
            if bi == bj:
                continue
            sub = psi1[np.ix_(vparts[bi], eparts[bj])]
            if sub.size and (sub != 0).any():
                raise BlockSplitError(
                    f"psi1 mixes block {bi} with block {bj}")
            sub2 = psi2[np.ix_(eparts[bi], fparts[bj])]
            if sub2.size and (sub2 != 0).any():
                raise BlockSplitError(
                    f"psi2 mixes block {bi} with block {bj}")

    def project(which):
        return IntegerChainComplex(
            psi1[np.ix_(vparts[which], eparts[which])],
            psi2[np.ix_(eparts[which], fparts[which])])

    return SplitBlocks(project(0), project(1), project(2))


# --------------------------------------------------------------------------
# Closed-form homology, K-homology, orbifold dimensions


def bredon_homology_formula(census: SubgroupCensus) -> dict[str, AbelianGroup]:
    """The displayed closed forms for the torsion blocks: the 2-block has
    H0 = Z^z2 + (Z/2)^(d2/2), H1 = Z^o2; the 3-block has H0 = H1 =
    Z^(2 o3 + iota3)."""
    census.validate()
    three = AbelianGroup(2 * census.o3 + census.iota3)
    return {
        "H0_2block": AbelianGroup(census.z2, (2,) * (census.d2 // 2)),
        "H1_2block": AbelianGroup(census.o2),
        "H0_3block": three,
        "H1_3block": three,
    }


def k_homology(census: SubgroupCensus, h1_orbit: AbelianGroup,
               beta2: int) -> dict[str, AbelianGroup]:
    """Equivariant K-homology in degrees 0 and 1 from the census, the
    orbit-space H1 and its second Betti number (the classifying space is
    assumed at most 2-dimensional, where the spectral sequence collapses)."""
    census.validate()
    if beta2 < 0:
        raise ValueError("beta2 must be non-negative")
    k0 = AbelianGroup(1 + beta2 + census.z2 + 2 * census.o3 + census.iota3,
                      (2,) * (census.d2 // 2))
    k1 = h1_orbit + AbelianGroup(census.o2 + 2 * census.o3 + census.iota3)
    return {"K0": k0, "K1": k1}


def chen_ruan_dims(census: SubgroupCensus, quotient_dims: dict[int, int],
                   complexified: bool) -> dict[int, int]:
    """Orbifold cohomology dimensions: the quotient-space contribution
    plus the twisted-sector counts.

    Complexified: sectors add in degrees 2 and 3.  Real: each edge-type
    sector adds a point contribution (degree 0) and each circle-type
    sector a circle contribution (degrees 0 and 1)."""
    census.validate()
    dims = {int(k): int(v) for k, v in quotient_dims.items()}
    circle3 = 2 * census.lambda6 - census.lambda6star
    if complexified:
        add = {2: census.lambda4 + circle3,
               3: census.o2 + circle3}
    else:
        add = {0: census.lambda4star + census.o2 + circle3,
               1: census.o2 + circle3}
    for d, extra in add.items():
        if extra:
            dims[d] = dims.get(d, 0) + extra
    return dims
