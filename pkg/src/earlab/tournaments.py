"""Bit-packed tournaments: encoding, enumeration, isomorphism, homomorphism.

A tournament of order k is encoded by the upper triangle of its adjacency
matrix in row order: pair p = (i, j) with i < j contributes bit p, set iff
the arc runs (i, j), clear iff it runs (j, i).  The string form writes the
bits as '1'/'0' in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .digraph import Digraph
from .errors import InvalidInputError


@lru_cache(maxsize=None)
def _pairs(k: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(k) for j in range(i + 1, k))


@lru_cache(maxsize=None)
def _pair_index(k: int) -> dict[tuple[int, int], int]:
    return {p: idx for idx, p in enumerate(_pairs(k))}


@dataclass(frozen=True)
class Tournament:
    k: int
    code: int

    def __post_init__(self):
        if self.code < 0 or self.code >= 1 << len(_pairs(self.k)):
            raise InvalidInputError("tournament code out of range")

    @classmethod
    def from_arcs(cls, k: int, arcs) -> "Tournament":
        arcset = {(int(u), int(v)) for u, v in arcs}
        code = 0
        for idx, (i, j) in enumerate(_pairs(k)):
            fwd, back = (i, j) in arcset, (j, i) in arcset
            if fwd == back:
                raise InvalidInputError(f"pair {{{i},{j}}} needs exactly one arc")
            if fwd:
                code |= 1 << idx
        return cls(k, code)

    @classmethod
    def from_code_string(cls, s: str) -> "Tournament":
        m = len(s)
        k = next((kk for kk in range(1, 16) if kk * (kk - 1) // 2 == m), None)
        if k is None or any(c not in "01" for c in s):
            raise InvalidInputError(f"bad tournament code string {s!r}")
        code = 0
        for idx, c in enumerate(s):
            if c == "1":
                code |= 1 << idx
        return cls(k, code)

    def code_string(self) -> str:
        return "".join("1" if self.code >> i & 1 else "0"
                       for i in range(len(_pairs(self.k))))

    @property
    def arcs(self) -> frozenset[tuple[int, int]]:
        out = []
        for idx, (i, j) in enumerate(_pairs(self.k)):
            out.append((i, j) if self.code >> idx & 1 else (j, i))
        return frozenset(out)

    def has_arc(self, u: int, v: int) -> bool:
        if u == v:
            return False
        idx = _pair_index(self.k)[(u, v) if u < v else (v, u)]
        bit = bool(self.code >> idx & 1)
        return bit if u < v else not bit

    def out_masks(self) -> tuple[int, ...]:
        return _out_masks(self.k, self.code)

    def out_degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.out_masks())

    def relabel(self, perm) -> "Tournament":
        """Image under new-label -> old-label map perm."""
        code = 0
        for idx, (i, j) in enumerate(_pairs(self.k)):
            if self.has_arc(perm[i], perm[j]):
                code |= 1 << idx
        return Tournament(self.k, code)

    def to_digraph(self) -> Digraph:
        return Digraph(range(self.k), self.arcs)

    def __repr__(self) -> str:
        return f"Tournament(k={self.k}, code={self.code_string()!r})"


@lru_cache(maxsize=200_000)
def _out_masks(k: int, code: int) -> tuple[int, ...]:
    masks = [0] * k
    for idx, (i, j) in enumerate(_pairs(k)):
        if code >> idx & 1:
            masks[i] |= 1 << j
        else:
            masks[j] |= 1 << i
    return tuple(masks)


def canonical_code(k: int, code: int) -> int:
    """Canonical form: minimum code over score-sorted relabelings.

    Restricting to orderings with nondecreasing score is isomorphism-safe
    (scores are invariant) and prunes the k! search hard in practice.
    """
    t = Tournament(k, code)
    degs = t.out_degrees()
    order = sorted(range(k), key=lambda v: (degs[v], v))
    blocks: list[list[int]] = []
    for v in order:
        if blocks and degs[blocks[-1][0]] == degs[v]:
            blocks[-1].append(v)
        else:
            blocks.append([v])
    best = None
    for perm in _block_perms(blocks):
        c = t.relabel(perm).code
        if best is None or c < best:
            best = c
    return best


def _block_perms(blocks: list[list[int]]):
    if len(blocks) == 1:
        yield from (list(p) for p in permutations(blocks[0]))
        return
    for head in permutations(blocks[0]):
        for tail in _block_perms(blocks[1:]):
            yield list(head) + tail


@lru_cache(maxsize=None)
def tournament_reps(k: int) -> tuple[Tournament, ...]:
    """One representative per isomorphism class, by vertex augmentation.

    Class counts 1, 1, 2, 4, 12, 56, 456 for k = 1..7.
    """
    if k < 1:
        raise InvalidInputError("order must be >= 1")
    if k == 1:
        return (Tournament(1, 0),)
    seen: set[int] = set()
    idx_prev = _pair_index(k - 1)
    idx_new = _pair_index(k)
    for small in tournament_reps(k - 1):
        base = 0
        for p, b in idx_prev.items():
            if small.code >> b & 1:
                base |= 1 << idx_new[p]
        new_bits = [idx_new[(i, k - 1)] for i in range(k - 1)]
        for mask in range(1 << (k - 1)):
            code = base
            for i in range(k - 1):
                if mask >> i & 1:
                    code |= 1 << new_bits[i]
            seen.add(canonical_code(k, code))
    return tuple(Tournament(k, c) for c in sorted(seen))


def find_homomorphism(d: Digraph, t: Tournament) -> dict[int, int] | None:
    """Backtracking search for an arc-preserving map V(d) -> V(t).

    Forward checking on bitmask candidate sets: assigning a vertex narrows
    every unassigned neighbor to the image's out- or in-neighborhood, and an
    emptied candidate set prunes the branch immediately.
    """
    verts = sorted(d.vertices)
    n = len(verts)
    if n == 0:
        return {}
    pos = {v: idx for idx, v in enumerate(verts)}
    k = t.k
    full = (1 << k) - 1
    out_m = t.out_masks()
    in_m = [0] * k
    for a in range(k):
        row = out_m[a]
        while row:
            low = row & -row
            in_m[low.bit_length() - 1] |= 1 << a
            row ^= low
    succ = [[pos[w] for w in sorted(d.out_neighbors(v))] for v in verts]
    pred = [[pos[w] for w in sorted(d.in_neighbors(v))] for v in verts]
    # visit order: BFS over the underlying graph so that every vertex after
    # its component root sees at least one already-assigned neighbor
    order: list[int] = []
    placed = [False] * n
    for root in range(n):
        if placed[root]:
            continue
        placed[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(set(succ[v]) | set(pred[v])):
                if not placed[w]:
                    placed[w] = True
                    queue.append(w)
    assignment = [-1] * n

    def place(idx: int, cand: list[int]) -> bool:
        if idx == n:
            return True
        v = order[idx]
        options = cand[v]
        while options:
            low = options & -options
            options ^= low
            img = low.bit_length() - 1
            narrowed = list(cand)
            narrowed[v] = low
            feasible = True
            for w in succ[v]:
                if assignment[w] == -1:
                    narrowed[w] &= out_m[img]
                    if not narrowed[w]:
                        feasible = False
                        break
                elif not out_m[img] >> assignment[w] & 1:
                    feasible = False
                    break
            if feasible:
                for w in pred[v]:
                    if assignment[w] == -1:
                        narrowed[w] &= in_m[img]
                        if not narrowed[w]:
                            feasible = False
                            break
                    elif not in_m[img] >> assignment[w] & 1:
                        feasible = False
                        break
            if feasible:
                assignment[v] = img
                if place(idx + 1, narrowed):
                    return True
                assignment[v] = -1
        return False

    if not place(0, [full] * n):
        return None
    return {verts[i]: assignment[i] for i in range(n)}


def is_homomorphism(d: Digraph, assignment: dict[int, int], t: Tournament) -> bool:
    if set(assignment) != set(d.vertices):
        return False
    return all(t.has_arc(assignment[u], assignment[v]) for u, v in d.arcs)


def automorphism_count(t: Tournament) -> int:
    return sum(1 for p in permutations(range(t.k)) if t.relabel(p).code == t.code)
