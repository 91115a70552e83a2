"""Exhaustive reference checks for small digraphs.

Every oracle enumerates rather than constructs, reports what it searched,
and refuses inputs past its size cap so a silently-slow call cannot pass
for a verified answer.  Witnesses are deterministic: the lexicographically
smallest certificate under sorted-tuple order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import Digraph, is_asymmetrical
from .errors import CapExceededError, InvalidInputError
from .tournaments import Tournament, find_homomorphism, tournament_reps

KERNEL_CAP = 20
QUASI_KERNEL_CAP = 16
CHROMATIC_CAP = 12
ORIENTED_CAP = 14
ORIENTED_KMAX_CAP = 7
LONGEST_PATH_CAP = 15


@dataclass
class OracleReport:
    quantity: str
    value: object
    witness: object = None
    search_space_size: int = 0
    details: dict = field(default_factory=dict)


def _check_cap(d: Digraph, cap: int, what: str) -> None:
    if d.n > cap:
        raise CapExceededError(f"{what} oracle capped at {cap} vertices, got {d.n}")


def _index_maps(d: Digraph):
    verts = sorted(d.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    out = [0] * len(verts)
    sym = [0] * len(verts)
    for u, v in d.arcs:
        out[pos[u]] |= 1 << pos[v]
        sym[pos[u]] |= 1 << pos[v]
        sym[pos[v]] |= 1 << pos[u]
    return verts, pos, out, sym


def _independent_sets(n: int, sym: list[int]):
    """Yield every independent set as a bitmask, include-first order."""
    stack = [(0, 0, 0)]
    while stack:
        idx, mask, blocked = stack.pop()
        if idx == n:
            yield mask
            continue
        stack.append((idx + 1, mask, blocked))
        if not blocked >> idx & 1:
            stack.append((idx + 1, mask | 1 << idx, blocked | sym[idx]))


def _members(mask: int, verts: list[int]) -> tuple[int, ...]:
    return tuple(v for i, v in enumerate(verts) if mask >> i & 1)


def kernel_oracle(d: Digraph, enumerate_all: bool = False) -> OracleReport:
    """Exhaustive kernel search: independent sets filtered by absorbency."""
    _check_cap(d, KERNEL_CAP, "kernel")
    verts, _, out, sym = _index_maps(d)
    n = len(verts)
    full = (1 << n) - 1
    kernels: list[tuple[int, ...]] = []
    examined = 0
    for mask in _independent_sets(n, sym):
        examined += 1
        outside = full & ~mask
        if all(out[i] & mask for i in range(n) if outside >> i & 1):
            kernels.append(_members(mask, verts))
    kernels.sort()
    details = {"kernel_count": len(kernels)}
    if enumerate_all:
        details["all_kernels"] = kernels
    return OracleReport(
        quantity="has_kernel",
        value=bool(kernels),
        witness=kernels[0] if kernels else None,
        search_space_size=examined,
        details=details,
    )


def quasi_kernel_oracle(d: Digraph, enumerate_all: bool = False) -> OracleReport:
    """Exhaustive quasi-kernel search; value is the minimum size."""
    _check_cap(d, QUASI_KERNEL_CAP, "quasi-kernel")
    verts, _, out, sym = _index_maps(d)
    n = len(verts)
    full = (1 << n) - 1
    reach2 = [out[i] for i in range(n)]
    for i in range(n):
        acc = out[i]
        row = out[i]
        j = row
        while j:
            low = j & -j
            acc |= out[low.bit_length() - 1]
            j ^= low
        reach2[i] = acc
    found: list[tuple[int, ...]] = []
    examined = 0
    for mask in _independent_sets(n, sym):
        examined += 1
        outside = full & ~mask
        if all(reach2[i] & mask for i in range(n) if outside >> i & 1):
            found.append(_members(mask, verts))
    found.sort(key=lambda s: (len(s), s))
    details = {"quasi_kernel_count": len(found)}
    if enumerate_all:
        details["all_quasi_kernels"] = sorted(found)
    if not found:
        return OracleReport("quasi_kernel_min_size", None, None, examined, details)
    best = found[0]
    return OracleReport(
        quantity="quasi_kernel_min_size",
        value=len(best),
        witness=best,
        search_space_size=examined,
        details=details,
    )


def _chromatic_number(n: int, sym: list[int]) -> tuple[int, list[int]]:
    for k in range(1, n + 1):
        colors = [-1] * n

        def assign(v: int, used: int) -> bool:
            if v == n:
                return True
            limit = min(used + 1, k)
            for c in range(limit):
                if all(colors[w] != c for w in range(v) if sym[v] >> w & 1):
                    colors[v] = c
                    if assign(v + 1, max(used, c + 1)):
                        return True
                    colors[v] = -1
            return False

        if assign(0, 0):
            return k, colors
    return n, list(range(n))


def _class_acyclic(members: list[int], out: list[int]) -> bool:
    mask = 0
    for v in members:
        mask |= 1 << v
    indeg = {v: 0 for v in members}
    for v in members:
        row = out[v] & mask
        j = row
        while j:
            low = j & -j
            indeg[low.bit_length() - 1] += 1
            j ^= low
    queue = [v for v in members if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        row = out[v] & mask
        j = row
        while j:
            low = j & -j
            w = low.bit_length() - 1
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
            j ^= low
    return seen == len(members)


def _dichromatic_number(n: int, out: list[int]) -> tuple[int, list[int]]:
    if n == 0:
        return 0, []
    for k in range(1, n + 1):
        colors = [-1] * n

        def assign(v: int, used: int) -> bool:
            if v == n:
                return True
            limit = min(used + 1, k)
            for c in range(limit):
                colors[v] = c
                members = [w for w in range(v + 1) if colors[w] == c]
                if _class_acyclic(members, out) and assign(v + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
            return False

        if assign(0, 0):
            return k, colors
    return n, list(range(n))


def chromatic_oracles(d: Digraph) -> OracleReport:
    """Exact chromatic number of the underlying graph plus exact dichromatic
    number, both by ascending-k backtracking."""
    _check_cap(d, CHROMATIC_CAP, "chromatic")
    verts, _, out, sym = _index_maps(d)
    n = len(verts)
    if n == 0:
        return OracleReport("chromatic_numbers", 0, details={"chromatic": 0, "dichromatic": 0})
    chi, ccol = _chromatic_number(n, sym)
    dichi, dcol = _dichromatic_number(n, out)
    return OracleReport(
        quantity="chromatic_numbers",
        value=chi,
        witness={verts[i]: ccol[i] + 1 for i in range(n)},
        search_space_size=0,
        details={
            "chromatic": chi,
            "dichromatic": dichi,
            "dichromatic_witness": {verts[i]: dcol[i] + 1 for i in range(n)},
        },
    )


def oriented_chromatic_oracle(d: Digraph, k_max: int = ORIENTED_KMAX_CAP) -> OracleReport:
    """Smallest tournament order admitting a homomorphism from d.

    Tries every isomorphism class representative in ascending order, so the
    value is exact whenever one is found within k_max.
    """
    _check_cap(d, ORIENTED_CAP, "oriented chromatic")
    if k_max > ORIENTED_KMAX_CAP:
        raise CapExceededError(
            f"oriented chromatic oracle capped at target order {ORIENTED_KMAX_CAP}")
    if not is_asymmetrical(d):
        raise InvalidInputError("oriented coloring needs an asymmetrical digraph")
    tried = 0
    for k in range(1, k_max + 1):
        for t in tournament_reps(k):
            tried += 1
            phi = find_homomorphism(d, t)
            if phi is not None:
                return OracleReport(
                    quantity="oriented_chromatic_number",
                    value=k,
                    witness={"assignment": phi, "tournament": t.code_string()},
                    search_space_size=tried,
                    details={"target_order": k},
                )
    return OracleReport(
        quantity="oriented_chromatic_number",
        value=None,
        witness=None,
        search_space_size=tried,
        details={"exceeds": k_max},
    )


def longest_path_oracle(d: Digraph, enumerate_all: bool = True) -> OracleReport:
    """All maximum-length directed paths by exhaustive DFS.

    Length counts arcs; an isolated vertex is a path of length 0.
    """
    _check_cap(d, LONGEST_PATH_CAP, "longest path")
    verts = sorted(d.vertices)
    best_len = 0
    best: list[tuple[int, ...]] = []
    examined = 0
    for start in verts:
        stack = [(start,)]
        while stack:
            path = stack.pop()
            examined += 1
            length = len(path) - 1
            if length > best_len:
                best_len, best = length, [path]
            elif length == best_len:
                best.append(path)
            tail = path[-1]
            for w in sorted(d.out_neighbors(tail), reverse=True):
                if w not in path:
                    stack.append(path + (w,))
    best.sort()
    details = {"maximum_count": len(best)}
    if enumerate_all:
        details["all_longest"] = best
    return OracleReport(
        quantity="longest_path_length",
        value=best_len,
        witness=best[0] if best else None,
        search_space_size=examined,
        details=details,
    )
