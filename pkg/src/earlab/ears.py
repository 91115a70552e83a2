"""Ear decompositions: validation, search, classification, generation.

A decomposition is a nested sequence of strong subdigraphs D_0 .. D_k of a
host D: D_0 a directed cycle, each D_{j+1} = D_j plus one ear, D_k = D.
An ear's endpoints lie in the current stage, its internal vertices and all
its arcs are new.  Ears may themselves be cycles (both endpoints equal);
the search ops expose a strict path-ears mode for the kernel machinery,
which needs endpoints distinct.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .digraph import Arc, Digraph, is_strong
from .errors import (BudgetExceededError, InvalidInputError,
                     PropertyFailedError, VerificationError)


@dataclass(frozen=True)
class Ear:
    """Path or cycle (x_0, ..., x_r) glued onto a stage; length = r arcs."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 2:
            raise InvalidInputError("an ear needs at least one arc")
        if len(vs) == 2 and vs[0] == vs[1]:
            raise InvalidInputError("length-1 cycle ear would be a loop")
        interior = vs[1:-1]
        if len(set(interior)) != len(interior):
            raise InvalidInputError(f"repeated internal vertex in ear {vs}")
        if vs[0] in interior or vs[-1] in interior:
            raise InvalidInputError(f"endpoint reused internally in ear {vs}")

    @property
    def x0(self) -> int:
        return self.vertices[0]

    @property
    def xr(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_cycle(self) -> bool:
        return self.x0 == self.xr

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(zip(self.vertices, self.vertices[1:]))


class EarDecomposition:
    """Base cycle plus ordered ears over a host digraph."""

    def __init__(self, host: Digraph, base: Ear, ears: Iterable[Ear] = ()):
        if not base.is_cycle:
            raise InvalidInputError("base must be a cycle ear (x_0 = x_r)")
        self.host = host
        self.base = base
        self.ears = tuple(ears)
        self._stages: list[Digraph] | None = None

    @property
    def stage_count(self) -> int:
        return len(self.ears) + 1

    @property
    def min_ear_length(self) -> int | None:
        return min((e.length for e in self.ears), default=None)

    def certifies(self, i: int) -> bool:
        """Every ear has length >= i (vacuously true for a bare cycle)."""
        return all(e.length >= i for e in self.ears)

    def stage(self, j: int) -> Digraph:
        if self._stages is None:
            stages = []
            verts = set(self.base.vertices)
            arcs = set(self.base.arcs)
            stages.append(Digraph(verts, arcs))
            for ear in self.ears:
                verts |= set(ear.vertices)
                arcs |= set(ear.arcs)
                stages.append(Digraph(verts, arcs))
            self._stages = stages
        return self._stages[j]

    def stages(self) -> Iterator[Digraph]:
        for j in range(self.stage_count):
            yield self.stage(j)

    def to_json(self) -> dict:
        return {"base": list(self.base.vertices[:-1]),
                "ears": [list(e.vertices) for e in self.ears]}

    @classmethod
    def from_json(cls, doc: dict, host: Digraph) -> "EarDecomposition":
        if not isinstance(doc, dict) or "base" not in doc:
            raise InvalidInputError("decomposition JSON needs a 'base' field")
        base_list = [int(v) for v in doc["base"]]
        if len(base_list) >= 2 and base_list[0] == base_list[-1]:
            base_list = base_list[:-1]  # accept the closed form too
        if len(base_list) < 2:
            raise InvalidInputError("base cycle needs at least 2 vertices")
        base = Ear(tuple(base_list) + (base_list[0],))
        ears = [Ear(tuple(int(v) for v in e)) for e in doc.get("ears", [])]
        return cls(host, base, ears)

    def __repr__(self) -> str:
        return (f"EarDecomposition(base={list(self.base.vertices)}, "
                f"ears={len(self.ears)})")


@dataclass
class DecompositionReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    min_ear_length: int | None = None


def validate_decomposition(d: Digraph, e: EarDecomposition,
                           path_ears_only: bool = False) -> DecompositionReport:
    """Check every decomposition invariant; violations name their stage."""
    bad: list[str] = []
    if e.host != d:
        bad.append("stage -: decomposition host differs from d")
    base = e.base
    if len(set(base.vertices[:-1])) != len(base.vertices) - 1:
        bad.append("stage 0: base cycle repeats a vertex")
    for a in base.arcs:
        if a not in d.arcs:
            bad.append(f"stage 0: base arc {a} not in host")
    verts = set(base.vertices)
    arcs = set(base.arcs)
    if not is_strong(Digraph(verts, arcs & d.arcs)):
        bad.append("stage 0: base is not a strong cycle")
    for idx, ear in enumerate(e.ears):
        stage_name = f"stage {idx}"
        if ear.x0 not in verts or ear.xr not in verts:
            bad.append(f"{stage_name}: ear endpoint outside the stage")
        fresh = set(ear.internal)
        if fresh & verts:
            bad.append(f"{stage_name}: internal vertex {sorted(fresh & verts)} "
                       "already in the stage")
        for a in ear.arcs:
            if a not in d.arcs:
                bad.append(f"{stage_name}: ear arc {a} not in host")
            if a in arcs:
                bad.append(f"{stage_name}: ear arc {a} already covered")
        if path_ears_only and ear.is_cycle:
            bad.append(f"{stage_name}: cycle ear not allowed in path-ears mode")
        verts |= set(ear.vertices)
        arcs |= set(ear.arcs)
        if not bad and not is_strong(Digraph(verts, arcs)):
            bad.append(f"{stage_name}: stage digraph not strong")
    if verts != d.vertices:
        bad.append(f"final: vertices uncovered: {sorted(d.vertices - verts)}")
    if arcs != d.arcs:
        bad.append(f"final: arcs uncovered: {sorted(d.arcs - arcs)}")
    return DecompositionReport(ok=not bad, violations=bad,
                               min_ear_length=e.min_ear_length)


def _shortest_cycle_through(d: Digraph, v0: int) -> tuple[int, ...] | None:
    """Deterministic shortest directed cycle through v0, as (v0,...,v0)."""
    parent: dict[int, int] = {}
    dist = {v0: 0}
    frontier = [v0]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(d.out_neighbors(u)):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    best: tuple[int, tuple[int, ...]] | None = None
    for u in sorted(d.in_neighbors(v0)):
        if u == v0 or u not in dist:
            continue
        path = [u]
        while path[-1] != v0:
            path.append(parent[path[-1]])
        cycle = tuple(reversed(path)) + (v0,)
        key = (len(cycle), cycle)
        if best is None or key < best:
            best = key
    return best[1] if best else None


def find_ear_decomposition(d: Digraph) -> EarDecomposition:
    """Constructive decomposition of a strong digraph (ears of any length).

    Deterministic: base is the shortest cycle through the smallest vertex,
    ears are extracted smallest-start-arc first, walking back to the covered
    part along a shortest route with smallest-id tie-breaks.
    """
    if not is_strong(d):
        raise PropertyFailedError("digraph is not strong")
    if d.n < 2:
        raise PropertyFailedError("no cycle exists: single vertex")
    base_cycle = _shortest_cycle_through(d, min(d.vertices))
    if base_cycle is None:
        raise PropertyFailedError("no cycle through the smallest vertex")
    base = Ear(base_cycle)
    covered_v = set(base.vertices)
    covered_a = set(base.arcs)
    ears: list[Ear] = []
    while covered_v != d.vertices or covered_a != d.arcs:
        start = None
        for u in sorted(covered_v):
            for x in sorted(d.out_neighbors(u)):
                if (u, x) not in covered_a:
                    start = (u, x)
                    break
            if start:
                break
        if start is None:
            raise VerificationError("stuck with uncovered arcs unreachable "
                                    "from the covered part")
        u, x = start
        if x in covered_v:
            ears.append(Ear((u, x)))
            covered_a.add((u, x))
            continue
        # distance from each uncovered vertex to the covered set
        dist: dict[int, int] = {}
        frontier = [v for v in sorted(covered_v)]
        level = 0
        seen = set(covered_v)
        while frontier:
            nxt = []
            for w in frontier:
                for y in sorted(d.in_neighbors(w)):
                    if y not in seen and y not in covered_v:
                        dist[y] = level + 1
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
            level += 1
        path = [u, x]
        cur = x
        while cur not in covered_v:
            step = None
            for w in sorted(d.out_neighbors(cur)):
                if w in covered_v:
                    step = w
                    break
                if dist.get(w, -1) == dist[cur] - 1:
                    step = w
                    break
            if step is None:
                raise VerificationError(f"no route back to covered part from {cur}")
            path.append(step)
            cur = step
        ear = Ear(tuple(path))
        ears.append(ear)
        covered_v |= set(ear.vertices)
        covered_a |= set(ear.arcs)
    deco = EarDecomposition(d, base, ears)
    report = validate_decomposition(d, deco)
    if not report.ok:
        raise VerificationError("; ".join(report.violations))
    return deco


def _all_cycles(d: Digraph, budget_box: list[int]) -> list[tuple[int, ...]]:
    """All directed simple cycles, anchored at their smallest vertex."""
    cycles: list[tuple[int, ...]] = []
    for v0 in sorted(d.vertices):
        stack: list[tuple[tuple[int, ...], set[int]]] = [((v0,), {v0})]
        while stack:
            path, used = stack.pop()
            _spend(budget_box)
            last = path[-1]
            for w in sorted(d.out_neighbors(last), reverse=True):
                if w == v0 and len(path) >= 2:
                    cycles.append(path + (v0,))
                elif w > v0 and w not in used:
                    stack.append((path + (w,), used | {w}))
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


def _spend(budget_box: list[int]) -> None:
    budget_box[0] -= 1
    if budget_box[0] < 0:
        raise BudgetExceededError("search budget exhausted")


def _stage_ears(d: Digraph, stage_v: frozenset[int], covered_a: frozenset[Arc],
                min_len: int, allow_cycle_ears: bool,
                budget_box: list[int]) -> list[Ear]:
    """All ears attachable to the stage, longest first."""
    found: list[Ear] = []
    for u in sorted(stage_v):
        if min_len <= 1:
            for w in sorted(d.out_neighbors(u)):
                if w in stage_v and w != u and (u, w) not in covered_a:
                    found.append(Ear((u, w)))
        stack: list[tuple[int, ...]] = [(u,)]
        while stack:
            path = stack.pop()
            _spend(budget_box)
            last = path[-1]
            for w in sorted(d.out_neighbors(last), reverse=True):
                if w in stage_v:
                    if len(path) < 2:
                        continue  # handled by the length-1 scan
                    if w == u and not allow_cycle_ears:
                        continue
                    if len(path) >= min_len:
                        found.append(Ear(path + (w,)))
                elif w not in path:
                    stack.append(path + (w,))
    found.sort(key=lambda e: (-e.length, e.x0, e.xr, e.vertices))
    return found


def find_le_decomposition(d: Digraph, i: int = 1, budget: int = 200_000,
                          allow_cycle_ears: bool = True) -> EarDecomposition | None:
    """Exact search for a decomposition with every ear of length >= i.

    Backtracks over base-cycle choice and ear order, longest ear first.
    Returns None only when the whole space was exhausted (provably not in
    LE_i under the chosen ear convention); a BudgetExceededError means the
    verdict is unknown.
    """
    if i < 1:
        raise InvalidInputError("minimum ear length must be >= 1")
    if not is_strong(d):
        raise PropertyFailedError("digraph is not strong")
    if d.n < 2:
        raise PropertyFailedError("no cycle exists: single vertex")
    box = [budget]
    target_v, target_a = d.vertices, d.arcs
    dead: set[tuple[frozenset[int], frozenset[Arc]]] = set()

    def attempt(verts: frozenset[int], arcs: frozenset[Arc],
                chosen: tuple[Ear, ...]) -> tuple[Ear, ...] | None:
        if verts == target_v and arcs == target_a:
            return chosen
        key = (verts, arcs)
        if key in dead:
            return None
        _spend(box)
        for ear in _stage_ears(d, verts, arcs, i, allow_cycle_ears, box):
            res = attempt(verts | set(ear.vertices), arcs | set(ear.arcs),
                          chosen + (ear,))
            if res is not None:
                return res
        dead.add(key)
        return None

    for cyc in _all_cycles(d, box):
        base = Ear(cyc)
        res = attempt(frozenset(base.vertices), frozenset(base.arcs), ())
        if res is not None:
            deco = EarDecomposition(d, base, res)
            report = validate_decomposition(d, deco)
            if not report.ok:
                raise VerificationError("; ".join(report.violations))
            if not deco.certifies(i):
                raise VerificationError("search returned a short ear")
            return deco
    return None


def generate_random_le(base_length: int = 3, ear_count: int = 3,
                       min_ear_length: int = 2, max_ear_length: int | None = None,
                       cycle_ear_probability: float = 0.0,
                       seed: int = 0) -> tuple[Digraph, EarDecomposition]:
    """Seeded random LE_{min_ear_length} instance with its decomposition.

    Digon-free by construction unless base_length = 2: cycle ears are only
    drawn at length >= 3, and length-1 ears never duplicate or reverse an
    existing arc.  Deterministic per seed.
    """
    if base_length < 2:
        raise InvalidInputError("base length must be >= 2")
    if min_ear_length < 1:
        raise InvalidInputError("min ear length must be >= 1")
    if max_ear_length is None:
        max_ear_length = min_ear_length
    if max_ear_length < min_ear_length:
        raise InvalidInputError("max ear length below min")
    rng = random.Random(seed)
    vertices = list(range(base_length))
    arcs = {(i, (i + 1) % base_length) for i in range(base_length)}
    base = Ear(tuple(range(base_length)) + (0,))
    ears: list[Ear] = []
    next_id = base_length
    for _ in range(ear_count):
        length = rng.randint(min_ear_length, max_ear_length)
        as_cycle = length >= 3 and rng.random() < cycle_ear_probability
        if length == 1:
            pairs = [(u, v) for u in vertices for v in vertices
                     if u != v and (u, v) not in arcs and (v, u) not in arcs]
            if not pairs:
                raise InvalidInputError("no room for a length-1 ear; "
                                        "inconsistent parameters")
            x0, xr = rng.choice(sorted(pairs))
            ear = Ear((x0, xr))
        else:
            x0 = rng.choice(vertices)
            xr = x0 if as_cycle else rng.choice([v for v in vertices if v != x0])
            interior = tuple(range(next_id, next_id + length - 1))
            next_id += length - 1
            ear = Ear((x0,) + interior + (xr,))
        ears.append(ear)
        vertices.extend(ear.internal)
        arcs.update(ear.arcs)
    host = Digraph(range(next_id), arcs)
    deco = EarDecomposition(host, base, ears)
    report = validate_decomposition(host, deco)
    if not report.ok:
        raise VerificationError("; ".join(report.violations))
    return host, deco
