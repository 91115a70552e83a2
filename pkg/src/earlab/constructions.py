"""Constructive certificates along an ear decomposition.

Three builders (Seymour vertex, longest-path transversal, small
quasi-kernel) plus a regression harness for the quasi-kernel extension
failure on length-2 ears.  Every construction re-verifies its output and
raises rather than returning an unchecked certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import (Digraph, NeighborhoodReport, is_asymmetrical,
                      neighborhoods, set_predicates)
from .ears import Ear, EarDecomposition, validate_decomposition
from .errors import InvalidInputError, VerificationError
from .oracles import longest_path_oracle, quasi_kernel_oracle

ROLES = ("kernel", "quasi_kernel", "transversal", "independent")


@dataclass(frozen=True)
class CertifiedSet:
    members: tuple[int, ...]
    role: str
    stage: int | None = None
    size_bound_met: bool | None = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise InvalidInputError(f"unknown role {self.role!r}")
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def to_json(self) -> dict:
        doc = {"members": list(self.members), "role": self.role, "verified": True}
        if self.stage is not None:
            doc["stage"] = self.stage
        if self.size_bound_met is not None:
            doc["size_bound_met"] = self.size_bound_met
        return doc


def _checked(d: Digraph, e: EarDecomposition, min_len: int, what: str) -> None:
    report = validate_decomposition(d, e)
    if not report.ok:
        raise InvalidInputError(f"invalid decomposition: {report.violations[0]}")
    if e.ears and e.min_ear_length < min_len:
        raise InvalidInputError(f"{what} needs every ear length >= {min_len}, "
                                f"shortest is {e.min_ear_length}")


def seymour_vertex(d: Digraph, e: EarDecomposition) -> tuple[int, NeighborhoodReport]:
    """Vertex whose second out-neighborhood is at least as large as its first.

    With ears present this is the next-to-last vertex of the final ear: its
    single out-arc points at the ear's end, so the second neighborhood is
    that end's out-neighborhood.  A bare cycle qualifies everywhere.
    """
    if not is_asymmetrical(d):
        raise InvalidInputError("Seymour vertex needs an asymmetrical digraph")
    _checked(d, e, 2, "Seymour vertex")
    if e.ears:
        last = e.ears[-1]
        if last.length < 2:
            raise InvalidInputError("last ear too short: need length >= 2")
        v = last.vertices[-2]
    else:
        v = min(d.vertices)
    report = neighborhoods(d, v)
    if report.second_out_degree < report.out_degree:
        raise VerificationError(
            f"vertex {v} fails the second-neighborhood bound: "
            f"{report.second_out_degree} < {report.out_degree}")
    return v, report


def longest_path_transversal(d: Digraph, e: EarDecomposition) -> CertifiedSet:
    """Independent set meeting every maximum-length path.

    Builds inductively: a single base vertex, then per ear at most one
    internal vertex chosen by endpoint membership.  The result is checked
    against the exhaustive longest-path oracle, so the digraph must fit
    under its cap.
    """
    _checked(d, e, 2, "transversal")
    s: set[int] = {min(v for v in e.base.vertices)}
    for ear in e.ears:
        in0, inr = ear.x0 in s, ear.xr in s
        if ear.is_cycle:
            inr = in0
        if in0 and inr:
            continue
        if not in0 and not inr:
            s.add(ear.vertices[1])
        elif in0 and ear.length >= 3:
            s.add(ear.vertices[2])
        elif inr and ear.length >= 3:
            s.add(ear.vertices[1])
        # length-2 ears with exactly one endpoint inside need no addition
    if not set_predicates(d, s).independent:
        raise VerificationError(f"constructed transversal {sorted(s)} is not independent")
    report = longest_path_oracle(d)
    missed = [p for p in report.details["all_longest"] if not s.intersection(p)]
    if missed:
        raise VerificationError(
            f"longest path {missed[0]} avoids the constructed set {sorted(s)}")
    return CertifiedSet(tuple(s), "transversal", stage=len(e.ears))


def _progression(start: int, stop: int, step: int = 3) -> list[int]:
    # empty when start exceeds stop, per the table's open-ended rows
    if start > stop:
        return []
    return list(range(start, stop + 1, step))


def quasi_kernel_ear_indices(x0_in: bool, xr_in: bool, r: int) -> list[int]:
    """Internal-vertex indices added for one ear of length r >= 3.

    Keyed by endpoint membership and r mod 3.  The (in, out, r = 3t) row
    starts at index 2: starting at 1 would sit next to the in-set endpoint
    and step past r-1, so index 2 is the only stride-3 start that reaches
    r-1 while keeping independence.
    """
    m = r % 3
    if x0_in and xr_in:
        if m == 0:
            return _progression(3, r - 3)
        if m == 1:
            return [2] + _progression(4, r - 3)
        return _progression(2, r - 3)
    if not x0_in and xr_in:
        if m == 0:
            return _progression(3, r - 3)
        if m == 1:
            return _progression(1, r - 3)
        return _progression(2, r - 3)
    if x0_in and not xr_in:
        if m == 0:
            return _progression(2, r - 1)
        if m == 1:
            return _progression(3, r - 1)
        return [2] + _progression(4, r - 1)
    if m == 0:
        return _progression(2, r - 1)
    if m == 1:
        return _progression(3, r - 1)
    return _progression(1, r - 1)


def cycle_quasi_kernel_indices(n: int) -> list[int]:
    """Positions of a small quasi-kernel on a cycle of length n >= 2.

    Every third position, with the seam adjusted so the last chosen vertex
    still quasi-absorbs the wrap-around stretch.
    """
    if n < 2:
        raise InvalidInputError("cycle length must be >= 2")
    m = n % 3
    if m == 0:
        return _progression(0, n - 3)
    if m == 1:
        return _progression(0, n - 4) + [n - 2]
    return _progression(0, n - 2)


def small_quasi_kernel(d: Digraph, e: EarDecomposition) -> CertifiedSet:
    """Quasi-kernel of size at most n/2, grown stage by stage.

    The base cycle takes every third vertex; each ear contributes the
    stride-3 pattern matching its endpoint membership.  Each stage result
    is verified before the next ear is processed.
    """
    _checked(d, e, 3, "small quasi-kernel")
    cycle = e.base.vertices[:-1]
    q: set[int] = {cycle[i] for i in cycle_quasi_kernel_indices(len(cycle))}
    stage = e.stage(0)
    preds = set_predicates(stage, q)
    if not preds.is_quasi_kernel:
        raise VerificationError(f"base quasi-kernel {sorted(q)} failed verification")
    for j, ear in enumerate(e.ears):
        in0 = ear.x0 in q
        inr = in0 if ear.is_cycle else ear.xr in q
        for idx in quasi_kernel_ear_indices(in0, inr, ear.length):
            q.add(ear.vertices[idx])
        stage = e.stage(j + 1)
        preds = set_predicates(stage, q)
        if not preds.is_quasi_kernel:
            raise VerificationError(
                f"quasi-kernel {sorted(q)} failed verification at stage {j + 1}")
    if 2 * len(q) > d.n:
        raise VerificationError(
            f"quasi-kernel has {len(q)} members on {d.n} vertices: not small")
    return CertifiedSet(tuple(q), "quasi_kernel", stage=len(e.ears),
                        size_bound_met=True)


@dataclass
class ExtensionCandidate:
    added: int | None
    members: tuple[int, ...]
    independent: bool
    quasi_absorbent: bool
    small: bool

    @property
    def is_quasi_kernel(self) -> bool:
        return self.independent and self.quasi_absorbent


@dataclass
class ExtensionReport:
    stage: int
    ear: Ear
    candidates: list[ExtensionCandidate] = field(default_factory=list)

    @property
    def any_quasi_kernel(self) -> bool:
        return any(c.is_quasi_kernel for c in self.candidates)

    @property
    def any_small_quasi_kernel(self) -> bool:
        return any(c.is_quasi_kernel and c.small for c in self.candidates)

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "ear": list(self.ear.vertices),
            "any_quasi_kernel": self.any_quasi_kernel,
            "any_small_quasi_kernel": self.any_small_quasi_kernel,
            "candidates": [
                {"added": c.added, "members": list(c.members),
                 "independent": c.independent,
                 "quasi_absorbent": c.quasi_absorbent,
                 "is_quasi_kernel": c.is_quasi_kernel, "small": c.small}
                for c in self.candidates
            ],
        }


def le2_quasi_kernel_obstruction(d: Digraph, e: EarDecomposition,
                                 q: CertifiedSet) -> ExtensionReport:
    """Try every one-vertex ear extension of a stage quasi-kernel.

    Reports which candidates survive as quasi-kernels of the next stage and
    whether any stays small; with short ears the answer can be none, which
    is exactly the phenomenon this harness captures.
    """
    report = validate_decomposition(d, e)
    if not report.ok:
        raise InvalidInputError(f"invalid decomposition: {report.violations[0]}")
    if not any(ear.length == 2 for ear in e.ears):
        raise InvalidInputError("harness needs a decomposition with a length-2 ear")
    if q.stage is None or not 0 <= q.stage < len(e.ears):
        raise InvalidInputError("certified set must name a stage with a next ear")
    here = e.stage(q.stage)
    if not set_predicates(here, set(q.members)).is_quasi_kernel:
        raise VerificationError(
            f"{list(q.members)} is not a quasi-kernel of stage {q.stage}")
    ear = e.ears[q.stage]
    nxt = e.stage(q.stage + 1)
    base = set(q.members)
    candidates: list[tuple[int | None, frozenset[int]]] = [(None, frozenset(base))]
    seen = {frozenset(base)}
    for v in ear.vertices:
        trial = frozenset(base | {v})
        if trial not in seen:
            seen.add(trial)
            candidates.append((v, trial))
    result = ExtensionReport(stage=q.stage, ear=ear)
    for added, members in candidates:
        preds = set_predicates(nxt, set(members))
        result.candidates.append(ExtensionCandidate(
            added=added,
            members=tuple(sorted(members)),
            independent=preds.independent,
            quasi_absorbent=preds.quasi_absorbent,
            small=2 * len(members) <= nxt.n,
        ))
    return result


def find_quasi_kernel_obstruction(max_base: int = 7):
    """Search small one-ear instances for a total extension failure.

    Scans cycles plus a single length-2 ear over all endpoint pairs and all
    stage quasi-kernels; returns the first instance where no candidate
    survives, or None if the scan is exhausted.
    """
    for base_len in range(3, max_base + 1):
        cycle = Digraph.cycle(base_len)
        stage_qks = quasi_kernel_oracle(cycle, enumerate_all=True)
        z = base_len
        for x0 in range(base_len):
            for xr in range(base_len):
                if x0 == xr:
                    continue
                host = cycle.union([z], [(x0, z), (z, xr)])
                ear = Ear((x0, z, xr))
                decomp = EarDecomposition(host, e_base_cycle(base_len), [ear])
                for members in stage_qks.details["all_quasi_kernels"]:
                    cert = CertifiedSet(tuple(members), "quasi_kernel", stage=0,
                                        size_bound_met=2 * len(members) <= base_len)
                    report = le2_quasi_kernel_obstruction(host, decomp, cert)
                    if not report.any_quasi_kernel:
                        return host, decomp, cert, report
    return None


def e_base_cycle(n: int) -> Ear:
    return Ear(tuple(range(n)) + (0,))
