"""All communities of a single vertex, one per ego component."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .graph import EdgeCutView, ego_components
from .pipeline import Community, DetectionError, DetectionParams, detect

SEED_CAP = 50


@dataclass
class MembershipResult:
    query: int
    communities: list[Community] = field(default_factory=list)
    candidates: list[list[int]] = field(default_factory=list)  # seed set used per community
    skipped: list[list[int]] = field(default_factory=list)
    failed: list[list[int]] = field(default_factory=list)

    @property
    def om_estimate(self) -> int:
        return len(self.communities)

    def to_lines(self, g) -> list[str]:
        """One line per community: external ids, then a tab and the score."""
        return [" ".join(str(v) for v in g.external(c.members)) + f"\t{c.score:.6g}"
                for c in self.communities]


def _trim(g, component: list[int], cap: int) -> list[int]:
    if len(component) <= cap:
        return component
    members = set(component)
    internal = {v: sum(1 for u in g.neighbors(v) if int(u) in members) for v in component}
    return sorted(sorted(component, key=lambda v: (-internal[v], v))[:cap])


def find_all_memberships(g, s: int, params: DetectionParams = DetectionParams(),
                         seed_cap: int = SEED_CAP) -> MembershipResult:
    """Detect a community from ``{s} + S_i`` for each ego component ``S_i`` of ``s``.

    Edges from ``s`` to the other ego neighbors are hidden while ``S_i`` is
    processed.  Components already covered by earlier communities are skipped.
    """
    params = replace(params, size=None)
    result = MembershipResult(query=int(s))
    nbrs = {int(u) for u in g.neighbors(s)}
    covered: set = set()
    for comp in ego_components(g, s):
        if covered.issuperset(comp):
            result.skipped.append(comp)
            continue
        view = EdgeCutView(g, s, nbrs.difference(comp))
        seeds = [int(s)] + _trim(g, comp, seed_cap)
        try:
            det = detect(view, seeds, params)
        except DetectionError:
            result.failed.append(comp)
            continue
        comm = det.community
        if int(s) not in comm.members:
            # the query vertex defines the task; keep it even if ranked below the cut
            idx = det.ranked.index(int(s))
            comm = replace(comm, members=comm.members + [int(s)],
                           scores=comm.scores + [det.ranked_scores[idx]])
        result.communities.append(comm)
        result.candidates.append(comp)
        covered.update(det.community.members)
    return result
