"""Wire-count heuristics and simplification strategies.

``lch`` and ``ph`` give the exact change in the number of Hadamard wires
caused by local complementation and pivoting (positive means wires are
removed).  :func:`enumerate_matches` scores every candidate rewrite of a
graph-like diagram, and the strategies repeatedly pick one: the best
(greedy) or a uniformly random one, optionally with neighbour unfusion
for spiders with non-Clifford phases.

The module also contains the two classic rewrite loops, :func:`clifford_simp`
(interior local complementation and pivoting) and :func:`full_reduce`
(adds boundary pivots, gadget pivots and gadget fusion).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import count
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .gflow import find_gflow, same_extraction_qubit
from .graph import Diagram, DiagramError, EdgeKind, gadget_hub, gadget_leaf, gadgets
from .phase import Phase
from .rules import (HALF, RuleError, RuleKind, RuleMatch, Unfusion, apply_fusion,
                    apply_gadget_fusion, apply_identity_removal, apply_local_complementation,
                    apply_pi_copy, apply_pivot, apply_pivot_boundary, apply_pivot_gadget, gadget_neighbors,
                    normalize_gadget)

H = EdgeKind.HADAMARD
PLAIN = EdgeKind.PLAIN

LC_NU_GAMMA = HALF
PIVOT_NU_GAMMA = Phase(0)
UNFUSION_NEIGHBORS = ("qubit", "any")


class Strategy(Enum):
    GREEDY = "greedy"
    RANDOM = "random"
    GREEDY_NU = "greedy-nu"
    RANDOM_NU = "random-nu"
    CLIFFORD = "clifford"
    FULL = "full"

    @property
    def heuristic(self) -> bool:
        return self in (Strategy.GREEDY, Strategy.RANDOM, Strategy.GREEDY_NU, Strategy.RANDOM_NU)

    @property
    def randomized(self) -> bool:
        return self in (Strategy.RANDOM, Strategy.RANDOM_NU)

    @property
    def unfusion(self) -> bool:
        return self in (Strategy.GREEDY_NU, Strategy.RANDOM_NU)


@dataclass
class StrategyConfig:
    """Knobs of one simplification run.

    ``min_gain`` is the lower bound on LCH/PH; ``max_steps`` defaults to ten
    times the initial number of spiders.  Random strategies need a seed.
    """

    strategy: Strategy = Strategy.GREEDY
    min_gain: int = 1
    allow_boundary: bool = False
    allow_arbitrary_phase: bool = False
    seed: Optional[int] = None
    max_steps: Optional[int] = None
    unfusion_neighbors: str = "qubit"

    def __post_init__(self) -> None:
        self.strategy = Strategy(self.strategy)
        if self.unfusion_neighbors not in UNFUSION_NEIGHBORS:
            raise ValueError(f"unfusion_neighbors must be one of {UNFUSION_NEIGHBORS}")
        if self.strategy.randomized and self.seed is None:
            raise ValueError(f"strategy {self.strategy.value} needs a seed")
        if self.seed is not None and self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.max_steps is not None and self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


# ----------------------------------------------------------------------
# heuristics


def _triangle(n: int) -> int:
    return n * (n - 1) // 2


def _edges_among(d: Diagram, vs: Sequence[int]) -> int:
    real = [v for v in vs if v >= 0]
    s = set(real)
    return sum(1 for v in real for w in d.adjacency(v) if w in s and v < w)


def _lch_value(phase: Phase, n: int, m: int) -> int:
    base = 2 * m - _triangle(n)
    if phase.is_proper_clifford():
        return base + n
    if phase.is_pauli():
        return base
    return base - 1


def lch(d: Diagram, u: int) -> int:
    """Wires removed by local complementation on the interior spider ``u``."""
    if not d.has_vertex(u):
        raise DiagramError(f"unknown vertex {u}")
    if not d.is_interior(u):
        raise RuleError(f"spider {u} is not interior")
    n = d.degree(u)
    if n == 0:
        raise RuleError(f"spider {u} has no neighbours")
    return _lch_value(d.phase(u), n, _edges_among(d, list(d.adjacency(u))))


def _cross_edges(d: Diagram, a: Set[int], b: Set[int], c: Set[int]) -> int:
    m = 0
    for x, y in ((a, b), (a, c), (b, c)):
        for s in x:
            if s < 0:
                continue
            adj = d.adjacency(s)
            m += sum(1 for t in y if t >= 0 and t in adj)
    return m


def _ph_formula(d: Diagram, a: Set[int], b: Set[int], c: Set[int], n_u: int, n_v: int,
                pauli_u: bool, pauli_v: bool) -> int:
    m = _cross_edges(d, a, b, c)
    cmax = len(a) * len(b) + len(a) * len(c) + len(b) * len(c)
    if pauli_u and pauli_v:
        return 2 * m - cmax + n_u + n_v - 1
    if pauli_u:
        return 2 * m - cmax + n_v - 1
    if pauli_v:
        return 2 * m - cmax + n_u - 1
    return 2 * m - cmax - 2


def ph(d: Diagram, u: int, v: int) -> int:
    """Wires removed by pivoting along the Hadamard wire ``u - v`` (both interior)."""
    for x in (u, v):
        if not d.has_vertex(x):
            raise DiagramError(f"unknown vertex {x}")
        if not d.is_interior(x):
            raise RuleError(f"spider {x} is not interior")
    if not d.connected(u, v) or d.edge_kind(u, v) is not H:
        raise RuleError(f"{u} and {v} are not joined by a Hadamard wire")
    nu, nv = d.neighbors(u), d.neighbors(v)
    a = (nu & nv)
    b = nu - nv - {v}
    c = nv - nu - {u}
    return _ph_formula(d, a, b, c, len(nu), len(nv), d.phase(u).is_pauli(), d.phase(v).is_pauli())


# ----------------------------------------------------------------------
# scoring of prepared matches (boundary unfusion and neighbour unfusion)


class _Virtual:
    """Hands out negative ids for spiders a rewrite would create."""

    def __init__(self) -> None:
        self._c = count(-1, -1)

    def __call__(self) -> int:
        return next(self._c)


def _prepared_neighbourhood(d: Diagram, x: int, toward: Optional[int], fresh: _Virtual,
                            allow_boundary: bool) -> Tuple[Set[int], int, int]:
    """Neighbourhood of ``x`` after boundary and neighbour unfusion.

    Returns (neighbours, extra wires, extra spiders).  Every boundary wire is
    replaced by a fresh isolated neighbour (two new wires, two spiders),
    and unfusing towards ``toward`` swaps that neighbour for a fresh one
    (two new wires, two spiders).
    """
    nbrs = set()
    wires = spiders = 0
    for w in d.adjacency(x):
        if d.is_boundary(w):
            if not allow_boundary:
                raise RuleError(f"spider {x} touches a boundary")
            nbrs.add(fresh())
            wires += 2
            spiders += 2
        elif w == toward:
            nbrs.add(fresh())
            wires += 2
            spiders += 2
        else:
            nbrs.add(w)
    return nbrs, wires, spiders


def score_local_complementation(d: Diagram, u: int, toward: Optional[int] = None,
                                allow_boundary: bool = False) -> Tuple[int, int]:
    """(wire gain, spider delta) of lc on ``u`` with optional unfusion."""
    fresh = _Virtual()
    nbrs, wires, spiders = _prepared_neighbourhood(d, u, toward, fresh, allow_boundary)
    if not nbrs:
        raise RuleError(f"spider {u} has no neighbours")
    phase = LC_NU_GAMMA if toward is not None else d.phase(u)
    gain = _lch_value(phase, len(nbrs), _edges_among(d, list(nbrs))) - wires
    if phase.is_proper_clifford():
        spiders -= 1
    elif not phase.is_pauli():
        spiders += 1
    return gain, spiders


def score_pivot(d: Diagram, u: int, v: int, toward_u: Optional[int] = None,
                toward_v: Optional[int] = None, allow_boundary: bool = False) -> Tuple[int, int]:
    """(wire gain, spider delta) of a pivot on ``u - v`` with optional unfusions."""
    if not d.connected(u, v) or d.edge_kind(u, v) is not H:
        raise RuleError(f"{u} and {v} are not joined by a Hadamard wire")
    if toward_u == v or toward_v == u:
        raise RuleError("cannot unfuse towards the pivot partner")
    fresh = _Virtual()
    nu, wu, su = _prepared_neighbourhood(d, u, toward_u, fresh, allow_boundary)
    nv, wv, sv = _prepared_neighbourhood(d, v, toward_v, fresh, allow_boundary)
    pauli_u = toward_u is not None or d.phase(u).is_pauli()
    pauli_v = toward_v is not None or d.phase(v).is_pauli()
    a = nu & nv
    b = nu - nv - {v}
    c = nv - nu - {u}
    gain = _ph_formula(d, a, b, c, len(nu), len(nv), pauli_u, pauli_v) - wu - wv
    spiders = su + sv - 2 + 2 * (not pauli_u) + 2 * (not pauli_v)
    return gain, spiders


# ----------------------------------------------------------------------
# match enumeration


def _excluded_targets(d: Diagram) -> Set[int]:
    """Gadget hubs and leaves are never heuristic targets."""
    out: Set[int] = set()
    for hub, leaf in gadgets(d).items():
        out.add(hub)
        out.add(leaf)
    return out


def _eligible(d: Diagram, v: int, cfg: StrategyConfig) -> bool:
    if d.degree(v) == 0:
        return False
    if len(d.boundary_neighbors(v)) == d.degree(v):
        return False
    return cfg.allow_boundary or d.is_interior(v)


def _unfusion_candidates(d: Diagram, u: int, gf, avoid: Optional[int] = None,
                         any_neighbor: bool = False) -> List[int]:
    out = []
    for w in sorted(d.adjacency(u)):
        if w == avoid or d.is_boundary(w):
            continue
        if any_neighbor:
            out.append(w)
        elif gf is not None and u in gf.order and w in gf.order and same_extraction_qubit(d, gf, u, w):
            out.append(w)
    return out


def enumerate_matches(d: Diagram, cfg: StrategyConfig, originals: Optional[Set[int]] = None,
                      gflow=None) -> List[RuleMatch]:
    """Every lc/pivot candidate of ``d`` that passes the filters of ``cfg``.

    Matches scoring below ``cfg.min_gain`` are dropped; so are matches with
    a non-positive score on spiders outside ``originals``.  With a
    neighbour-unfusion strategy, non-Clifford targets are unfused towards a
    neighbour extracted on the same qubit (per the maximally delayed gflow,
    computed here unless supplied), choosing the neighbour that scores best.
    """
    originals = set(d.spiders()) if originals is None else originals
    excluded = _excluded_targets(d)
    nu_mode = cfg.strategy.unfusion
    any_nb = cfg.unfusion_neighbors == "any"
    if nu_mode and gflow is None and not any_nb:
        gflow = find_gflow(d)
    arbitrary = cfg.allow_arbitrary_phase
    out: List[RuleMatch] = []

    def keep(m: RuleMatch) -> None:
        if m.score < cfg.min_gain:
            return
        if m.score <= 0 and any(t not in originals for t in m.targets):
            return
        out.append(m)

    spiders = [v for v in d.spiders() if v not in excluded and _eligible(d, v, cfg)]
    for u in spiders:
        p = d.phase(u)
        boundary = bool(d.boundary_neighbors(u))
        if p.is_proper_clifford() or arbitrary:
            gain, ds = score_local_complementation(d, u, allow_boundary=cfg.allow_boundary)
            keep(RuleMatch(RuleKind.LOCAL_COMP, (u,), (), gain, ds, boundary))
        elif nu_mode and (any_nb or not p.is_clifford()):
            best = None
            for w in _unfusion_candidates(d, u, gflow, any_neighbor=any_nb):
                gain, ds = score_local_complementation(d, u, w, cfg.allow_boundary)
                if best is None or gain > best[0]:
                    best = (gain, ds, w)
            if best is not None:
                uf = (Unfusion(u, best[2], p - LC_NU_GAMMA),)
                keep(RuleMatch(RuleKind.NEIGHBOR_UNFUSION, (u,), uf, best[0], best[1], boundary,
                               {"rule": "lc"}))

    eligible = set(spiders)
    for u in spiders:
        for v, k in d.adjacency(u).items():
            if v <= u or v not in eligible or k is not H:
                continue
            pu, pv = d.phase(u).is_pauli(), d.phase(v).is_pauli()
            boundary = bool(d.boundary_neighbors(u) or d.boundary_neighbors(v))
            if (pu and pv) or arbitrary:
                gain, ds = score_pivot(d, u, v, allow_boundary=cfg.allow_boundary)
                keep(RuleMatch(RuleKind.PIVOT, (u, v), (), gain, ds, boundary))
            elif nu_mode:
                opts_u = [None] if pu else _unfusion_candidates(d, u, gflow, v, any_nb)
                opts_v = [None] if pv else _unfusion_candidates(d, v, gflow, u, any_nb)
                best = None
                for wu in opts_u:
                    for wv in opts_v:
                        if wu is not None and wu == wv:
                            continue
                        gain, ds = score_pivot(d, u, v, wu, wv, cfg.allow_boundary)
                        if best is None or gain > best[0]:
                            best = (gain, ds, wu, wv)
                if best is not None:
                    ufs = []
                    if best[2] is not None:
                        ufs.append(Unfusion(u, best[2], d.phase(u) - PIVOT_NU_GAMMA))
                    if best[3] is not None:
                        ufs.append(Unfusion(v, best[3], d.phase(v) - PIVOT_NU_GAMMA))
                    keep(RuleMatch(RuleKind.NEIGHBOR_UNFUSION, (u, v), tuple(ufs), best[0], best[1],
                                   boundary, {"rule": "p"}))
    out.sort(key=RuleMatch.sort_key)
    return out


def apply_match(d: Diagram, m: RuleMatch) -> Diagram:
    """Apply a match produced by :func:`enumerate_matches`."""
    if m.kind is RuleKind.LOCAL_COMP or (m.kind is RuleKind.NEIGHBOR_UNFUSION and len(m.targets) == 1):
        return apply_local_complementation(d, m.targets[0], m.unfusions, allow_boundary=True)
    if m.kind in (RuleKind.PIVOT, RuleKind.NEIGHBOR_UNFUSION):
        return apply_pivot(d, m.targets[0], m.targets[1], m.unfusions, allow_boundary=True)
    raise RuleError(f"cannot apply a {m.kind.value} match here")


def _keeps_targets(m: RuleMatch, d: Diagram) -> List[int]:
    return [t for t in m.targets if d.has_vertex(t)]


# ----------------------------------------------------------------------
# identity removal and fusion clean-up


def _boundary_sides(d: Diagram, vs: Iterable[int]) -> Tuple[int, int]:
    ins = outs = 0
    for v in vs:
        for b in d.boundary_neighbors(v):
            ins += d.is_input(b)
            outs += d.is_output(b)
    return ins, outs


def remove_identities(d: Diagram, keep_non_clifford: bool = True) -> int:
    """Remove phase-free spiders with two Hadamard wires and fuse the ends.

    With ``keep_non_clifford`` a removal that would merge two non-Clifford
    phases is skipped, so the number of non-Clifford spiders is unchanged.
    A removal is also skipped when the fused spider would touch two inputs
    or two outputs.  Returns the number of removals.
    """
    removed = 0
    changed = True
    while changed:
        changed = False
        for u in sorted(d.spiders()):
            if not d.has_vertex(u) or d.degree(u) != 2 or not d.phase(u).is_zero():
                continue
            (a, ka), (b, kb) = sorted(d.adjacency(u).items())
            if ka is not H or kb is not H or not (d.is_spider(a) and d.is_spider(b)):
                continue
            if keep_non_clifford and d.phase(a).is_non_clifford() and d.phase(b).is_non_clifford():
                continue
            ins, outs = _boundary_sides(d, (a, b))
            if ins > 1 or outs > 1:
                continue
            apply_identity_removal(d, u)
            if d.connected(a, b) and d.edge_kind(a, b) is PLAIN:
                apply_fusion(d, min(a, b), max(a, b))
            removed += 1
            changed = True
    return removed


def fuse_spiders(d: Diagram) -> int:
    """Fuse every plain wire between two Z spiders (never merging boundaries)."""
    n = 0
    changed = True
    while changed:
        changed = False
        for u in sorted(d.spiders()):
            if not d.has_vertex(u):
                continue
            for w, k in sorted(d.adjacency(u).items()):
                if k is PLAIN and d.is_spider(w) and d.kind(w) is d.kind(u):
                    ins, outs = _boundary_sides(d, (u, w))
                    if ins > 1 or outs > 1:
                        continue
                    apply_fusion(d, min(u, w), max(u, w))
                    n += 1
                    changed = True
                    break
    return n


def non_clifford_count(d: Diagram) -> int:
    return sum(1 for v in d.spiders() if d.phase(v).is_non_clifford())


# ----------------------------------------------------------------------
# heuristic strategies


@dataclass
class SimplifyResult:
    diagram: Diagram
    steps: int = 0
    truncated: bool = False
    applied: List[RuleMatch] = field(default_factory=list)
    nu_applied: int = 0
    nu_rejected: int = 0
    gflow_rejected: int = 0
    runtime_ms: float = 0.0


def _match_key(m: RuleMatch) -> Tuple:
    return (m.kind, m.targets, tuple((u.spider, u.neighbor) for u in m.unfusions))


def _needs_gflow_check(m: RuleMatch, d: Diagram) -> bool:
    if m.unfusions or m.boundary:
        return True
    if m.kind is RuleKind.LOCAL_COMP:
        return not d.phase(m.targets[0]).is_proper_clifford()
    if m.kind is RuleKind.PIVOT:
        return not (d.phase(m.targets[0]).is_pauli() and d.phase(m.targets[1]).is_pauli())
    return False


def run_strategy(d: Diagram, cfg: StrategyConfig) -> SimplifyResult:
    """Run the strategy of ``cfg`` on ``d`` in place."""
    start = time.perf_counter()
    if cfg.strategy is Strategy.CLIFFORD:
        clifford_simp(d)
        return SimplifyResult(d, runtime_ms=(time.perf_counter() - start) * 1000)
    if cfg.strategy is Strategy.FULL:
        full_reduce(d)
        return SimplifyResult(d, runtime_ms=(time.perf_counter() - start) * 1000)
    rng = random.Random(cfg.seed) if cfg.strategy.randomized else None
    originals = set(d.spiders())
    max_steps = cfg.max_steps or max(1, 10 * d.num_spiders())
    res = SimplifyResult(d)
    banned: Set[Tuple] = set()
    needs_flow = cfg.strategy.unfusion and cfg.unfusion_neighbors == "qubit"
    flow = None
    while True:
        if needs_flow and flow is None:
            flow = find_gflow(d)
        matches = [m for m in enumerate_matches(d, cfg, originals, flow)
                   if _match_key(m) not in banned]
        if not matches:
            break
        if res.steps >= max_steps:
            res.truncated = True
            break
        m = rng.choice(matches) if rng is not None else matches[0]
        check = _needs_gflow_check(m, d)
        snapshot = d.copy() if check else None
        apply_match(d, m)
        remove_identities(d, keep_non_clifford=True)
        if check:
            # identity removal preserves gflow, so checking afterwards is
            # equivalent and the result can be reused for the next round
            new_flow = find_gflow(d)
            if new_flow is None:
                d.restore(snapshot)
                banned.add(_match_key(m))
                res.gflow_rejected += 1
                if m.unfusions:
                    res.nu_rejected += 1
                continue
            flow = new_flow
        else:
            flow = None
        banned.clear()
        if m.score <= 0:
            for t in _keeps_targets(m, d):
                originals.discard(t)
        if m.unfusions:
            res.nu_applied += 1
        res.applied.append(m)
        res.steps += 1
    res.runtime_ms = (time.perf_counter() - start) * 1000
    return res


def simplify_greedy(d: Diagram, cfg: Optional[StrategyConfig] = None) -> Diagram:
    """Repeatedly apply the best-scoring match (in place); returns ``d``."""
    cfg = cfg or StrategyConfig()
    if cfg.strategy.randomized or not cfg.strategy.heuristic:
        cfg = StrategyConfig(Strategy.GREEDY_NU if cfg.strategy.unfusion else Strategy.GREEDY,
                             cfg.min_gain, cfg.allow_boundary, cfg.allow_arbitrary_phase,
                             cfg.seed, cfg.max_steps)
    return run_strategy(d, cfg).diagram


def simplify_random(d: Diagram, cfg: StrategyConfig) -> Diagram:
    """Repeatedly apply a uniformly chosen match (in place); returns ``d``."""
    if not cfg.strategy.randomized:
        cfg = StrategyConfig(Strategy.RANDOM_NU if cfg.strategy.unfusion else Strategy.RANDOM,
                             cfg.min_gain, cfg.allow_boundary, cfg.allow_arbitrary_phase,
                             cfg.seed if cfg.seed is not None else 0, cfg.max_steps)
    return run_strategy(d, cfg).diagram


# ----------------------------------------------------------------------
# Clifford simplification and full reduction


def _interior_lc_pass(d: Diagram) -> int:
    n = 0
    for u in sorted(d.spiders()):
        if d.has_vertex(u) and d.phase(u).is_proper_clifford() and d.is_interior(u) and d.degree(u) > 0:
            apply_local_complementation(d, u)
            n += 1
    return n


def _pivot_candidates(d: Diagram, u: int) -> List[int]:
    return sorted(v for v, k in d.adjacency(u).items()
                  if k is H and d.is_spider(v) and d.phase(v).is_pauli() and d.is_interior(v))


def _interior_pivot_pass(d: Diagram) -> int:
    n = 0
    for u in sorted(d.spiders()):
        if not d.has_vertex(u) or not d.phase(u).is_pauli() or not d.is_interior(u):
            continue
        cands = _pivot_candidates(d, u)
        if cands:
            apply_pivot(d, u, cands[0])
            n += 1
    return n


def _isolated_cleanup(d: Diagram) -> int:
    """Drop spiders without wires (global scalars)."""
    gone = [v for v in d.spiders() if d.degree(v) == 0]
    for v in gone:
        d.remove_vertex(v)
    return len(gone)


def interior_clifford_simp(d: Diagram, keep_non_clifford: bool = False) -> int:
    """Identity removal, fusion, interior pivots and interior lc to fixpoint."""
    total = 0
    while True:
        n = fuse_spiders(d)
        n += remove_identities(d, keep_non_clifford)
        n += _interior_pivot_pass(d)
        n += _interior_lc_pass(d)
        n += _isolated_cleanup(d)
        total += n
        if n == 0:
            return total


def clifford_simp(d: Diagram) -> Diagram:
    """Eliminate interior proper-Clifford spiders and interior Pauli pairs.

    Local complementation removes every interior +-pi/2 spider and pivoting
    removes every pair of adjacent interior Pauli spiders; identity spiders
    are removed in between.  Modifies ``d`` in place and returns it.
    """
    interior_clifford_simp(d)
    return d


def _pivot_boundary_pass(d: Diagram, budget: List[int], inserted: Set[int]) -> int:
    """One sweep of p1.  Spiders that an earlier p1 put on a boundary wire
    never serve as the interior spider: pivoting one of them only inserts a
    fresh copy, so the rule could otherwise cycle forever."""
    n = 0
    for u in sorted(d.spiders()):
        if budget[0] <= 0:
            break
        if u in inserted or not d.has_vertex(u) or not d.phase(u).is_pauli() or not d.is_interior(u):
            continue
        if gadget_leaf(d, u) is not None or gadget_hub(d, u) is not None:
            continue
        for w in sorted(d.adjacency(u)):
            if not d.is_spider(w) or not d.phase(w).is_pauli() or d.edge_kind(u, w) is not H:
                continue
            if not d.boundary_neighbors(w):
                continue
            spider_nbrs = [x for x in d.adjacency(w) if d.is_spider(x)]
            if len(spider_nbrs) < 2:
                continue
            first = d.next_id()
            apply_pivot_boundary(d, u, w)
            inserted.update(range(first, d.next_id()))
            budget[0] -= 1
            n += 1
            break
    return n


def _pivot_gadget_pass(d: Diagram) -> int:
    n = 0
    for u in sorted(d.spiders()):
        if not d.has_vertex(u) or not d.phase(u).is_pauli() or not d.is_interior(u):
            continue
        if gadget_leaf(d, u) is not None or gadget_hub(d, u) is not None:
            continue
        for v in sorted(d.adjacency(u)):
            if not d.is_spider(v) or not d.is_interior(v) or d.edge_kind(u, v) is not H:
                continue
            if d.phase(v).is_pauli() or d.degree(v) < 2:
                continue
            if gadget_leaf(d, v) is not None or gadget_hub(d, v) is not None:
                continue
            apply_pivot_gadget(d, u, v)
            n += 1
            break
    return n


def gadget_simp(d: Diagram) -> int:
    """Fuse phase gadgets acting on the same set of spiders."""
    groups: Dict[FrozenSet[int], List[int]] = {}
    for hub in sorted(gadgets(d)):
        if not d.phase(hub).is_pauli():
            continue
        groups.setdefault(gadget_neighbors(d, hub), []).append(hub)
    n = 0
    for hubs in groups.values():
        if len(hubs) < 2:
            continue
        keep = hubs[0]
        for other in hubs[1:]:
            apply_gadget_fusion(d, keep, other)
            n += 1
    return n


def _pi_copy_pass(d: Diagram) -> int:
    """Copy Pauli leaves (such as gadgets whose phases cancelled) through
    their interior neighbour."""
    n = 0
    for u in sorted(d.spiders()):
        if not d.has_vertex(u) or d.degree(u) != 1 or not d.phase(u).is_pauli():
            continue
        (h,) = d.adjacency(u)
        if d.is_boundary(h) or d.edge_kind(u, h) is not H:
            continue
        if any(d.is_boundary(w) or k is not H for w, k in d.adjacency(h).items()):
            continue
        apply_pi_copy(d, u)
        n += 1
    return n


def full_reduce(d: Diagram, max_rounds: int = 10_000) -> Diagram:
    """Clifford simplification plus boundary pivots, gadget pivots, gadget
    fusion and Pauli-leaf copying, repeated until nothing applies.  Modifies
    ``d`` in place."""
    budget = [max(16, 4 * d.num_vertices())]
    inserted: Set[int] = set()
    interior_clifford_simp(d)
    _pivot_gadget_pass(d)
    for _ in range(max_rounds):
        interior_clifford_simp(d)
        while _pivot_boundary_pass(d, budget, inserted):
            interior_clifford_simp(d)
        i = gadget_simp(d)
        interior_clifford_simp(d)
        j = _pivot_gadget_pass(d)
        j += _pi_copy_pass(d)
        if i + j == 0:
            break
    for hub in list(gadgets(d)):
        normalize_gadget(d, hub)
    return d
