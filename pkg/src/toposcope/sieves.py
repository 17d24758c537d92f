"""Sieves, Grothendieck topologies, their lattice, and the sheaf condition.

A sieve on c is stored as a bitmask over the global morphism index, masked by
codomain; pullback is then a short masked loop.  Topologies are per-object
frozensets of sieve masks.  ``enumerate_topologies`` is the brute-force
oracle used to cross-check envelope computations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .fincat import FinCategory
from . import presheaf as ps


class SieveError(Exception):
    pass


class CodomainMismatch(SieveError):
    pass


class NotASieve(SieveError):
    pass


class TopologyError(Exception):
    pass


class MissingMaximal(TopologyError):
    pass


class UnstableUnder(TopologyError):
    pass


class TransitivityFail(TopologyError):
    pass


class SiteMismatch(TopologyError):
    pass


class TooLarge(Exception):
    """Site exceeds the enumeration budget (see TOPOSCOPE_ENUM_BUDGET)."""


class JoinClosureDiverged(Exception):
    """Internal error: closure iteration failed to reach a fixpoint."""


DEFAULT_BUDGET = 65536
BUDGET_ENV_VAR = "TOPOSCOPE_ENUM_BUDGET"


@dataclass(frozen=True)
class Sieve:
    """A right-composition-closed set of morphisms into ``base``."""

    base: int
    members: int  # bitmask over the global morphism index

    def contains(self, m: int) -> bool:
        return bool(self.members >> m & 1)

    @property
    def size(self) -> int:
        return bin(self.members).count("1")


def member_names(C: FinCategory, s: Sieve) -> tuple[str, ...]:
    return tuple(sorted(C.mor_name(m) for m in range(C.n_mor) if s.contains(m)))


def sieve_label(C: FinCategory, s: Sieve) -> str:
    return "{%s}" % ",".join(member_names(C, s))


def max_sieve(C: FinCategory, c: int) -> Sieve:
    mask = 0
    for m in C.into(c):
        mask |= 1 << m
    return Sieve(c, mask)


def empty_sieve(c: int) -> Sieve:
    return Sieve(c, 0)


def generate_sieve(C: FinCategory, c: int, generator_names) -> Sieve:
    """Close a set of morphisms into c under right composition."""
    mask = 0
    stack = [C.mor_index(n) for n in generator_names]
    for m in stack:
        if C.cod[m] != c:
            raise CodomainMismatch(
                "generator %s does not have codomain %s" % (C.mor_name(m), C.obj_name(c)))
    while stack:
        m = stack.pop()
        if mask >> m & 1:
            continue
        mask |= 1 << m
        for g in C.into(C.dom[m]):
            stack.append(C.compose(m, g))
    return Sieve(c, mask)


def make_sieve(C: FinCategory, c: int, names) -> Sieve:
    """Build a sieve from explicit members, verifying closure."""
    s = Sieve(c, sum(1 << C.mor_index(n) for n in set(names)))
    for m in C.into(c):
        if s.contains(m) and C.cod[m] != c:
            raise CodomainMismatch("member %s has the wrong codomain" % C.mor_name(m))
    closed = generate_sieve(C, c, set(names))
    if closed.members != s.members:
        missing = sorted(set(member_names(C, closed)) - set(names))
        raise NotASieve("set is not closed under right composition; missing %s" % missing)
    return s


@lru_cache(maxsize=None)
def sieves_on(C: FinCategory, c: int) -> tuple[Sieve, ...]:
    """All sieves on c: every union of closures of single morphisms."""
    closures = [generate_sieve(C, c, [C.mor_name(m)]).members for m in C.into(c)]
    masks = {0}
    for cl in closures:
        masks |= {s | cl for s in masks}
    return tuple(Sieve(c, m) for m in sorted(masks, key=lambda m: (bin(m).count("1"), m)))


def pullback_sieve(C: FinCategory, f: int, r: Sieve) -> Sieve:
    """f*R = {g : f∘g ∈ R}, a sieve on the domain of f."""
    if C.cod[f] != r.base:
        raise CodomainMismatch(
            "cannot pull a sieve on %s back along %s" % (C.obj_name(r.base), C.mor_name(f)))
    d = C.dom[f]
    mask = 0
    for g in C.into(d):
        if r.members >> C.compose(f, g) & 1:
            mask |= 1 << g
    return Sieve(d, mask)


def sieve_subobject(C: FinCategory, r: Sieve) -> ps.Subobject:
    """The sieve realized as a subobject of the representable on its base."""
    y = ps.yoneda(C, r.base)
    sel = [
        {C.mor_name(m) for m in C.hom(d, r.base) if r.contains(m)}
        for d in range(C.n_obj)
    ]
    return ps.Subobject(y, sel, label=sieve_label(C, r), check=False)


@dataclass(frozen=True)
class Topology:
    """A Grothendieck topology: per object, the set of covering sieve masks."""

    site: FinCategory
    covers: tuple[frozenset, ...]

    def covers_at(self, c: int) -> tuple[Sieve, ...]:
        return tuple(Sieve(c, m) for m in
                     sorted(self.covers[c], key=lambda m: (bin(m).count("1"), m)))

    def covering(self, s: Sieve) -> bool:
        return s.members in self.covers[s.base]

    @property
    def total(self) -> int:
        return sum(len(cs) for cs in self.covers)

    def leq(self, other: "Topology") -> bool:
        return all(a <= b for a, b in zip(self.covers, other.covers))

    @property
    def is_trivial(self) -> bool:
        return all(len(cs) == 1 for cs in self.covers)

    def canonical_key(self):
        return tuple(tuple(sorted(cs)) for cs in self.covers)

    def describe(self) -> dict:
        C = self.site
        return {
            C.obj_name(c): [sieve_label(C, s) for s in self.covers_at(c)]
            for c in range(C.n_obj)
        }

    def __repr__(self):
        return "Topology(%s; %d covers)" % (self.site.name, self.total)


def trivial_topology(C: FinCategory) -> Topology:
    return Topology(C, tuple(frozenset({max_sieve(C, c).members}) for c in range(C.n_obj)))


def degenerate_topology(C: FinCategory) -> Topology:
    return Topology(C, tuple(
        frozenset(s.members for s in sieves_on(C, c)) for c in range(C.n_obj)))


def _as_cover_masks(C, c, entry) -> int:
    if isinstance(entry, Sieve):
        if entry.base != c:
            raise TopologyError("sieve on the wrong object in covers")
        return entry.members
    return make_sieve(C, c, entry).members


def validate_topology(C: FinCategory, assignment) -> Topology:
    """Check the three topology axioms exhaustively.

    ``assignment`` maps object names to collections of sieves (Sieve values
    or member-name collections); a Topology is revalidated as-is.
    """
    if isinstance(assignment, Topology):
        covers = [set(cs) for cs in assignment.covers]
    else:
        covers = [set() for _ in range(C.n_obj)]
        for oname, entries in assignment.items():
            c = C.obj_index(oname)
            for entry in entries:
                covers[c].add(_as_cover_masks(C, c, entry))

    for c in range(C.n_obj):
        if max_sieve(C, c).members not in covers[c]:
            raise MissingMaximal(
                "the maximal sieve on %s is not covering" % C.obj_name(c))
    for c in range(C.n_obj):
        for mask in covers[c]:
            for f in C.into(c):
                pb = pullback_sieve(C, f, Sieve(c, mask))
                if pb.members not in covers[C.dom[f]]:
                    raise UnstableUnder(
                        "pullback of %s along %s is not covering"
                        % (sieve_label(C, Sieve(c, mask)), C.mor_name(f)))
    for c in range(C.n_obj):
        for r in sieves_on(C, c):
            if r.members in covers[c]:
                continue
            for smask in covers[c]:
                if all(
                    not (smask >> f & 1)
                    or pullback_sieve(C, f, r).members in covers[C.dom[f]]
                    for f in C.into(c)
                ):
                    raise TransitivityFail(
                        "sieve %s is locally covering for %s but not covering on %s"
                        % (sieve_label(C, r), sieve_label(C, Sieve(c, smask)), C.obj_name(c)))
    return Topology(C, tuple(frozenset(cs) for cs in covers))


def _close_assignment(C: FinCategory, seeds) -> Topology:
    """Least topology whose covers include the seed sieves."""
    covers = [set(cs) for cs in seeds]
    for c in range(C.n_obj):
        covers[c].add(max_sieve(C, c).members)
    all_sv = [sieves_on(C, c) for c in range(C.n_obj)]
    max_passes = sum(len(sv) for sv in all_sv) + 2
    for _ in range(max_passes):
        changed = False
        for c in range(C.n_obj):
            for mask in list(covers[c]):
                for f in C.into(c):
                    pb = pullback_sieve(C, f, Sieve(c, mask)).members
                    if pb not in covers[C.dom[f]]:
                        covers[C.dom[f]].add(pb)
                        changed = True
        for c in range(C.n_obj):
            for r in all_sv[c]:
                if r.members in covers[c]:
                    continue
                ok_mask = 0
                for f in C.into(c):
                    if pullback_sieve(C, f, r).members in covers[C.dom[f]]:
                        ok_mask |= 1 << f
                if any(smask & ~ok_mask == 0 for smask in covers[c]):
                    covers[c].add(r.members)
                    changed = True
        if not changed:
            return Topology(C, tuple(frozenset(cs) for cs in covers))
    raise JoinClosureDiverged("closure did not stabilise; this is a bug")


def _budget(budget) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get(BUDGET_ENV_VAR, str(DEFAULT_BUDGET)))


def enumerate_topologies(C: FinCategory, budget: int | None = None) -> tuple[Topology, ...]:
    """The complete list of topologies on C, sorted by total cover count.

    Every topology is the join of the single-sieve closures it contains, so
    generating all principal closures and saturating under joins is complete.
    The budget bounds the number of closure computations.
    """
    budget = _budget(budget)
    spent = 0

    def close(seeds):
        nonlocal spent
        spent += 1
        if spent > budget:
            raise TooLarge(
                "topology enumeration exceeded the budget of %d candidate "
                "seeds; raise %s to override" % (budget, BUDGET_ENV_VAR))
        return _close_assignment(C, seeds)

    empty_seed = tuple(frozenset() for _ in range(C.n_obj))
    bottom = close(empty_seed)
    principals = {}
    for c in range(C.n_obj):
        maxm = max_sieve(C, c).members
        for r in sieves_on(C, c):
            if r.members == maxm:
                continue
            seed = tuple(
                frozenset({r.members}) if o == c else frozenset()
                for o in range(C.n_obj))
            t = close(seed)
            principals[t.canonical_key()] = t
    principals = list(principals.values())

    known = {bottom.canonical_key(): bottom}
    frontier = [bottom]
    while frontier:
        j = frontier.pop()
        for p in principals:
            if p.leq(j):
                continue
            joined = close(tuple(a | b for a, b in zip(j.covers, p.covers)))
            k = joined.canonical_key()
            if k not in known:
                known[k] = joined
                frontier.append(joined)
    return tuple(sorted(known.values(), key=lambda t: (t.total, t.canonical_key())))


def meet_topologies(j: Topology, k: Topology) -> Topology:
    """Coverwise intersection (always a topology)."""
    if j.site is not k.site:
        raise SiteMismatch("meet of topologies on different sites")
    return Topology(j.site, tuple(a & b for a, b in zip(j.covers, k.covers)))


def join_topologies(j: Topology, k: Topology) -> Topology:
    """Least topology containing both, by closure iteration."""
    if j.site is not k.site:
        raise SiteMismatch("join of topologies on different sites")
    return _close_assignment(j.site, tuple(a | b for a, b in zip(j.covers, k.covers)))


def double_negation(C: FinCategory) -> Topology:
    """Covers are the dense sieves: every map into the base meets the sieve."""
    covers = []
    for c in range(C.n_obj):
        dense = set()
        for r in sieves_on(C, c):
            if all(
                any(r.members >> C.compose(f, g) & 1 for g in C.into(C.dom[f]))
                for f in C.into(c)
            ):
                dense.add(r.members)
        covers.append(frozenset(dense))
    return Topology(C, tuple(covers))


@dataclass(frozen=True)
class SheafResult:
    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds


def _nat_jsonable(t: ps.NatTransf) -> dict:
    C = t.source.site
    return {C.obj_name(c): dict(sorted(t.component[c].items())) for c in range(C.n_obj)}


def is_sheaf(X: ps.Presheaf, j: Topology) -> SheafResult:
    """Check the sheaf condition: unique amalgamation along every cover.

    For each covering sieve R on c the restriction Nat(y(c), X) -> Nat(R, X)
    must be a bijection; on failure the witness names the violating (c, R)
    and a matching family without (or with several) amalgamations.
    """
    C = j.site
    if X.site is not C:
        raise SiteMismatch("presheaf and topology live on different sites")
    for c in range(C.n_obj):
        maxm = max_sieve(C, c).members
        sections = ps.nat_transformations(ps.yoneda(C, c), X)
        for r in j.covers_at(c):
            if r.members == maxm:
                continue  # restriction along the identity inclusion
            sub = sieve_subobject(C, r)
            incl = sub.inclusion()
            families = ps.nat_transformations(sub.as_presheaf(), X)
            images = {}
            for sec in sections:
                restr = incl.then(sec)
                if restr._key in images:
                    return SheafResult(False, {
                        "object": C.obj_name(c),
                        "sieve": sieve_label(C, r),
                        "sections": len(sections),
                        "families": len(families),
                        "reason": "two sections restrict to the same matching family",
                        "family": _nat_jsonable(restr),
                    })
                images[restr._key] = sec
            for fam in families:
                if fam._key not in images:
                    return SheafResult(False, {
                        "object": C.obj_name(c),
                        "sieve": sieve_label(C, r),
                        "sections": len(sections),
                        "families": len(families),
                        "reason": "matching family with no amalgamation",
                        "family": _nat_jsonable(fam),
                    })
    return SheafResult(True)


def element_sieve(X: ps.Presheaf, u: ps.Subobject, c: int, x: str) -> Sieve:
    """The sieve of maps pulling the element x into the subobject u."""
    C = X.site
    mask = 0
    for f in C.into(c):
        if X.act(f, x) in u.selected[C.dom[f]]:
            mask |= 1 << f
    return Sieve(c, mask)


def is_dense_subobject(u: ps.Subobject, j: Topology) -> bool:
    """Dense for j: every element's sieve of entry into u is covering."""
    X = u.ambient
    if X.site is not j.site:
        raise SiteMismatch("subobject and topology live on different sites")
    return all(
        element_sieve(X, u, c, x).members in j.covers[c]
        for c, x in X.elements()
    )
