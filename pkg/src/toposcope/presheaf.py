"""Finite presheaves on a finite site and their calculus.

Carriers are finite sets of named elements, actions are explicit maps.  The
module provides the Yoneda embedding, finite limits, coproducts, exponentials,
the subobject classifier, natural-transformation enumeration, connected
components and subobject machinery.  All enumerations are deterministic:
carriers are kept sorted by element name and results are sorted by a
canonical key.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fincat import FinCategory


class PresheafError(Exception):
    pass


class IdentityActionBroken(PresheafError):
    pass


class ContravarianceBroken(PresheafError):
    pass


class SiteMismatch(PresheafError):
    pass


class AmbientMismatch(PresheafError):
    pass


class NotSubfunctor(PresheafError):
    pass


class Presheaf:
    """A finite presheaf: carrier per object, action per morphism.

    For f: d -> c the action ``act(f, -)`` maps carrier(c) into carrier(d).
    Equality and hashing are by value on a fixed site instance, so memoised
    constructions (yoneda, exponentials, ...) are shared.
    """

    __slots__ = ("site", "carrier", "action", "label", "meta", "_key", "_hash")

    def __init__(self, site: FinCategory, carrier, action, label: str = "", meta=None):
        self.site = site
        self.carrier = tuple(tuple(sorted(carrier[c])) for c in range(site.n_obj))
        self.action = tuple(dict(action[m]) for m in range(site.n_mor))
        self.label = label
        self.meta = meta or {}
        self._key = (
            self.carrier,
            tuple(tuple(sorted(a.items())) for a in self.action),
        )
        self._hash = hash((id(site), self._key))

    def at(self, c: int) -> tuple[str, ...]:
        return self.carrier[c]

    def act(self, f: int, x: str) -> str:
        return self.action[f][x]

    @property
    def total_size(self) -> int:
        return sum(len(cs) for cs in self.carrier)

    @property
    def is_empty(self) -> bool:
        return self.total_size == 0

    def elements(self):
        """All (object, element) pairs in carrier order."""
        for c in range(self.site.n_obj):
            for x in self.carrier[c]:
                yield (c, x)

    def key(self):
        return self._key

    def relabel(self, label: str) -> "Presheaf":
        return Presheaf(self.site, self.carrier, self.action, label, self.meta)

    def __eq__(self, other):
        return (isinstance(other, Presheaf) and self.site is other.site
                and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        sizes = ",".join(str(len(cs)) for cs in self.carrier)
        return "Presheaf(%s; sizes %s)" % (self.label or "?", sizes)


class NatTransf:
    """A natural transformation between presheaves on the same site."""

    __slots__ = ("source", "target", "component", "_key", "_hash")

    def __init__(self, source: Presheaf, target: Presheaf, component, check: bool = True):
        if source.site is not target.site:
            raise SiteMismatch("source and target live on different sites")
        self.source = source
        self.target = target
        self.component = tuple(dict(component[c]) for c in range(source.site.n_obj))
        self._key = tuple(tuple(sorted(comp.items())) for comp in self.component)
        self._hash = hash((self._key, source._hash, target._hash))
        if check:
            self._validate()

    def _validate(self):
        site = self.source.site
        for c in range(site.n_obj):
            comp = self.component[c]
            if set(comp) != set(self.source.at(c)):
                raise PresheafError("component at %s is not total" % site.obj_name(c))
            for x, y in comp.items():
                if y not in self.target.at(c):
                    raise PresheafError(
                        "component at %s sends %r outside the target" % (site.obj_name(c), x))
        for f in range(site.n_mor):
            d, c = site.dom[f], site.cod[f]
            for x in self.source.at(c):
                if self.component[d][self.source.act(f, x)] != self.target.act(f, self.component[c][x]):
                    raise PresheafError(
                        "naturality fails at morphism %s on element %r" % (site.mor_name(f), x))

    def at(self, c: int, x: str) -> str:
        return self.component[c][x]

    def then(self, other: "NatTransf") -> "NatTransf":
        """Vertical composite: self followed by other."""
        if other.source is not self.target and other.source != self.target:
            raise PresheafError("composition mismatch")
        comp = [
            {x: other.component[c][y] for x, y in self.component[c].items()}
            for c in range(self.source.site.n_obj)
        ]
        return NatTransf(self.source, other.target, comp, check=False)

    @property
    def is_mono(self) -> bool:
        """Componentwise injectivity (monos in presheaf toposes)."""
        return all(len(set(comp.values())) == len(comp) for comp in self.component)

    @property
    def is_iso(self) -> bool:
        return all(
            len(set(comp.values())) == len(comp) == len(self.target.at(c))
            for c, comp in enumerate(self.component)
        )

    def key(self):
        return self._key

    def __eq__(self, other):
        return (isinstance(other, NatTransf) and self.source == other.source
                and self.target == other.target and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "NatTransf(%s -> %s)" % (self.source.label or "?", self.target.label or "?")


def identity_nat(X: Presheaf) -> NatTransf:
    comp = [{x: x for x in X.at(c)} for c in range(X.site.n_obj)]
    return NatTransf(X, X, comp, check=False)


def validate_presheaf(C: FinCategory, raw: dict, label: str = "") -> Presheaf:
    """Validate a raw presheaf description over a validated site.

    ``raw`` has ``carrier`` (object name -> element names) and ``action``
    (morphism name -> {element: element}); identity actions are implied and,
    if given, must be identities.  Checks totality, codomains, the identity
    law and contravariance X(g∘f) = X(f)∘X(g) exhaustively.
    """
    carrier = []
    for c in range(C.n_obj):
        elems = list(raw.get("carrier", {}).get(C.obj_name(c), []))
        if len(set(elems)) != len(elems):
            raise PresheafError("duplicate element name at %s" % C.obj_name(c))
        carrier.append(tuple(sorted(str(e) for e in elems)))

    raw_action = raw.get("action", {})
    action = []
    for m in range(C.n_mor):
        d, c = C.dom[m], C.cod[m]
        given = raw_action.get(C.mor_name(m))
        if given is None:
            if C.is_identity(m):
                action.append({x: x for x in carrier[c]})
                continue
            if not carrier[c]:
                action.append({})
                continue
            raise ContravarianceBroken(
                "no action given for morphism %s" % C.mor_name(m))
        amap = {str(k): str(v) for k, v in given.items()}
        if set(amap) != set(carrier[c]):
            raise ContravarianceBroken(
                "action of %s is not defined on exactly the carrier of %s"
                % (C.mor_name(m), C.obj_name(c)))
        for x, y in amap.items():
            if y not in carrier[d]:
                raise ContravarianceBroken(
                    "action of %s sends %r to %r, which is not in the carrier of %s"
                    % (C.mor_name(m), x, y, C.obj_name(d)))
        action.append(amap)

    for o in range(C.n_obj):
        i = C.identity[o]
        for x in carrier[o]:
            if action[i][x] != x:
                raise IdentityActionBroken(
                    "identity action at %s moves %r" % (C.obj_name(o), x))
    for f in range(C.n_mor):
        for g in range(C.n_mor):
            if not C.composable(g, f):
                continue
            gf = C.compose(g, f)
            for x in carrier[C.cod[g]]:
                if action[gf][x] != action[f][action[g][x]]:
                    raise ContravarianceBroken(
                        "X(%s∘%s) ≠ X(%s)∘X(%s) on element %r"
                        % (C.mor_name(g), C.mor_name(f), C.mor_name(f), C.mor_name(g), x))
    return Presheaf(C, carrier, action, label=label)


@lru_cache(maxsize=None)
def yoneda(C: FinCategory, c: int) -> Presheaf:
    """The representable presheaf hom(-, c); action is precomposition."""
    carrier = [tuple(sorted(C.mor_name(m) for m in C.hom(d, c))) for d in range(C.n_obj)]
    action = []
    for f in range(C.n_mor):
        d2, d1 = C.dom[f], C.cod[f]  # f: d2 -> d1 acts hom(d1,c) -> hom(d2,c)
        action.append({C.mor_name(g): C.mor_name(C.compose(g, f)) for g in C.hom(d1, c)})
    return Presheaf(C, carrier, action, label="y(%s)" % C.obj_name(c))


@lru_cache(maxsize=None)
def terminal(C: FinCategory) -> Presheaf:
    carrier = [("*",)] * C.n_obj
    action = [{"*": "*"} for _ in range(C.n_mor)]
    return Presheaf(C, carrier, action, label="terminal")


@lru_cache(maxsize=None)
def initial(C: FinCategory) -> Presheaf:
    return Presheaf(C, [()] * C.n_obj, [{} for _ in range(C.n_mor)], label="initial")


def constant(C: FinCategory, values, label: str = "") -> Presheaf:
    """Constant presheaf at a finite set (int = that many numbered elements)."""
    if isinstance(values, int):
        names = tuple(str(i) for i in range(values))
    else:
        names = tuple(str(v) for v in values)
    carrier = [names] * C.n_obj
    action = [{x: x for x in names} for _ in range(C.n_mor)]
    return Presheaf(C, carrier, action, label=label or "const(%d)" % len(names))


def _pair(x: str, y: str) -> str:
    return "(%s,%s)" % (x, y)


def product(X: Presheaf, Y: Presheaf) -> Presheaf:
    """Pointwise product with componentwise action."""
    if X.site is not Y.site:
        raise SiteMismatch("product of presheaves on different sites")
    C = X.site
    carrier = [
        tuple(_pair(x, y) for x in X.at(c) for y in Y.at(c)) for c in range(C.n_obj)
    ]
    action = []
    for f in range(C.n_mor):
        c = C.cod[f]
        action.append({
            _pair(x, y): _pair(X.act(f, x), Y.act(f, y))
            for x in X.at(c) for y in Y.at(c)
        })
    label = "(%s × %s)" % (X.label or "?", Y.label or "?")
    return Presheaf(C, carrier, action, label=label)


def product_projections(X: Presheaf, Y: Presheaf) -> tuple[NatTransf, NatTransf]:
    """The product presheaf's two projections."""
    P = product(X, Y)
    C = X.site
    c1 = [{_pair(x, y): x for x in X.at(c) for y in Y.at(c)} for c in range(C.n_obj)]
    c2 = [{_pair(x, y): y for x in X.at(c) for y in Y.at(c)} for c in range(C.n_obj)]
    return NatTransf(P, X, c1, check=False), NatTransf(P, Y, c2, check=False)


def coproduct(X: Presheaf, Y: Presheaf) -> Presheaf:
    if X.site is not Y.site:
        raise SiteMismatch("coproduct of presheaves on different sites")
    C = X.site
    carrier = [
        tuple("inl:%s" % x for x in X.at(c)) + tuple("inr:%s" % y for y in Y.at(c))
        for c in range(C.n_obj)
    ]
    action = []
    for f in range(C.n_mor):
        c = C.cod[f]
        amap = {"inl:%s" % x: "inl:%s" % X.act(f, x) for x in X.at(c)}
        amap.update({"inr:%s" % y: "inr:%s" % Y.act(f, y) for y in Y.at(c)})
        action.append(amap)
    return Presheaf(C, carrier, action, label="(%s + %s)" % (X.label, Y.label))


@lru_cache(maxsize=None)
def nat_transformations(X: Presheaf, Z: Presheaf) -> tuple[NatTransf, ...]:
    """Every natural transformation X => Z, duplicate-free and sorted.

    Backtracking search: assigning a value at one element forces the values
    at all of its action images, so the branching is only over elements that
    are not images of earlier choices.
    """
    if X.site is not Z.site:
        raise SiteMismatch("hom between presheaves on different sites")
    site = X.site
    order = [(c, x) for c in range(site.n_obj) for x in X.at(c)]
    if not order:
        return (NatTransf(X, Z, [{} for _ in range(site.n_obj)], check=False),)
    forced = {
        (c, x): tuple((f, (site.dom[f], X.act(f, x))) for f in site.into(c))
        for (c, x) in order
    }
    assign: dict[tuple[int, str], str] = {}
    found = []

    def propagate(key, val, trail) -> bool:
        stack = [(key, val)]
        while stack:
            k, v = stack.pop()
            prev = assign.get(k)
            if prev is not None:
                if prev != v:
                    return False
                continue
            assign[k] = v
            trail.append(k)
            for f, k2 in forced[k]:
                stack.append((k2, Z.act(f, v)))
        return True

    def extend(i):
        while i < len(order) and order[i] in assign:
            i += 1
        if i == len(order):
            comp = [dict() for _ in range(site.n_obj)]
            for (c, x), v in assign.items():
                comp[c][x] = v
            found.append(NatTransf(X, Z, comp, check=False))
            return
        c, x = order[i]
        for z in Z.at(c):
            trail: list = []
            if propagate((c, x), z, trail):
                extend(i + 1)
            for k in trail:
                del assign[k]

    extend(0)
    found.sort(key=lambda t: t._key)
    return tuple(found)


@lru_cache(maxsize=None)
def exponential(Z: Presheaf, X: Presheaf) -> Presheaf:
    """The exponential Z^X with carrier(c) = Nat(y(c) × X, Z).

    Elements are named h0, h1, ... in canonical order; the underlying
    transformations are kept in ``meta["transfs"]`` so induced maps can be
    computed.  Action along f: d -> c precomposes with y(f) × id.
    """
    if Z.site is not X.site:
        raise SiteMismatch("exponential of presheaves on different sites")
    C = Z.site
    homsets = []
    bases = []
    for c in range(C.n_obj):
        base = product(yoneda(C, c), X)
        bases.append(base)
        homsets.append(nat_transformations(base, Z))
    names = [tuple("h%d" % i for i in range(len(homsets[c]))) for c in range(C.n_obj)]
    by_key = [
        {t._key: names[c][i] for i, t in enumerate(homsets[c])} for c in range(C.n_obj)
    ]
    transfs = [
        {names[c][i]: t for i, t in enumerate(homsets[c])} for c in range(C.n_obj)
    ]

    action = []
    for f in range(C.n_mor):
        d, c = C.dom[f], C.cod[f]
        amap = {}
        for i, t in enumerate(homsets[c]):
            comp = []
            for e in range(C.n_obj):
                m = {}
                for g in C.hom(e, d):
                    fg = C.mor_name(C.compose(f, g))
                    for x in X.at(e):
                        m[_pair(C.mor_name(g), x)] = t.component[e][_pair(fg, x)]
                comp.append(tuple(sorted(m.items())))
            amap[names[c][i]] = by_key[d][tuple(comp)]
        action.append(amap)

    label = "%s^%s" % (Z.label or "?", X.label or "?")
    result = Presheaf(C, names, action, label=label,
                      meta={"transfs": transfs, "bases": tuple(bases)})
    return result


@lru_cache(maxsize=None)
def subobject_classifier(C: FinCategory) -> Presheaf:
    """Omega: carrier(c) = sieves on c, action = sieve pullback."""
    from . import sieves  # deferred: sieves builds on this module

    per_obj = [sieves.sieves_on(C, c) for c in range(C.n_obj)]
    carrier = [tuple(sieves.sieve_label(C, s) for s in per_obj[c]) for c in range(C.n_obj)]
    action = []
    for f in range(C.n_mor):
        c = C.cod[f]
        action.append({
            sieves.sieve_label(C, s): sieves.sieve_label(C, sieves.pullback_sieve(C, f, s))
            for s in per_obj[c]
        })
    return Presheaf(C, carrier, action, label="Omega")


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


@dataclass(frozen=True)
class Pi0:
    """Connected components of a presheaf's total element set."""

    components: tuple[tuple[tuple[int, str], ...], ...]
    index: dict

    @property
    def count(self) -> int:
        return len(self.components)

    def component_of(self, c: int, x: str) -> int:
        return self.index[(c, x)]


def pi0(X: Presheaf) -> Pi0:
    """Quotient by the equivalence generated by x ~ X(f)(x), in stable order."""
    items = list(X.elements())
    uf = _UnionFind(items)
    C = X.site
    for f in range(C.n_mor):
        d, c = C.dom[f], C.cod[f]
        for x in X.at(c):
            uf.union((c, x), (d, X.act(f, x)))
    groups: dict = {}
    for it in items:
        groups.setdefault(uf.find(it), []).append(it)
    comps = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])
    index = {it: i for i, comp in enumerate(comps) for it in comp}
    return Pi0(tuple(comps), index)


def pi0_map(f: NatTransf) -> dict:
    """The induced map on connected components (component index to index)."""
    pw, px = pi0(f.source), pi0(f.target)
    out = {}
    for i, comp in enumerate(pw.components):
        c, x = comp[0]
        out[i] = px.component_of(c, f.at(c, x))
    return out


class Subobject:
    """A subfunctor of a fixed ambient presheaf, closed under all actions."""

    __slots__ = ("ambient", "selected", "label")

    def __init__(self, ambient: Presheaf, selected, label: str = "", check: bool = True):
        self.ambient = ambient
        self.selected = tuple(frozenset(selected[c]) for c in range(ambient.site.n_obj))
        self.label = label
        if check:
            C = ambient.site
            for c in range(C.n_obj):
                extra = self.selected[c] - set(ambient.at(c))
                if extra:
                    raise NotSubfunctor(
                        "selected element %r is not in the ambient at %s"
                        % (sorted(extra)[0], C.obj_name(c)))
            for f in range(C.n_mor):
                d, c = C.dom[f], C.cod[f]
                for x in self.selected[c]:
                    if ambient.act(f, x) not in self.selected[d]:
                        raise NotSubfunctor(
                            "selection is not closed under the action of %s at %r"
                            % (C.mor_name(f), x))

    def as_presheaf(self) -> Presheaf:
        C = self.ambient.site
        carrier = [tuple(sorted(self.selected[c])) for c in range(C.n_obj)]
        action = []
        for f in range(C.n_mor):
            c = C.cod[f]
            action.append({x: self.ambient.act(f, x) for x in self.selected[c]})
        return Presheaf(C, carrier, action, label=self.label or "sub(%s)" % self.ambient.label)

    def inclusion(self) -> NatTransf:
        S = self.as_presheaf()
        comp = [{x: x for x in S.at(c)} for c in range(S.site.n_obj)]
        return NatTransf(S, self.ambient, comp, check=False)

    @property
    def is_full(self) -> bool:
        return all(len(self.selected[c]) == len(self.ambient.at(c))
                   for c in range(self.ambient.site.n_obj))

    @property
    def is_empty(self) -> bool:
        return all(not s for s in self.selected)

    def key(self):
        return tuple(tuple(sorted(s)) for s in self.selected)

    def __eq__(self, other):
        return (isinstance(other, Subobject) and self.ambient == other.ambient
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.ambient._hash, self.key()))

    def __repr__(self):
        sizes = ",".join(str(len(s)) for s in self.selected)
        return "Subobject(%s of %s; sizes %s)" % (self.label or "?", self.ambient.label, sizes)


def full_subobject(X: Presheaf) -> Subobject:
    return Subobject(X, [set(X.at(c)) for c in range(X.site.n_obj)], label="full", check=False)


def empty_subobject(X: Presheaf) -> Subobject:
    return Subobject(X, [set() for _ in range(X.site.n_obj)], label="empty", check=False)


def generated_subobject(X: Presheaf, seeds: dict, label: str = "") -> Subobject:
    """Least subfunctor of X containing the named seed elements."""
    C = X.site
    chosen = [set() for _ in range(C.n_obj)]
    stack = []
    for oname, elems in seeds.items():
        c = C.obj_index(oname)
        for x in elems:
            stack.append((c, x))
    while stack:
        c, x = stack.pop()
        if x in chosen[c]:
            continue
        chosen[c].add(x)
        for f in C.into(c):
            stack.append((C.dom[f], X.act(f, x)))
    return Subobject(X, chosen, label=label)


def all_subobjects(X: Presheaf) -> tuple[Subobject, ...]:
    """Every subfunctor of X (unions of element closures), sorted by size."""
    closures = []
    for c, x in X.elements():
        sub = generated_subobject(X, {X.site.obj_name(c): [x]})
        closures.append(frozenset((d, y) for d in range(X.site.n_obj) for y in sub.selected[d]))
    sets = {frozenset()}
    for cl in closures:
        sets |= {s | cl for s in sets}
    out = []
    for s in sorted(sets, key=lambda s: (len(s), tuple(sorted(s)))):
        sel = [set() for _ in range(X.site.n_obj)]
        for c, x in s:
            sel[c].add(x)
        out.append(Subobject(X, sel, check=False))
    return tuple(out)


def pullback_subobject(u: Subobject, g: NatTransf) -> Subobject:
    """Pull u back along g: selects the elements of g's source landing in u."""
    if g.target != u.ambient:
        raise AmbientMismatch("subobject does not live on the codomain of the map")
    Y = g.source
    sel = [
        {y for y in Y.at(c) if g.at(c, y) in u.selected[c]}
        for c in range(Y.site.n_obj)
    ]
    return Subobject(Y, sel, label="pullback(%s)" % (u.label or "sub"), check=False)


def yoneda_map(X: Presheaf, d: int, x: str) -> NatTransf:
    """The map y(d) -> X classifying the element x of X(d)."""
    C = X.site
    comp = [
        {C.mor_name(h): X.act(h, x) for h in C.hom(e, d)}
        for e in range(C.n_obj)
    ]
    return NatTransf(yoneda(C, d), X, comp, check=False)


def find_iso(X: Presheaf, Y: Presheaf):
    """Some isomorphism X -> Y, or None."""
    if tuple(len(cs) for cs in X.carrier) != tuple(len(cs) for cs in Y.carrier):
        return None
    for t in nat_transformations(X, Y):
        if t.is_iso:
            return t
    return None


def global_points(X: Presheaf) -> tuple[NatTransf, ...]:
    """Nat(1, X)."""
    return nat_transformations(terminal(X.site), X)
