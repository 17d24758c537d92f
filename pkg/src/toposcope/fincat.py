"""Finite categories with explicit composition tables.

Everything downstream (sieves, presheaves, topologies) is a scan over these
tables, so validation is exhaustive: identity laws and associativity are
checked on every composable pair and triple.
"""

from __future__ import annotations

MAX_MORPHISMS = 64  # a sieve must fit in one machine word


class CategoryError(Exception):
    """Base class for invalid category descriptions."""


class DuplicateId(CategoryError):
    pass


class DanglingDomCod(CategoryError):
    pass


class MissingIdentity(CategoryError):
    pass


class IdentityLawBroken(CategoryError):
    pass


class MissingComposite(CategoryError):
    pass


class TooManyMorphisms(CategoryError):
    pass


class NonAssociative(CategoryError):
    def __init__(self, triple: tuple[str, str, str], detail: str = ""):
        self.triple = triple
        msg = "associativity fails on triple (h=%s, g=%s, f=%s)" % triple
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class NoTerminal(CategoryError):
    pass


class FinCategory:
    """A validated finite category.

    Objects and morphisms are small integer indices with stable string names;
    composition is a dense (mor x mor) table with None on non-composable
    pairs.  Instances are immutable by convention and safe to share; build
    them through :func:`validate_category`.
    """

    def __init__(self, name, obj_names, mor_names, dom, cod, identity, table):
        self.name = name
        self.obj_names = tuple(obj_names)
        self.mor_names = tuple(mor_names)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.identity = tuple(identity)  # per object: index of its identity
        self.table = tuple(tuple(row) for row in table)  # table[g][f] = g∘f
        self.n_obj = len(self.obj_names)
        self.n_mor = len(self.mor_names)
        self._obj_index = {n: i for i, n in enumerate(self.obj_names)}
        self._mor_index = {n: i for i, n in enumerate(self.mor_names)}
        self._identity_set = frozenset(self.identity)
        hom: dict[tuple[int, int], list[int]] = {}
        into: list[list[int]] = [[] for _ in range(self.n_obj)]
        for m in range(self.n_mor):
            hom.setdefault((self.dom[m], self.cod[m]), []).append(m)
            into[self.cod[m]].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._into = tuple(tuple(v) for v in into)

    def __repr__(self):
        return "FinCategory(%r, %d objects, %d morphisms)" % (
            self.name, self.n_obj, self.n_mor)

    def obj_index(self, name: str) -> int:
        return self._obj_index[name]

    def mor_index(self, name: str) -> int:
        return self._mor_index[name]

    def obj_name(self, o: int) -> str:
        return self.obj_names[o]

    def mor_name(self, m: int) -> str:
        return self.mor_names[m]

    def hom(self, d: int, c: int) -> tuple[int, ...]:
        """All morphisms d -> c."""
        return self._hom.get((d, c), ())

    def into(self, c: int) -> tuple[int, ...]:
        """All morphisms with codomain c."""
        return self._into[c]

    def composable(self, g: int, f: int) -> bool:
        return self.cod[f] == self.dom[g]

    def compose(self, g: int, f: int) -> int:
        """g∘f; the pair must be composable (cod f = dom g)."""
        gf = self.table[g][f]
        if gf is None:
            raise CategoryError(
                "compose(%s, %s) is not defined" % (self.mor_names[g], self.mor_names[f]))
        return gf

    def is_identity(self, m: int) -> bool:
        return m in self._identity_set


def _as_morphism_entry(entry):
    if isinstance(entry, dict):
        return entry["name"], entry["dom"], entry["cod"]
    name, dom, cod = entry
    return name, dom, cod


def validate_category(raw: dict) -> FinCategory:
    """Validate a raw category description and return a FinCategory.

    ``raw`` has keys ``objects`` (names), ``morphisms`` (name/dom/cod
    triples), ``identities`` (object -> morphism name, created if absent
    from ``morphisms``) and ``compose`` (list of [g, f, g∘f] entries; pairs
    involving identities are implied).  Every identity law and every
    composable triple is checked; errors name the offending cell.
    """
    name = raw.get("name", "")
    obj_names = list(raw.get("objects", []))
    seen = set()
    for o in obj_names:
        if o in seen:
            raise DuplicateId("duplicate object name %r" % o)
        seen.add(o)

    mor_entries = [_as_morphism_entry(e) for e in raw.get("morphisms", [])]
    identities_raw = dict(raw.get("identities", {}))
    for o in obj_names:
        if o not in identities_raw:
            raise MissingIdentity("object %r has no identity morphism" % o)
    declared = {m[0] for m in mor_entries}
    for o, mid in identities_raw.items():
        if o not in seen:
            raise DanglingDomCod("identity declared for unknown object %r" % o)
        if mid not in declared:
            mor_entries.append((mid, o, o))
            declared.add(mid)

    mor_names, dom, cod = [], [], []
    for mname, d, c in mor_entries:
        if mname in set(mor_names):
            raise DuplicateId("duplicate morphism name %r" % mname)
        if d not in seen or c not in seen:
            raise DanglingDomCod(
                "morphism %r has unknown dom/cod (%r, %r)" % (mname, d, c))
        mor_names.append(mname)
        dom.append(obj_names.index(d))
        cod.append(obj_names.index(c))
    n = len(mor_names)
    if n > MAX_MORPHISMS:
        raise TooManyMorphisms(
            "%d morphisms exceed the supported bound of %d" % (n, MAX_MORPHISMS))
    midx = {m: i for i, m in enumerate(mor_names)}

    identity = []
    for o in obj_names:
        i = midx[identities_raw[o]]
        oi = obj_names.index(o)
        if dom[i] != oi or cod[i] != oi:
            raise MissingIdentity(
                "identity %r of %r is not an endomorphism of it" % (identities_raw[o], o))
        identity.append(i)

    # Fill the table: identity composites are forced, the rest comes from raw.
    table = [[None] * n for _ in range(n)]
    for f in range(n):
        table[f][identity[dom[f]]] = f
        table[identity[cod[f]]][f] = f
    for entry in raw.get("compose", []):
        g, f, h = entry
        for nm in (g, f, h):
            if nm not in midx:
                raise DanglingDomCod("compose entry %r names unknown morphism %r" % (entry, nm))
        gi, fi, hi = midx[g], midx[f], midx[h]
        if cod[fi] != dom[gi]:
            raise DanglingDomCod(
                "compose entry (%s, %s) is not a composable pair" % (g, f))
        if table[gi][fi] is not None and table[gi][fi] != hi:
            raise IdentityLawBroken(
                "compose(%s, %s) = %s contradicts the identity-forced value %s"
                % (g, f, h, mor_names[table[gi][fi]]))
        table[gi][fi] = hi
    for g in range(n):
        for f in range(n):
            if cod[f] == dom[g] and table[g][f] is None:
                raise MissingComposite(
                    "compose(%s, %s) is missing" % (mor_names[g], mor_names[f]))

    # Identity laws (explicit entries may not contradict, but scan anyway).
    for f in range(n):
        if table[f][identity[dom[f]]] != f or table[identity[cod[f]]][f] != f:
            raise IdentityLawBroken("identity law fails at %s" % mor_names[f])

    # Exhaustive associativity.  A stored composite with bad dom/cod shows up
    # here as a non-composable lookup, reported with the violated triple.
    for f in range(n):
        for g in range(n):
            if cod[f] != dom[g]:
                continue
            gf = table[g][f]
            for h in range(n):
                if cod[g] != dom[h]:
                    continue
                hg = table[h][g]
                names = (mor_names[h], mor_names[g], mor_names[f])
                if cod[gf] != dom[h]:
                    raise NonAssociative(
                        names, "g∘f = %s cannot be composed with h" % mor_names[gf])
                if dom[hg] != dom[g]:
                    raise NonAssociative(
                        names, "h∘g = %s cannot be composed with f" % mor_names[hg])
                if table[h][gf] != table[hg][f]:
                    raise NonAssociative(
                        names,
                        "h∘(g∘f) = %s but (h∘g)∘f = %s"
                        % (mor_names[table[h][gf]], mor_names[table[hg][f]]))

    return FinCategory(name, obj_names, mor_names, dom, cod, identity, table)


def terminal_objects(C: FinCategory) -> tuple[int, ...]:
    """Objects t with exactly one morphism x -> t from every object, by name."""
    out = []
    for t in range(C.n_obj):
        if all(len(C.hom(x, t)) == 1 for x in range(C.n_obj)):
            out.append(t)
    return tuple(sorted(out, key=C.obj_name))


def chosen_terminal(C: FinCategory) -> int:
    """The designated terminal object (lexicographically first by name)."""
    ts = terminal_objects(C)
    if not ts:
        raise NoTerminal("category %r has no terminal object" % C.name)
    return ts[0]


def points(C: FinCategory, c: int) -> tuple[int, ...]:
    """Morphisms from the chosen terminal object into c."""
    return C.hom(chosen_terminal(C), c)
