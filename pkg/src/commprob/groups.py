"""Finite group engine.

A :class:`Group` is a fully enumerated finite group whose elements carry
deterministic integer ids.  Groups built by generator closure assign ids
by breadth-first search from the identity (left multiplication, first
seen wins), so ids are reproducible across runs and platforms; groups
built from an explicit element list keep the given order with the
identity moved to id 0.

Subgroups are plain id sets inside an ambient group; their canonical key
is the sorted id tuple, which makes subgroup identity exact and cheap.
Conjugacy classes, centralizers, centers and derived series are computed
by direct orbit and scan algorithms, which is the right trade-off at the
scales this package targets (groups up to a few hundred thousand
elements).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .errors import InputError, SizeCapError
from .gf import FieldElement, FieldSpec

GROUP_SIZE_CAP = 250_000

_EXHAUSTIVE_CHECK_LIMIT = 200
_SAMPLE_CHECKS = 512
_CHECK_SEED = 0x5EED


# ---------------------------------------------------------------------------
# kind-specific raw-data operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixOps:
    """Flat-tuple matrix arithmetic over a finite field (entries are
    field element indices, row-major)."""

    field: FieldSpec
    dim: int
    mul: callable
    inv: callable
    det: callable
    identity: tuple
    transpose: callable


def matrix_operations(fld: FieldSpec, d: int) -> MatrixOps:
    if d < 1 or d > 3:
        raise InputError(f"matrix dimension {d} unsupported (need 1..3)")
    add = fld.add_table()
    mul = fld.mul_table()
    neg = fld.neg_table()
    inv_t = fld.inv_table()
    one = fld.one_index
    rng = range(d)

    def mat_mul(A, B):
        out = []
        push = out.append
        for i in rng:
            ib = i * d
            for j in rng:
                acc = 0
                for l in rng:
                    acc = add[acc][mul[A[ib + l]][B[l * d + j]]]
                push(acc)
        return tuple(out)

    def sub(x, y):
        return add[x][neg[y]]

    def det(A):
        if d == 1:
            return A[0]
        if d == 2:
            return sub(mul[A[0]][A[3]], mul[A[1]][A[2]])
        a, b, c, e, f, g, h, i, j = A
        m1 = mul[a][sub(mul[f][j], mul[g][i])]
        m2 = mul[b][sub(mul[e][j], mul[g][h])]
        m3 = mul[c][sub(mul[e][i], mul[f][h])]
        return add[sub(m1, m2)][m3]

    def mat_inv(A):
        dt = det(A)
        if dt == 0:
            raise InputError("matrix is not invertible")
        di = inv_t[dt]
        if d == 1:
            return (di,)
        if d == 2:
            a, b, c, e = A
            return (mul[di][e], mul[di][neg[b]], mul[di][neg[c]], mul[di][a])
        a, b, c, e, f, g, h, i, j = A
        adj = (
            sub(mul[f][j], mul[g][i]), sub(mul[c][i], mul[b][j]), sub(mul[b][g], mul[c][f]),
            sub(mul[g][h], mul[e][j]), sub(mul[a][j], mul[c][h]), sub(mul[c][e], mul[a][g]),
            sub(mul[e][i], mul[f][h]), sub(mul[b][h], mul[a][i]), sub(mul[a][f], mul[b][e]),
        )
        return tuple(mul[di][x] for x in adj)

    def transpose(A):
        return tuple(A[j * d + i] for i in rng for j in rng)

    identity = tuple(one if i == j else 0 for i in rng for j in rng)
    return MatrixOps(fld, d, mat_mul, mat_inv, det, identity, transpose)


def _perm_ops(n: int):
    idx = tuple(range(n))

    def mul_data(a, b):
        # composition: apply b first, then a
        return tuple(a[b[i]] for i in idx)

    def inv_data(a):
        out = [0] * n
        for i in idx:
            out[a[i]] = i
        return tuple(out)

    return mul_data, inv_data, idx


def _table_ops(table):
    n = len(table)

    def mul_data(a, b):
        return table[a][b]

    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise InputError("multiplication table has no identity")

    def inv_data(a):
        for b in range(n):
            if table[a][b] == identity:
                return b
        raise InputError(f"table element {a} has no inverse")

    return mul_data, inv_data, identity


# ---------------------------------------------------------------------------
# Group
# ---------------------------------------------------------------------------

def _bfs_closure(mul_data, identity, gens, cap=GROUP_SIZE_CAP):
    data = [identity]
    ids = {identity: 0}
    i = 0
    while i < len(data):
        cur = data[i]
        i += 1
        for g in gens:
            nd = mul_data(g, cur)
            if nd not in ids:
                if len(data) >= cap:
                    raise SizeCapError(
                        f"generated group exceeds the size cap {cap}"
                    )
                ids[nd] = len(data)
                data.append(nd)
    return data, ids


class Group:
    """An enumerated finite group with deterministic integer ids."""

    __slots__ = (
        "kind", "descriptor", "degree", "field", "dim",
        "_data", "_ids", "_inv", "_mul_data", "_inv_data",
        "generator_ids",
        "_full", "_class_cache", "_cent_cache", "_gen_cache",
        "_abelian_cache", "_branching", "_lescot_memo",
    )

    def __init__(self, kind, mul_data, inv_data, identity_data, data,
                 descriptor="", generators_data=(), degree=None,
                 fld=None, dim=None):
        if len(data) > GROUP_SIZE_CAP:
            raise SizeCapError(
                f"group of order {len(data)} exceeds the size cap {GROUP_SIZE_CAP}"
            )
        if data[0] != identity_data:
            raise InputError("element list must start with the identity")
        self.kind = kind
        self.descriptor = descriptor
        self.degree = degree
        self.field = fld
        self.dim = dim
        self._mul_data = mul_data
        self._inv_data = inv_data
        self._data = list(data)
        self._ids = {d: i for i, d in enumerate(self._data)}
        if len(self._ids) != len(self._data):
            raise InputError("element list contains duplicates")
        try:
            self._inv = [self._ids[inv_data(d)] for d in self._data]
        except KeyError:
            raise InputError("element set is not closed under inversion") from None
        self.generator_ids = tuple(self._ids[g] for g in generators_data)
        self._full = None
        self._class_cache = {}
        self._cent_cache = {}
        self._gen_cache = {}
        self._abelian_cache = {}
        self._branching = None
        self._lescot_memo = {}
        self._spot_check()

    def _spot_check(self):
        n = len(self._data)
        mul_data = self._mul_data
        ids = self._ids
        data = self._data
        if n <= _EXHAUSTIVE_CHECK_LIMIT:
            pairs = ((a, b) for a in data for b in data)
        else:
            rng = random.Random(_CHECK_SEED)
            pairs = (
                (data[rng.randrange(n)], data[rng.randrange(n)])
                for _ in range(_SAMPLE_CHECKS)
            )
        for a, b in pairs:
            if mul_data(a, b) not in ids:
                raise InputError("element set is not closed under multiplication")
        e = data[0]
        for i in range(min(n, 64)):
            if mul_data(e, data[i]) != data[i] or mul_data(data[i], e) != data[i]:
                raise InputError("identity element does not act as identity")

    # -- constructors --

    @classmethod
    def from_permutation_generators(cls, n, generators, descriptor=""):
        gens = [_as_perm(g, n) for g in generators]
        mul_data, inv_data, _ = _perm_ops(n)
        identity = tuple(range(n))
        data, _ = _bfs_closure(mul_data, identity, gens)
        return cls("perm", mul_data, inv_data, identity, data,
                   descriptor=descriptor, generators_data=gens, degree=n)

    @classmethod
    def from_permutation_list(cls, n, elements, descriptor=""):
        mul_data, inv_data, _ = _perm_ops(n)
        identity = tuple(range(n))
        data = _identity_first(elements, identity)
        return cls("perm", mul_data, inv_data, identity, data,
                   descriptor=descriptor, degree=n)

    @classmethod
    def from_matrix_generators(cls, fld, d, generators, descriptor=""):
        ops = matrix_operations(fld, d)
        gens = [_as_matrix(g, fld, d) for g in generators]
        for g in gens:
            if ops.det(g) == 0:
                raise InputError("generator matrix is not invertible")
        data, _ = _bfs_closure(ops.mul, ops.identity, gens)
        return cls("matrix", ops.mul, ops.inv, ops.identity, data,
                   descriptor=descriptor, generators_data=gens, fld=fld, dim=d)

    @classmethod
    def from_matrix_list(cls, fld, d, elements, descriptor=""):
        ops = matrix_operations(fld, d)
        data = _identity_first(elements, ops.identity)
        return cls("matrix", ops.mul, ops.inv, ops.identity, data,
                   descriptor=descriptor, fld=fld, dim=d)

    @classmethod
    def from_table(cls, table, descriptor="", generators=None):
        """Group over a full multiplication table; with ``generators``
        (table indices), the subgroup they generate."""
        table = tuple(tuple(row) for row in table)
        mul_data, inv_data, identity = _table_ops(table)
        if generators is None:
            data = _identity_first(list(range(len(table))), identity)
            return cls("table", mul_data, inv_data, identity, data,
                       descriptor=descriptor)
        gens = []
        for g in generators:
            g = g.id if isinstance(g, Element) else int(g)
            if not 0 <= g < len(table):
                raise InputError(f"generator index {g} out of table range")
            gens.append(g)
        data, _ = _bfs_closure(mul_data, identity, gens)
        return cls("table", mul_data, inv_data, identity, data,
                   descriptor=descriptor, generators_data=gens)

    # -- core accessors --

    @property
    def order(self) -> int:
        return len(self._data)

    def __len__(self):
        return len(self._data)

    def mul(self, a: int, b: int) -> int:
        return self._ids[self._mul_data(self._data[a], self._data[b])]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1 by id."""
        d = self._data
        return self._ids[self._mul_data(self._mul_data(d[g], d[x]), d[self._inv[g]])]

    def data_of(self, i: int):
        return self._data[i]

    def id_of(self, data) -> int:
        return self._ids[data]

    def element(self, i: int) -> "Element":
        if not 0 <= i < len(self._data):
            raise InputError(f"element id {i} out of range")
        return Element(self, i)

    @property
    def identity(self) -> "Element":
        return Element(self, 0)

    def elements(self):
        for i in range(len(self._data)):
            yield Element(self, i)

    def element_order(self, x: int) -> int:
        if isinstance(x, Element):
            x = x.id
        o = 1
        y = x
        while y != 0:
            y = self.mul(y, x)
            o += 1
        return o

    def full(self) -> "Subgroup":
        if self._full is None:
            self._full = Subgroup(self, range(len(self._data)), _validate=False)
        return self._full

    def subgroup(self, ids, validate=True) -> "Subgroup":
        return Subgroup(self, ids, _validate=validate)

    def __repr__(self):
        desc = self.descriptor or self.kind
        return f"Group({desc}, order={len(self._data)})"


def _identity_first(elements, identity):
    elements = [tuple(e) if isinstance(e, list) else e for e in elements]
    if identity not in elements:
        raise InputError("element list does not contain the identity")
    return [identity] + [e for e in elements if e != identity]


def _as_perm(g, n):
    if isinstance(g, Element):
        g = g.data
    img = tuple(int(v) for v in g)
    if len(img) != n:
        raise InputError(
            f"permutation degree mismatch: expected {n}, got {len(img)}"
        )
    if sorted(img) != list(range(n)):
        raise InputError(f"image vector {img} is not a bijection")
    return img


def _as_matrix(g, fld, d):
    if isinstance(g, Element):
        g = g.data
    flat = []
    rows = list(g)
    if len(rows) == d * d and not isinstance(rows[0], (list, tuple)):
        cells = rows
    else:
        if len(rows) != d:
            raise InputError(f"expected a {d}x{d} matrix")
        cells = [c for row in rows for c in row]
        if len(cells) != d * d:
            raise InputError(f"expected a {d}x{d} matrix")
    for c in cells:
        if isinstance(c, FieldElement):
            if c.spec is not fld:
                raise InputError("matrix entry from a different field")
            flat.append(c.index)
        else:
            c = int(c)
            if fld.k == 1:
                flat.append(c % fld.p)
            else:
                if not 0 <= c < fld.q:
                    raise InputError(
                        f"integer entry {c} is not a valid element index of GF({fld.q})"
                    )
                flat.append(c)
    return tuple(flat)


def closure(ambient, generators, descriptor="") -> Group:
    """Generate a group inside the described ambient structure.

    ``ambient`` is ``("perm", n)``, ``("matrix", field, d)`` or
    ``("table", table)``; an empty generator list yields the trivial group.
    """
    if not ambient:
        raise InputError("ambient kind required")
    kind = ambient[0]
    if kind == "perm":
        return Group.from_permutation_generators(ambient[1], generators, descriptor)
    if kind == "matrix":
        return Group.from_matrix_generators(ambient[1], ambient[2], generators, descriptor)
    if kind == "table":
        return Group.from_table(ambient[1], descriptor, generators=generators)
    raise InputError(f"unknown ambient kind {kind!r}")


@dataclass(frozen=True)
class Element:
    """An element of an enumerated group, addressed by id."""

    group: Group
    id: int

    @property
    def data(self):
        return self.group.data_of(self.id)

    @property
    def kind(self):
        return self.group.kind

    def __mul__(self, other: "Element") -> "Element":
        if other.group is not self.group:
            raise InputError("elements belong to different groups")
        return Element(self.group, self.group.mul(self.id, other.id))

    def inverse(self) -> "Element":
        return Element(self.group, self.group.inv(self.id))

    def order(self) -> int:
        return self.group.element_order(self.id)

    def __repr__(self):
        return f"Element(id={self.id}, {self.data})"


class Subgroup:
    """A subgroup of an ambient group, identified by its sorted id tuple."""

    __slots__ = ("group", "member_ids", "key")

    def __init__(self, group: Group, ids, _validate=True):
        self.group = group
        self.member_ids = frozenset(
            i.id if isinstance(i, Element) else int(i) for i in ids
        )
        self.key = tuple(sorted(self.member_ids))
        if _validate:
            self._validate()

    def _validate(self):
        G = self.group
        mem = self.member_ids
        if 0 not in mem:
            raise InputError("subgroup must contain the identity")
        for i in mem:
            if not 0 <= i < len(G):
                raise InputError(f"member id {i} out of range")
            if G.inv(i) not in mem:
                raise InputError("member set is not closed under inversion")
        n = len(mem)
        key = self.key
        if n <= _EXHAUSTIVE_CHECK_LIMIT:
            pairs = ((a, b) for a in key for b in key)
        else:
            rng = random.Random(_CHECK_SEED)
            pairs = (
                (key[rng.randrange(n)], key[rng.randrange(n)])
                for _ in range(_SAMPLE_CHECKS)
            )
        for a, b in pairs:
            if G.mul(a, b) not in mem:
                raise InputError("member set is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.member_ids)

    def __len__(self):
        return len(self.member_ids)

    def __contains__(self, x):
        if isinstance(x, Element):
            x = x.id
        return x in self.member_ids

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.group is self.group
            and other.key == self.key
        )

    def __hash__(self):
        return hash(self.key)

    def elements(self):
        for i in self.key:
            yield Element(self.group, i)

    def __repr__(self):
        return f"Subgroup(order={len(self.member_ids)} of {self.group!r})"


@dataclass(frozen=True)
class ConjugacyClass:
    rep: int
    size: int
    members: tuple


class ClassData:
    """Conjugacy classes of a subgroup: deterministic minimal-id reps."""

    __slots__ = ("owner", "classes", "class_of")

    def __init__(self, owner, classes, class_of):
        self.owner = owner
        self.classes = classes
        self.class_of = class_of

    @property
    def k(self) -> int:
        return len(self.classes)

    def __repr__(self):
        return f"ClassData(k={len(self.classes)}, owner order {self.owner.order})"


# ---------------------------------------------------------------------------
# subgroup algorithms
# ---------------------------------------------------------------------------

def _closure_ids(G: Group, gen_ids):
    """Id set of the subgroup generated by the given ids."""
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for cur in frontier:
            for g in gen_ids:
                p = G.mul(g, cur)
                if p not in members:
                    members.add(p)
                    nxt.append(p)
        frontier = nxt
    return members


def generating_ids(H: Subgroup) -> tuple:
    """A small generating set of H: greedy over ascending ids, so at most
    log2 |H| generators."""
    G = H.group
    cached = G._gen_cache.get(H.key)
    if cached is not None:
        return cached
    gens = []
    closed = {0}
    target = len(H.member_ids)
    for x in H.key:
        if x in closed:
            continue
        gens.append(x)
        closed = _closure_ids(G, gens)
        if len(closed) == target:
            break
    result = tuple(gens)
    G._gen_cache.setdefault(H.key, result)
    return result


def conjugacy_classes(H: Subgroup) -> ClassData:
    """Partition H into conjugation orbits under H itself."""
    G = H.group
    cached = G._class_cache.get(H.key)
    if cached is not None:
        return cached
    gens = generating_ids(H)
    data = G._data
    ids = G._ids
    mul_data = G._mul_data
    pairs = [(data[g], data[G.inv(g)]) for g in gens]
    assigned = {}
    classes = []
    for seed in H.key:
        if seed in assigned:
            continue
        ci = len(classes)
        assigned[seed] = ci
        orbit = [seed]
        qi = 0
        while qi < len(orbit):
            y = data[orbit[qi]]
            qi += 1
            for gd, gdi in pairs:
                z = ids[mul_data(mul_data(gd, y), gdi)]
                if z not in assigned:
                    assigned[z] = ci
                    orbit.append(z)
        classes.append(ConjugacyClass(seed, len(orbit), tuple(sorted(orbit))))
    cd = ClassData(H, classes, assigned)
    G._class_cache.setdefault(H.key, cd)
    return G._class_cache[H.key]


def centralizer(H: Subgroup, x) -> Subgroup:
    """Elements of H commuting with x (full membership scan)."""
    if isinstance(x, Element):
        x = x.id
    G = H.group
    if x not in H.member_ids:
        raise InputError(f"element {x} is not a member of the subgroup")
    ck = (H.key, x)
    cached = G._cent_cache.get(ck)
    if cached is not None:
        return cached
    data = G._data
    mul_data = G._mul_data
    xd = data[x]
    members = [
        h for h in H.key
        if mul_data(data[h], xd) == mul_data(xd, data[h])
    ]
    Z = Subgroup(G, members, _validate=False)
    G._cent_cache.setdefault(ck, Z)
    return G._cent_cache[ck]


def is_abelian(H: Subgroup) -> bool:
    G = H.group
    cached = G._abelian_cache.get(H.key)
    if cached is not None:
        return cached
    gens = generating_ids(H)
    result = all(
        G.mul(a, b) == G.mul(b, a) for a in gens for b in gens
    )
    G._abelian_cache.setdefault(H.key, result)
    return result


def center(H: Subgroup) -> Subgroup:
    G = H.group
    gens = generating_ids(H)
    data = G._data
    mul_data = G._mul_data
    gd = [data[g] for g in gens]
    members = [
        h for h in H.key
        if all(mul_data(data[h], g) == mul_data(g, data[h]) for g in gd)
    ]
    return Subgroup(G, members, _validate=False)


def commutator_subgroup(H: Subgroup) -> Subgroup:
    """Derived subgroup: normal closure in H of generator commutators."""
    G = H.group
    gens = generating_ids(H)
    inv = G.inv
    mul = G.mul
    comms = set()
    for a in gens:
        for b in gens:
            comms.add(mul(mul(inv(a), inv(b)), mul(a, b)))
    comms.discard(0)
    if not comms:
        return Subgroup(G, [0], _validate=False)
    seed = sorted(comms)
    genlist = []
    members = {0}
    pending = list(reversed(seed))
    gpairs = [(g, inv(g)) for g in gens]
    while pending:
        c = pending.pop()
        if c in members:
            continue
        genlist.append(c)
        members = _closure_ids(G, genlist)
        new_conj = set()
        for m in members:
            for g, gi in gpairs:
                w = mul(mul(g, m), gi)
                if w not in members:
                    new_conj.add(w)
        pending.extend(sorted(new_conj, reverse=True))
    return Subgroup(G, members, _validate=False)


def derived_series(H: Subgroup) -> list:
    """Iterated derived subgroups until stabilization."""
    series = [H]
    while True:
        K = commutator_subgroup(series[-1])
        if K.order == series[-1].order:
            break
        series.append(K)
        if K.order == 1:
            break
    return series


def derived_length(H: Subgroup) -> Optional[int]:
    """Number of strict derived steps down to the trivial group, or None
    if the series stabilizes above it (H not solvable)."""
    series = derived_series(H)
    if series[-1].order == 1:
        return len(series) - 1
    return None


def is_solvable(H: Subgroup) -> bool:
    return derived_length(H) is not None


def element_order(H: Subgroup, x) -> int:
    if isinstance(x, Element):
        x = x.id
    if x not in H.member_ids:
        raise InputError(f"element {x} is not a member of the subgroup")
    return H.group.element_order(x)


def z_classes(H: Subgroup) -> list:
    """Group class indices whose representatives' centralizers are
    conjugate subgroups of H.  Returns a partition as a list of sorted
    index lists, ordered by smallest class index."""
    G = H.group
    cd = conjugacy_classes(H)
    cents = [centralizer(H, c.rep) for c in cd.classes]
    gens = generating_ids(H)
    gpairs = [(g, G.inv(g)) for g in gens]
    mul = G.mul
    orbit_of = {}
    blocks = []
    for i, Z in enumerate(cents):
        found = orbit_of.get(Z.key)
        if found is not None:
            blocks[found].append(i)
            continue
        oi = len(blocks)
        blocks.append([i])
        seen = {Z.key}
        queue = [Z.key]
        orbit_of[Z.key] = oi
        while queue:
            k = queue.pop()
            for g, gi in gpairs:
                ck = tuple(sorted(mul(mul(g, z), gi) for z in k))
                if ck not in seen:
                    seen.add(ck)
                    orbit_of[ck] = oi
                    queue.append(ck)
    return blocks
