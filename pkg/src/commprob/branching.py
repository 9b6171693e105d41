"""Iterated-centralizer branching matrices and exact commuting
probabilities.

The branching matrix of a group G has one state per distinct subgroup
reached by iterating "conjugacy classes, then centralizers of their
representatives" starting from G itself.  Entry counts[j][i] is the
number of conjugacy classes of state i whose representative's
centralizer (inside state i) is state j.  Abelian states are absorbing:
every one of their |H| singleton classes centralizes to H itself.

With e_root the indicator of the G state, 1^T B^n e_root counts the
simultaneous conjugacy classes of commuting n-tuples, which turns the
n-fold commuting probability into an exact matrix power:

    cp_n(G) = c_G(n-1) / |G|^(n-1),    c_G(n) = 1^T B^n e_root.

The same value is computed independently by Lescot's recurrence over
centralizer subgroups, so the two paths cross-check each other.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .errors import InputError, SizeCapError
from .groups import (
    Group,
    Subgroup,
    centralizer,
    conjugacy_classes,
    is_abelian,
)

STATE_COUNT_CAP = 20_000


@dataclass(frozen=True)
class StateInfo:
    label: str
    order: int
    class_count: int
    abelian: bool
    key: Optional[tuple] = dc_field(default=None, compare=False, repr=False)


@dataclass
class BranchingMatrix:
    states: list
    counts: list  # counts[j][i], row-major
    root: int

    @property
    def dimension(self) -> int:
        return len(self.states)

    @property
    def class_count(self) -> int:
        """k(G) for the root group."""
        return self.states[self.root].class_count

    def column_sums(self) -> list:
        n = len(self.states)
        return [sum(self.counts[j][i] for j in range(n)) for i in range(n)]

    def __eq__(self, other):
        return (
            isinstance(other, BranchingMatrix)
            and self.states == other.states
            and self.counts == other.counts
            and self.root == other.root
        )


def count_via_matrix(counts, root: int, n: int) -> int:
    """1^T M^n e_root for a square nonnegative integer matrix, by
    iterated matrix-vector products in exact integers."""
    if n < 0:
        raise InputError("power must be nonnegative")
    size = len(counts)
    vec = [0] * size
    vec[root] = 1
    for _ in range(n):
        vec = [
            sum(row[i] * vec[i] for i in range(size) if vec[i])
            for row in counts
        ]
    return sum(vec)


def build_branching(G: Group) -> BranchingMatrix:
    """Worklist construction of the branching matrix of G.

    States are exact subgroups (never merged); indices are assigned in
    ascending subgroup-key order at finalization, so the result is
    independent of processing order.
    """
    if G._branching is not None:
        return G._branching
    full = G.full()
    subs = {full.key: full}
    info = {}
    edges = {}
    work = deque([full.key])
    while work:
        key = work.popleft()
        if key in info:
            continue
        H = subs[key]
        if is_abelian(H):
            info[key] = (H.order, H.order, True)
            edges[(key, key)] = H.order
            continue
        cd = conjugacy_classes(H)
        info[key] = (H.order, cd.k, False)
        for c in cd.classes:
            Z = centralizer(H, c.rep)
            if Z.key not in subs:
                if len(subs) >= STATE_COUNT_CAP:
                    raise SizeCapError(
                        f"branching expansion exceeds {STATE_COUNT_CAP} states "
                        f"(offending state order {Z.order})"
                    )
                subs[Z.key] = Z
                work.append(Z.key)
            pair = (Z.key, key)
            edges[pair] = edges.get(pair, 0) + 1
    keys = sorted(info)
    index = {k: i for i, k in enumerate(keys)}
    size = len(keys)
    counts = [[0] * size for _ in range(size)]
    for (child, parent), c in edges.items():
        counts[index[child]][index[parent]] = c
    states = [
        StateInfo(
            label=f"s{i}",
            order=info[k][0],
            class_count=info[k][1],
            abelian=info[k][2],
            key=k,
        )
        for i, k in enumerate(keys)
    ]
    bm = BranchingMatrix(states=states, counts=counts, root=index[full.key])
    _validate_matrix(bm)
    G._branching = bm
    return bm


def _validate_matrix(bm: BranchingMatrix):
    size = len(bm.states)
    sums = bm.column_sums()
    for i, st in enumerate(bm.states):
        if sums[i] != st.class_count:
            raise AssertionError(
                f"column {i} sums to {sums[i]}, expected k = {st.class_count}"
            )
        if st.abelian:
            if bm.counts[i][i] != st.order:
                raise AssertionError(f"abelian state {i} is not absorbing")
            for j in range(size):
                if j != i and bm.counts[j][i] != 0:
                    raise AssertionError(f"abelian state {i} has a foreign branch")


def c_tuples(B: BranchingMatrix, n: int) -> int:
    """Number of simultaneous conjugacy classes of commuting n-tuples."""
    if n < 0:
        raise InputError("n must be nonnegative")
    return count_via_matrix(B.counts, B.root, n)


def cp_via_branching(G: Group, n: int) -> Fraction:
    """cp_n(G) through the branching matrix power."""
    if n < 2:
        raise InputError("commuting probability needs n >= 2")
    B = build_branching(G)
    return Fraction(c_tuples(B, n - 1), G.order ** (n - 1))


def cp_via_lescot(G: Group, n: int) -> Fraction:
    """cp_n(G) through Lescot's recurrence over centralizer subgroups,
    memoized by subgroup key."""
    if n < 2:
        raise InputError("commuting probability needs n >= 2")
    memo = G._lescot_memo

    def rec(H: Subgroup, m: int) -> Fraction:
        if m <= 1:
            return Fraction(1)
        mkey = (H.key, m)
        val = memo.get(mkey)
        if val is not None:
            return val
        if is_abelian(H):
            val = Fraction(1)
        else:
            cd = conjugacy_classes(H)
            total = Fraction(0)
            for c in cd.classes:
                Z = centralizer(H, c.rep)
                total += rec(Z, m - 1) / c.size ** (m - 2)
            val = total / H.order
        memo[mkey] = val
        return val

    return rec(G.full(), n)


def cp2_classcount(G: Group) -> Fraction:
    """cp_2(G) = k(G) / |G| directly from the class count."""
    return Fraction(conjugacy_classes(G.full()).k, G.order)


# ---------------------------------------------------------------------------
# lumping
# ---------------------------------------------------------------------------

@dataclass
class TypePartition:
    blocks: list       # partition of state indices, each sorted
    quotient: list     # lumped matrix over blocks, quotient[j][i]
    block_of: list
    root_block: int

    @property
    def dimension(self) -> int:
        return len(self.blocks)


def lump(B: BranchingMatrix) -> TypePartition:
    """Coarsest lumpable partition refining the (order, class count)
    state fingerprint, by iterated signature splitting."""
    size = len(B.states)
    counts = B.counts
    fingerprints = [(st.order, st.class_count) for st in B.states]
    ordered = sorted(set(fingerprints))
    block_of = [ordered.index(fp) for fp in fingerprints]
    nblocks = len(ordered)
    while True:
        signatures = []
        for s in range(size):
            agg = [0] * nblocks
            for u in range(size):
                c = counts[u][s]
                if c:
                    agg[block_of[u]] += c
            signatures.append((block_of[s], tuple(agg)))
        distinct = sorted(set(signatures))
        new_block_of = [distinct.index(sig) for sig in signatures]
        if len(distinct) == nblocks:
            block_of = new_block_of
            break
        block_of = new_block_of
        nblocks = len(distinct)
    blocks = [[] for _ in range(nblocks)]
    for s in range(size):
        blocks[block_of[s]].append(s)
    quotient = []
    for bj in range(nblocks):
        row = []
        for bi in range(nblocks):
            s0 = blocks[bi][0]
            row.append(sum(counts[u][s0] for u in blocks[bj]))
        quotient.append(row)
    return TypePartition(
        blocks=blocks,
        quotient=quotient,
        block_of=block_of,
        root_block=block_of[B.root],
    )
