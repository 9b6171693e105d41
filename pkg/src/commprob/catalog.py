"""Deterministic constructors for the supported group families.

Descriptors follow a small grammar:

    C(n)            cyclic
    CxC(n1,...,nr)  direct product of cyclics
    S(n) / A(n)     symmetric / alternating
    D(n)            dihedral of order 2n
    Q8              quaternion group
    UT(3,p)         upper unitriangular 3x3 over GF(p)
    GL(d,q) SL(d,q) general / special linear, d <= 3
    Sp(2,q)         symplectic (= SL(2,q) as a set)
    U(d,q)          full unitary group over GF(q^2), d in {2,3}
    PSL(2,q)        projective special linear, as permutations of the
                    q+1 projective-line points
    M(d,q)          d x d matrix algebra; parseable, but a monoid: it is
                    only a target for brute-force pair counts, not build()

Each build is checked against the registered closed-form order and comes
with metadata flags (abelian / simple / solvable where known).
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from typing import Optional

from .errors import InputError, SizeCapError
from .gf import field, prime_power, is_prime
from .groups import GROUP_SIZE_CAP, Group, matrix_operations

_ENUMERATION_CAP = 300_000

_FAMILIES = ("C", "CxC", "S", "A", "D", "Q8", "UT", "GL", "SL", "Sp", "U", "PSL", "M")


@dataclass(frozen=True)
class GroupDescriptor:
    family: str
    params: tuple

    def __str__(self):
        if self.family == "Q8":
            return "Q8"
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    def __repr__(self):
        return f"GroupDescriptor({self})"


@dataclass(frozen=True)
class GroupMeta:
    abelian: bool
    simple: bool
    solvable: Optional[bool]
    p_group: Optional[int]


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse(text: str) -> GroupDescriptor:
    """Parse a descriptor; whitespace-insensitive, errors carry position."""
    if not isinstance(text, str):
        raise InputError("descriptor must be a string")
    chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
    if not chars:
        raise InputError("empty descriptor")
    stripped = "".join(ch for _, ch in chars)

    def err(pos_idx, msg):
        pos = chars[pos_idx][0] if pos_idx < len(chars) else len(text)
        raise InputError(f"descriptor error at position {pos}: {msg}")

    name = None
    for cand in sorted(_FAMILIES, key=len, reverse=True):
        if stripped.startswith(cand):
            name = cand
            break
    if name is None:
        err(0, f"unknown family in {text!r}")
    i = len(name)
    if name == "Q8":
        if i != len(stripped):
            err(i, "Q8 takes no parameters")
        return GroupDescriptor("Q8", ())
    if i >= len(stripped) or stripped[i] != "(":
        err(i, "expected '('")
    i += 1
    params = []
    while True:
        j = i
        while j < len(stripped) and stripped[j].isdigit():
            j += 1
        if j == i:
            err(i, "expected an integer parameter")
        params.append(int(stripped[i:j]))
        i = j
        if i >= len(stripped):
            err(i, "expected ',' or ')'")
        if stripped[i] == ",":
            i += 1
            continue
        if stripped[i] == ")":
            i += 1
            break
        err(i, f"unexpected character {stripped[i]!r}")
    if i != len(stripped):
        err(i, "trailing characters after ')'")
    desc = GroupDescriptor(name, tuple(params))
    _validate(desc)
    return desc


def _require_prime_power(q, desc):
    if prime_power(q) is None:
        raise InputError(f"{desc}: q = {q} is not a prime power")


def _validate(desc: GroupDescriptor):
    fam, ps = desc.family, desc.params
    if fam == "C":
        if len(ps) != 1 or ps[0] < 1:
            raise InputError(f"{desc}: C(n) needs one positive integer")
    elif fam == "CxC":
        if len(ps) < 1 or any(n < 1 for n in ps):
            raise InputError(f"{desc}: CxC needs positive integers")
    elif fam in ("S", "A"):
        if len(ps) != 1 or ps[0] < 1:
            raise InputError(f"{desc}: {fam}(n) needs one positive integer")
    elif fam == "D":
        if len(ps) != 1 or ps[0] < 1:
            raise InputError(f"{desc}: D(n) needs one positive integer")
    elif fam == "Q8":
        pass
    elif fam == "UT":
        if len(ps) != 2 or ps[0] != 3:
            raise InputError(f"{desc}: only UT(3,p) is supported")
        if not is_prime(ps[1]):
            raise InputError(f"{desc}: p = {ps[1]} is not prime")
    elif fam in ("GL", "SL", "M"):
        if len(ps) != 2:
            raise InputError(f"{desc}: {fam}(d,q) needs two parameters")
        d, q = ps
        if not 1 <= d <= 3:
            raise InputError(f"{desc}: unsupported degree {d} (need 1..3)")
        _require_prime_power(q, desc)
    elif fam == "Sp":
        if len(ps) != 2 or ps[0] != 2:
            raise InputError(f"{desc}: only Sp(2,q) is supported")
        _require_prime_power(ps[1], desc)
    elif fam == "U":
        if len(ps) != 2:
            raise InputError(f"{desc}: U(d,q) needs two parameters")
        d, q = ps
        if d not in (2, 3):
            raise InputError(f"{desc}: unsupported degree {d} (need 2 or 3)")
        _require_prime_power(q, desc)
    elif fam == "PSL":
        if len(ps) != 2 or ps[0] != 2:
            raise InputError(f"{desc}: only PSL(2,q) is supported")
        _require_prime_power(ps[1], desc)
    else:  # pragma: no cover
        raise InputError(f"unknown family {fam!r}")


def _as_descriptor(desc) -> GroupDescriptor:
    if isinstance(desc, GroupDescriptor):
        _validate(desc)
        return desc
    return parse(desc)


# ---------------------------------------------------------------------------
# order formulas and metadata
# ---------------------------------------------------------------------------

def order_formula(desc) -> int:
    desc = _as_descriptor(desc)
    fam, ps = desc.family, desc.params
    if fam == "C":
        return ps[0]
    if fam == "CxC":
        return math.prod(ps)
    if fam == "S":
        return math.factorial(ps[0])
    if fam == "A":
        n = ps[0]
        return 1 if n < 3 else math.factorial(n) // 2
    if fam == "D":
        return 2 * ps[0]
    if fam == "Q8":
        return 8
    if fam == "UT":
        return ps[1] ** 3
    if fam in ("GL", "SL"):
        d, q = ps
        gl = math.prod(q ** d - q ** i for i in range(d))
        return gl if fam == "GL" else gl // (q - 1)
    if fam == "M":
        d, q = ps
        return q ** (d * d)
    if fam == "Sp":
        q = ps[1]
        return q * (q * q - 1)
    if fam == "U":
        d, q = ps
        if d == 2:
            return q * (q + 1) * (q * q - 1)
        return q ** 3 * (q + 1) * (q * q - 1) * (q ** 3 + 1)
    if fam == "PSL":
        q = ps[1]
        return q * (q * q - 1) // math.gcd(2, q - 1)
    raise InputError(f"unknown family {fam!r}")  # pragma: no cover


def metadata(desc) -> GroupMeta:
    desc = _as_descriptor(desc)
    fam, ps = desc.family, desc.params
    order = order_formula(desc)
    pp = prime_power(order)
    p_group = pp[0] if pp else None

    if fam in ("C", "CxC"):
        abelian = True
    elif fam == "S":
        abelian = ps[0] <= 2
    elif fam == "A":
        abelian = ps[0] <= 3
    elif fam == "D":
        abelian = ps[0] <= 2
    elif fam in ("GL", "SL"):
        abelian = ps[0] == 1
    else:
        abelian = order == 1

    simple = False
    if fam == "A" and ps[0] >= 5:
        simple = True
    if fam == "PSL" and ps[1] >= 4:
        simple = True

    solvable: Optional[bool]
    if abelian or fam in ("D", "Q8", "UT") or p_group is not None:
        solvable = True
    elif fam == "S":
        solvable = ps[0] <= 4
    elif fam == "A":
        solvable = ps[0] <= 4
    elif simple:
        solvable = order == 1
    elif fam in ("GL", "SL", "Sp") and ps[-1] in (2, 3) and ps[0] <= 2:
        # GL2(2)=S3, GL2(3), SL2(2)=S3, SL2(3), Sp2(2), Sp2(3)
        solvable = True
    elif fam == "PSL" and ps[1] in (2, 3):
        solvable = True
    else:
        solvable = None
    return GroupMeta(abelian=abelian, simple=simple, solvable=solvable,
                     p_group=p_group)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _rotation(n, offset=0, degree=None):
    degree = degree if degree is not None else n
    img = list(range(degree))
    for i in range(n):
        img[offset + i] = offset + (i + 1) % n
    return tuple(img)


def _build_cyclic(n, descriptor):
    gens = [] if n == 1 else [_rotation(n)]
    return Group.from_permutation_generators(n, gens, descriptor)


def _build_product_cyclic(ns, descriptor):
    degree = sum(ns)
    gens = []
    offset = 0
    for n in ns:
        if n > 1:
            gens.append(_rotation(n, offset, degree))
        offset += n
    return Group.from_permutation_generators(degree, gens, descriptor)


def _build_symmetric(n, descriptor):
    if n == 1:
        gens = []
    elif n == 2:
        gens = [(1, 0)]
    else:
        transposition = (1, 0) + tuple(range(2, n))
        gens = [transposition, _rotation(n)]
    return Group.from_permutation_generators(n, gens, descriptor)


def _build_alternating(n, descriptor):
    if n <= 2:
        return Group.from_permutation_generators(n, [], descriptor)
    three_cycle = (1, 2, 0) + tuple(range(3, n))
    if n == 3:
        gens = [three_cycle]
    elif n % 2 == 1:
        gens = [three_cycle, _rotation(n)]
    else:
        long_cycle = (0,) + tuple(1 + (i + 1) % (n - 1) for i in range(n - 1))
        gens = [three_cycle, long_cycle]
    return Group.from_permutation_generators(n, gens, descriptor)


def _build_dihedral(n, descriptor):
    if n == 1:
        return Group.from_permutation_generators(2, [(1, 0)], descriptor)
    if n == 2:
        return Group.from_permutation_generators(
            4, [(1, 0, 2, 3), (0, 1, 3, 2)], descriptor)
    reflection = tuple((n - i) % n for i in range(n))
    return Group.from_permutation_generators(
        n, [_rotation(n), reflection], descriptor)


def _build_q8(descriptor):
    F3 = field(3)
    return Group.from_matrix_generators(
        F3, 2, [[[0, 2], [1, 0]], [[1, 1], [1, 2]]], descriptor)


def _build_ut3(p, descriptor):
    F = field(p)
    e12 = (1, 1, 0, 0, 1, 0, 0, 0, 1)
    e23 = (1, 0, 0, 0, 1, 1, 0, 0, 1)
    return Group.from_matrix_generators(F, 3, [e12, e23], descriptor)


def _check_cap(desc, order):
    if order > GROUP_SIZE_CAP:
        raise SizeCapError(
            f"{desc}: order {order} exceeds the size cap {GROUP_SIZE_CAP}"
        )


def _enumerate_invertible(fld, d, keep):
    """All invertible d x d matrices over fld passing ``keep``, in
    lexicographic order of flattened entry indices."""
    if fld.q ** (d * d) > _ENUMERATION_CAP:
        raise SizeCapError(
            f"matrix enumeration of size {fld.q ** (d * d)} exceeds "
            f"the cap {_ENUMERATION_CAP}"
        )
    ops = matrix_operations(fld, d)
    det = ops.det
    out = []
    for flat in itertools.product(range(fld.q), repeat=d * d):
        dt = det(flat)
        if dt != 0 and keep(flat, dt):
            out.append(flat)
    return out, ops


def _build_gl(d, q, descriptor):
    p, k = prime_power(q)
    fld = field(p, k)
    mats, _ = _enumerate_invertible(fld, d, lambda m, dt: True)
    return Group.from_matrix_list(fld, d, mats, descriptor)


def _build_sl(d, q, descriptor):
    p, k = prime_power(q)
    fld = field(p, k)
    one = fld.one_index
    mats, _ = _enumerate_invertible(fld, d, lambda m, dt: dt == one)
    return Group.from_matrix_list(fld, d, mats, descriptor)


def _build_sp2(q, descriptor):
    p, k = prime_power(q)
    fld = field(p, k)
    one = fld.one_index
    mats, ops = _enumerate_invertible(fld, 2, lambda m, dt: dt == one)
    # form preservation sanity: A^T J A == J with J = [[0,1],[-1,0]]
    J = (0, one, fld.neg_table()[one], 0)
    mm = ops.mul
    tr = ops.transpose
    for A in mats:
        if mm(mm(tr(A), J), A) != J:
            raise AssertionError(f"{descriptor}: matrix does not preserve the form")
    return Group.from_matrix_list(fld, 2, mats, descriptor)


def _build_unitary(d, q, descriptor):
    """Matrices over GF(q^2) with orthonormal columns for the Hermitian
    form with identity Gram matrix (conjugation x -> x^q)."""
    p, k = prime_power(q)
    ext = field(p, 2 * k)
    add = ext.add_table()
    mul = ext.mul_table()
    conj = [ext.frobenius_index(i, k) for i in range(ext.q)]
    one = ext.one_index

    def herm(u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = add[acc][mul[conj[a]][b]]
        return acc

    vectors = list(itertools.product(range(ext.q), repeat=d))
    unit = [v for v in vectors if herm(v, v) == one]

    mats = []

    def extend(cols):
        if len(cols) == d:
            mats.append(tuple(cols[j][i] for i in range(d) for j in range(d)))
            return
        for v in unit:
            if all(herm(c, v) == 0 for c in cols):
                extend(cols + [v])

    extend([])
    return Group.from_matrix_list(ext, d, mats, descriptor)


def _build_psl2(q, descriptor):
    p, k = prime_power(q)
    fld = field(p, k)
    one = fld.one_index
    mats, ops = _enumerate_invertible(fld, 2, lambda m, dt: dt == one)
    mats = [ops.identity] + [m for m in mats if m != ops.identity]
    mul = fld.mul_table()
    add = fld.add_table()
    inv_t = fld.inv_table()
    points = [(one, x) for x in range(fld.q)] + [(0, one)]
    point_index = {pt: i for i, pt in enumerate(points)}

    def act(A, v):
        a, b, c, d = A
        w0 = add[mul[a][v[0]]][mul[b][v[1]]]
        w1 = add[mul[c][v[0]]][mul[d][v[1]]]
        if w0 != 0:
            return (one, mul[w1][inv_t[w0]])
        return (0, one)

    perms = []
    seen = set()
    for A in mats:
        perm = tuple(point_index[act(A, pt)] for pt in points)
        if perm not in seen:
            seen.add(perm)
            perms.append(perm)
    return Group.from_permutation_list(len(points), perms, descriptor)


_BUILD_CACHE: dict = {}
_BUILD_LOCK = threading.Lock()


def build(desc) -> Group:
    """Construct (or fetch the cached) group for a descriptor."""
    desc = _as_descriptor(desc)
    text = str(desc)
    with _BUILD_LOCK:
        cached = _BUILD_CACHE.get(text)
        if cached is not None:
            return cached
        G = _build_uncached(desc)
        _BUILD_CACHE[text] = G
        return G


def _build_uncached(desc: GroupDescriptor) -> Group:
    fam, ps = desc.family, desc.params
    text = str(desc)
    if fam == "M":
        raise InputError(
            f"{text}: the matrix algebra is a monoid, not a group; it is "
            "only a target for brute-force commuting-pair counts"
        )
    expected = order_formula(desc)
    _check_cap(text, expected)
    if fam == "C":
        G = _build_cyclic(ps[0], text)
    elif fam == "CxC":
        G = _build_product_cyclic(ps, text)
    elif fam == "S":
        G = _build_symmetric(ps[0], text)
    elif fam == "A":
        G = _build_alternating(ps[0], text)
    elif fam == "D":
        G = _build_dihedral(ps[0], text)
    elif fam == "Q8":
        G = _build_q8(text)
    elif fam == "UT":
        G = _build_ut3(ps[1], text)
    elif fam == "GL":
        G = _build_gl(ps[0], ps[1], text)
    elif fam == "SL":
        G = _build_sl(ps[0], ps[1], text)
    elif fam == "Sp":
        G = _build_sp2(ps[1], text)
    elif fam == "U":
        G = _build_unitary(ps[0], ps[1], text)
    elif fam == "PSL":
        G = _build_psl2(ps[1], text)
    else:  # pragma: no cover
        raise InputError(f"unknown family {fam!r}")
    if G.order != expected:
        raise AssertionError(
            f"{text}: constructed order {G.order} != formula {expected}"
        )
    return G


# descriptors of every catalog family instance of order <= 200, used for
# cross-method and bound test grids
SMALL_GROUPS = (
    "C(1)", "C(2)", "C(3)", "C(4)", "C(5)", "C(6)", "C(8)", "C(12)", "C(30)",
    "CxC(2,2)", "CxC(2,4)", "CxC(3,3)", "CxC(2,2,2)", "CxC(6,10)",
    "S(3)", "S(4)", "S(5)",
    "A(3)", "A(4)", "A(5)",
    "D(2)", "D(3)", "D(4)", "D(5)", "D(6)", "D(8)", "D(16)",
    "Q8",
    "UT(3,2)", "UT(3,3)", "UT(3,5)",
    "GL(1,7)", "GL(2,2)", "GL(2,3)",
    "SL(2,2)", "SL(2,3)", "Sp(2,2)", "Sp(2,3)",
    "U(2,2)", "U(2,3)",
    "PSL(2,2)", "PSL(2,3)", "PSL(2,5)",
)
