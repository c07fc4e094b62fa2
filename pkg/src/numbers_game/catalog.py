"""Named GCM graphs: the finite-type Dynkin diagrams and the inadmissible families.

Edge tuples are ``(i, j, p, q)`` meaning M_ij = -p and M_ji = -q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import GcmGraph


class RankOutOfRange(ValueError):
    pass


class BadParameters(ValueError):
    pass


class UnknownFamily(ValueError):
    pass


class NotConnected(ValueError):
    pass


# FINITE TYPE
# -----------

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 6, "F": 4, "G": 2}
_MAX_RANK = {"E": 8, "F": 4, "G": 2}


@dataclass(frozen=True)
class DynkinType:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in _MIN_RANK:
            raise UnknownFamily(f"no Dynkin family {self.family!r}")
        lo, hi = _MIN_RANK[self.family], _MAX_RANK.get(self.family)
        if self.n < lo or (hi is not None and self.n > hi):
            raise RankOutOfRange(f"{self.family}{self.n} is not a finite-type diagram")

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        m = re.fullmatch(r"([A-G])(\d+)", text.strip())
        if not m:
            raise UnknownFamily(f"cannot parse Dynkin label {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.n}"


def _path(n: int) -> list[tuple[int, int, int, int]]:
    return [(i, i + 1, 1, 1) for i in range(1, n)]


def _finite_edges(t: DynkinType) -> list[tuple[int, int, int, int]]:
    n = t.n
    if t.family == "A":
        return _path(n)
    if t.family == "B":
        if n == 2:
            return [(1, 2, 1, 2)]
        return _path(n - 1) + [(n - 1, n, 2, 1)]
    if t.family == "C":
        return _path(n - 1) + [(n - 1, n, 1, 2)]
    if t.family == "D":
        return _path(n - 2) + [(n - 2, n - 1, 1, 1), (n - 2, n, 1, 1)]
    if t.family == "E":
        return [(1, 3, 1, 1), (2, 4, 1, 1)] + [(i, i + 1, 1, 1) for i in range(3, n)]
    if t.family == "F":
        return [(1, 2, 1, 1), (2, 3, 2, 1), (3, 4, 1, 1)]
    return [(1, 2, 1, 3)]


def build_finite(t: DynkinType) -> GcmGraph:
    return GcmGraph.from_edges(t.n, _finite_edges(t))


def finite_types(max_rank: int) -> list[DynkinType]:
    """Every finite type of rank at most ``max_rank``, in a fixed order."""
    out = []
    for fam in "ABCDEFG":
        lo, hi = _MIN_RANK[fam], _MAX_RANK.get(fam, max_rank)
        out.extend(DynkinType(fam, n) for n in range(lo, min(hi, max_rank) + 1))
    return out


# INADMISSIBLE FAMILIES
# ---------------------

_RANKED = {  # tag -> minimum n
    "Atilde": 3, "Btilde-fork": 4, "Btilde-path": 3, "Ctilde-a": 3,
    "Ctilde-b": 3, "Ctilde-fork": 4, "Dtilde": 6,
}
_FIXED = {  # tag -> node count
    "Dtilde-star": 5, "Etilde-7node": 7, "Etilde-8node": 8, "Etilde-9node": 9,
    "Ftilde-a": 5, "Ftilde-b": 5, "Gtilde1": 3, "Gtilde2": 3, "Gtilde3": 3,
    "Gtilde4": 3, "Gtilde5": 3, "Gtilde6": 3, "Sq1": 4, "Sq2": 4, "Sq3": 4,
    "Pent1": 5,
}
_TRIANGLE_MIN_PRODUCT = {"Tri1": 1, "Tri2": 2, "Tri3": 3}
_PARAM_NAMES = ("p1", "q1", "p2", "q2")


@dataclass(frozen=True)
class InadmissibleFamilyId:
    """A family tag plus its rank or triangle amplitudes.

    String forms: ``Atilde:5``, ``Gtilde1``, ``Tri2:p1=1,q1=2,p2=2,q2=1``.
    """
    tag: str
    n: Optional[int] = None
    params: tuple[int, ...] = ()

    def __post_init__(self):
        tag = self.tag
        if tag in _RANKED:
            if self.n is None or self.n < _RANKED[tag] or self.params:
                raise BadParameters(f"{tag} needs a rank n >= {_RANKED[tag]}")
        elif tag in _FIXED:
            if self.n not in (None, _FIXED[tag]) or self.params:
                raise BadParameters(f"{tag} takes no parameters")
            object.__setattr__(self, "n", _FIXED[tag])
        elif tag in _TRIANGLE_MIN_PRODUCT:
            if len(self.params) != 4 or any(type(x) is not int or x < 1 for x in self.params):
                raise BadParameters(f"{tag} needs four positive integer amplitudes")
            p1, q1, p2, q2 = self.params
            lo = _TRIANGLE_MIN_PRODUCT[tag]
            if p1 * q1 < lo or p2 * q2 < lo:
                raise BadParameters(f"{tag} needs p1*q1 >= {lo} and p2*q2 >= {lo}")
            object.__setattr__(self, "n", 3)
        else:
            raise UnknownFamily(f"not an inadmissible-catalog family: {tag!r}")

    @classmethod
    def parse(cls, text: str) -> "InadmissibleFamilyId":
        text = text.strip()
        tag, _, rest = text.partition(":")
        if tag in _RANKED:
            if not rest.isdigit():
                raise BadParameters(f"{tag} needs a rank, e.g. {tag}:{_RANKED[tag]}")
            return cls(tag, int(rest))
        if tag in _FIXED:
            if rest and rest != str(_FIXED[tag]):
                raise BadParameters(f"{tag} takes no parameters")
            return cls(tag)
        if tag in _TRIANGLE_MIN_PRODUCT:
            vals = {}
            for part in rest.split(",") if rest else []:
                key, _, val = part.partition("=")
                if key.strip() not in _PARAM_NAMES or not val.strip().isdigit():
                    raise BadParameters(f"bad triangle parameter {part!r}")
                vals[key.strip()] = int(val)
            if set(vals) != set(_PARAM_NAMES):
                raise BadParameters("triangle ids need p1, q1, p2 and q2")
            return cls(tag, params=tuple(vals[k] for k in _PARAM_NAMES))
        raise UnknownFamily(f"not an inadmissible-catalog family: {text!r}")

    @property
    def is_triangle(self) -> bool:
        return self.tag in _TRIANGLE_MIN_PRODUCT

    def __str__(self) -> str:
        if self.tag in _RANKED:
            return f"{self.tag}:{self.n}"
        if self.is_triangle:
            return self.tag + ":" + ",".join(f"{k}={v}" for k, v in zip(_PARAM_NAMES, self.params))
        return self.tag


def family_tags() -> list[str]:
    return list(_RANKED) + list(_FIXED) + list(_TRIANGLE_MIN_PRODUCT)


def _fork_path(n: int) -> list[tuple[int, int, int, int]]:
    """gamma_1, gamma_2 both joined to gamma_3, then the path gamma_3 .. gamma_n."""
    return [(1, 3, 1, 1), (2, 3, 1, 1)] + [(i, i + 1, 1, 1) for i in range(3, n)]


def _set(edges, i, j, p, q):
    return [e for e in edges if {e[0], e[1]} != {i, j}] + [(i, j, p, q)]


# Amplitudes of multiple edges, read off by requiring every divergence
# certificate of the family to verify.  (i, j, p, q): M_ij = -p, M_ji = -q.
def _inadmissible_edges(fid: InadmissibleFamilyId) -> list[tuple[int, int, int, int]]:
    tag, n = fid.tag, fid.n
    if tag == "Atilde":
        return _path(n) + [(n, 1, 1, 1)]
    if tag == "Btilde-fork":
        return _set(_fork_path(n), n - 1, n, 2, 1)
    if tag == "Ctilde-fork":
        return _set(_fork_path(n), n - 1, n, 1, 2)
    if tag in ("Btilde-path", "Ctilde-a", "Ctilde-b"):
        left, right = {"Btilde-path": ((1, 2), (2, 1)),
                       "Ctilde-a": ((2, 1), (1, 2)),
                       "Ctilde-b": ((1, 2), (1, 2))}[tag]
        edges = _set(_path(n), 1, 2, *left)
        return _set(edges, n - 1, n, *right)
    if tag == "Dtilde-star":
        return [(1, 3, 1, 1), (2, 3, 1, 1), (3, 4, 1, 1), (3, 5, 1, 1)]
    if tag == "Dtilde":
        return _fork_path(n - 2) + [(n - 2, n - 1, 1, 1), (n - 2, n, 1, 1)]
    if tag == "Etilde-7node":
        return [(1, 4, 1, 1), (4, 5, 1, 1), (5, 6, 1, 1), (6, 7, 1, 1), (3, 5, 1, 1), (2, 3, 1, 1)]
    if tag == "Etilde-8node":
        return [(1, 3, 1, 1)] + [(i, i + 1, 1, 1) for i in range(3, 8)] + [(2, 5, 1, 1)]
    if tag == "Etilde-9node":
        return [(1, 3, 1, 1)] + [(i, i + 1, 1, 1) for i in range(3, 9)] + [(2, 4, 1, 1)]
    if tag == "Ftilde-a":
        return _set(_path(5), 2, 3, 2, 1)
    if tag == "Ftilde-b":
        return _set(_path(5), 2, 3, 1, 2)
    if tag.startswith("Gtilde"):
        second = {"Gtilde1": (1, 1), "Gtilde2": (1, 2), "Gtilde3": (1, 3),
                  "Gtilde4": (3, 1), "Gtilde5": (2, 1), "Gtilde6": (1, 1)}[tag]
        first = (3, 1) if tag == "Gtilde6" else (1, 3)
        return [(1, 2, *first), (2, 3, *second)]
    if tag in ("Sq1", "Sq2", "Sq3"):
        edges = _set(_path(4) + [(4, 1, 1, 1)], 1, 2, 2, 1)
        if tag == "Sq2":
            edges = _set(edges, 3, 4, 1, 2)
        elif tag == "Sq3":
            edges = _set(edges, 3, 4, 2, 1)
        return edges
    if tag == "Pent1":
        return _set(_path(5) + [(5, 1, 1, 1)], 1, 2, 2, 1)
    if fid.is_triangle:
        p1, q1, p2, q2 = fid.params
        m = int(tag[-1])
        # gamma_1 = a (upper right), gamma_2 = b (lower right), gamma_3 = c (left)
        return [(3, 1, q1, p1), (3, 2, q2, p2), (1, 2, m, 1)]
    raise UnknownFamily(tag)


def build_inadmissible(fid: InadmissibleFamilyId | str) -> GcmGraph:
    if isinstance(fid, str):
        fid = InadmissibleFamilyId.parse(fid)
    return GcmGraph.from_edges(fid.n, _inadmissible_edges(fid))


def minimal_instances() -> list[InadmissibleFamilyId]:
    """One instance of every family at its smallest size."""
    out = [InadmissibleFamilyId(t, r) for t, r in _RANKED.items()]
    out += [InadmissibleFamilyId(t) for t in _FIXED]
    out += [InadmissibleFamilyId(t, params=(3, 1, 3, 1) if t == "Tri3" else (2, 1, 2, 1) if t == "Tri2"
                                 else (1, 1, 1, 1)) for t in _TRIANGLE_MIN_PRODUCT]
    return out


def triangle_grid(tag: str, bound: int = 3) -> list[InadmissibleFamilyId]:
    lo = _TRIANGLE_MIN_PRODUCT[tag]
    pairs = [(p, q) for p in range(1, bound + 1) for q in range(1, bound + 1) if p * q >= lo]
    return [InadmissibleFamilyId(tag, params=(p1, q1, p2, q2)) for p1, q1 in pairs for p2, q2 in pairs]


def parse_catalog_name(name: str) -> GcmGraph:
    """Finite-type labels ("B3") or inadmissible ids ("Atilde:5")."""
    if re.fullmatch(r"[A-G]\d+", name.strip()):
        return build_finite(DynkinType.parse(name))
    return build_inadmissible(InadmissibleFamilyId.parse(name))


# ISOMORPHISM
# -----------

@dataclass(frozen=True)
class NodeRelabeling:
    """sigma(i) = mapping[i-1]."""
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise ValueError("not a bijection on 1..n")

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def inverse(self) -> "NodeRelabeling":
        inv = [0] * len(self.mapping)
        for i, s in enumerate(self.mapping, start=1):
            inv[s - 1] = i
        return NodeRelabeling(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(s == i for i, s in enumerate(self.mapping, start=1))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.mapping)) + ")"


def _signature(m, i: int):
    n = len(m)
    return tuple(sorted((m[i][j], m[j][i]) for j in range(n) if j != i and m[i][j]))


def isomorphisms(g1: GcmGraph, g2: GcmGraph) -> Iterator[NodeRelabeling]:
    """Every sigma with M1[i][j] == M2[sigma(i)][sigma(j)], in lexicographic order."""
    if g1.n != g2.n:
        return
    m1, m2 = g1.matrix.entries, g2.matrix.entries
    n = g1.n
    sig1 = [_signature(m1, i) for i in range(n)]
    sig2 = [_signature(m2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return
    sigma = [-1] * n
    used = [False] * n

    def extend(i: int):
        if i == n:
            yield NodeRelabeling(tuple(s + 1 for s in sigma))
            return
        for c in range(n):
            if used[c] or sig2[c] != sig1[i]:
                continue
            if all(m1[i][k] == m2[c][sigma[k]] and m1[k][i] == m2[sigma[k]][c] for k in range(i)):
                sigma[i], used[c] = c, True
                yield from extend(i + 1)
                used[c] = False
        sigma[i] = -1

    yield from extend(0)


def graphs_isomorphic(g1: GcmGraph, g2: GcmGraph) -> Optional[NodeRelabeling]:
    """Lexicographically least sigma with M1[i][j] == M2[sigma(i)][sigma(j)], or None."""
    return next(isomorphisms(g1, g2), None)


def classify_finite(g: GcmGraph) -> Optional[tuple[DynkinType, NodeRelabeling]]:
    if not g.connected:
        raise NotConnected("classification needs a connected graph")
    n = g.n
    for fam in "ABCDEFG":
        try:
            t = DynkinType(fam, n)
        except RankOutOfRange:
            continue
        sigma = graphs_isomorphic(g, build_finite(t))
        if sigma is not None:
            return t, sigma
    return None
