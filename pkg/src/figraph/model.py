"""Classification graphs: the finite encodings of vertex-quadratic FI-graph families.

A classification graph has three orbit kinds and a closed set of edge labels.
Label names map to the usual ``e_j^(x,y)`` notation as follows:

=================  ===============  =============================
label              notation         endpoints
=================  ===============  =============================
``PairDisjoint``   ``e_1^(2)``      loop on a pair orbit
``PairShare1``     ``e_2^(2)``      loop on a pair orbit
``LinComplete``    ``e_1^(3)``      loop on a linear orbit
``PPShare0``       ``e_1^(2,2)``    pair -- pair
``PPShare1``       ``e_2^(2,2)``    pair -- pair
``PPShare2``       ``e_3^(2,2)``    pair -- pair
``PLShare0``       ``e_1^(2,3)``    pair -- linear
``PLShare1``       ``e_2^(2,3)``    pair -- linear
``LLShare0``       ``e_1^(3,3)``    linear -- linear
``LLShare1``       ``e_2^(3,3)``    linear -- linear
``AllToSingleton`` ``e_1^(x,4)``    any orbit -- singleton
=================  ===============  =============================

Validation rules (the ``rule`` attribute of a :class:`ValidationError`):

1. orbit ids are distinct
2. loops and edges reference declared orbits
3. ordered-pair orbits are not supported
4. singletons carry no loops
5. a label must be admissible for its endpoint kinds
6. no label appears twice on the same loop or endpoint pair
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random as _random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence


class OrbitKind(str, Enum):
    PAIR = "pair"
    LINEAR = "linear"
    SINGLETON = "singleton"


# Kind names accepted by documents but rejected as out of scope.
ORDERED_PAIR_KINDS = frozenset({"ordered_pair", "ordered-pair", "ordered", "orderedpair"})


class EdgeLabel(str, Enum):
    PairDisjoint = "PairDisjoint"
    PairShare1 = "PairShare1"
    LinComplete = "LinComplete"
    PPShare0 = "PPShare0"
    PPShare1 = "PPShare1"
    PPShare2 = "PPShare2"
    PLShare0 = "PLShare0"
    PLShare1 = "PLShare1"
    LLShare0 = "LLShare0"
    LLShare1 = "LLShare1"
    AllToSingleton = "AllToSingleton"

    @property
    def rank(self) -> int:
        return _LABEL_ORDER[self]


_LABEL_ORDER = {label: i for i, label in enumerate(EdgeLabel)}

NOTATION = {
    EdgeLabel.PairDisjoint: "e_1^(2)",
    EdgeLabel.PairShare1: "e_2^(2)",
    EdgeLabel.LinComplete: "e_1^(3)",
    EdgeLabel.PPShare0: "e_1^(2,2)",
    EdgeLabel.PPShare1: "e_2^(2,2)",
    EdgeLabel.PPShare2: "e_3^(2,2)",
    EdgeLabel.PLShare0: "e_1^(2,3)",
    EdgeLabel.PLShare1: "e_2^(2,3)",
    EdgeLabel.LLShare0: "e_1^(3,3)",
    EdgeLabel.LLShare1: "e_2^(3,3)",
    EdgeLabel.AllToSingleton: "e_1^(x,4)",
}

LOOP_LABELS = {
    OrbitKind.PAIR: (EdgeLabel.PairDisjoint, EdgeLabel.PairShare1),
    OrbitKind.LINEAR: (EdgeLabel.LinComplete,),
    OrbitKind.SINGLETON: (),
}


def edge_labels_for(kind_a: OrbitKind, kind_b: OrbitKind) -> tuple[EdgeLabel, ...]:
    """Admissible labels for an edge between two distinct orbits of the given kinds."""
    kinds = {kind_a, kind_b}
    if OrbitKind.SINGLETON in kinds:
        return (EdgeLabel.AllToSingleton,)
    if kinds == {OrbitKind.PAIR}:
        return (EdgeLabel.PPShare0, EdgeLabel.PPShare1, EdgeLabel.PPShare2)
    if kinds == {OrbitKind.LINEAR}:
        return (EdgeLabel.LLShare0, EdgeLabel.LLShare1)
    return (EdgeLabel.PLShare0, EdgeLabel.PLShare1)


class ParseError(ValueError):
    """Malformed document or schema violation."""


class ValidationError(ValueError):
    rule = 0

    def __init__(self, message: str, *, where: str = ""):
        self.where = where
        super().__init__(f"rule {self.rule}: {message}" + (f" [{where}]" if where else ""))


class DuplicateOrbitId(ValidationError):
    rule = 1


class UnknownOrbitRef(ValidationError):
    rule = 2


class OrderedPairUnsupported(ValidationError):
    rule = 3


class LoopOnSingleton(ValidationError):
    rule = 4


class IncompatibleLabel(ValidationError):
    rule = 5


class DuplicateLabel(ValidationError):
    rule = 6


@dataclass(frozen=True)
class Orbit:
    id: str
    kind: OrbitKind


@dataclass(frozen=True)
class Loop:
    orbit: str
    label: EdgeLabel


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    label: EdgeLabel


@dataclass(frozen=True)
class ClassificationGraph:
    """Immutable classification graph.

    Orbits keep their declaration order (it fixes vertex order on expansion).
    Loops and edges are stored sorted, with edge endpoints sorted, so two
    graphs built from the same data in any order compare equal. Duplicates
    are kept so that :func:`validate` can report them.
    """

    orbits: tuple[Orbit, ...] = ()
    loops: tuple[Loop, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        orbits = tuple(Orbit(o.id, OrbitKind(o.kind)) for o in self.orbits)
        loops = tuple(sorted((Loop(l.orbit, EdgeLabel(l.label)) for l in self.loops),
                             key=lambda l: (l.orbit, l.label.rank)))
        edges = []
        for e in self.edges:
            a, b = sorted((e.a, e.b))
            edges.append(Edge(a, b, EdgeLabel(e.label)))
        edges.sort(key=lambda e: (e.a, e.b, e.label.rank))
        object.__setattr__(self, "orbits", orbits)
        object.__setattr__(self, "loops", loops)
        object.__setattr__(self, "edges", tuple(edges))

    @classmethod
    def build(cls, orbits: Iterable[tuple[str, str | OrbitKind]],
              loops: Iterable[tuple[str, str | EdgeLabel]] = (),
              edges: Iterable[tuple[str, str, str | EdgeLabel]] = ()) -> "ClassificationGraph":
        """Construct and validate from plain tuples."""
        c = cls(tuple(Orbit(i, OrbitKind(k)) for i, k in orbits),
                tuple(Loop(o, EdgeLabel(l)) for o, l in loops),
                tuple(Edge(a, b, EdgeLabel(l)) for a, b, l in edges))
        validate(c)
        return c

    def kind_of(self, orbit_id: str) -> OrbitKind:
        for o in self.orbits:
            if o.id == orbit_id:
                return o.kind
        raise UnknownOrbitRef(f"unknown orbit {orbit_id!r}", where=orbit_id)

    def loop_labels(self, orbit_id: str) -> frozenset[EdgeLabel]:
        return frozenset(l.label for l in self.loops if l.orbit == orbit_id)

    def count(self, kind: OrbitKind) -> int:
        return sum(1 for o in self.orbits if o.kind == kind)

    @property
    def is_vertex_linear(self) -> bool:
        return self.count(OrbitKind.PAIR) == 0

    def canonical(self) -> "ClassificationGraph":
        """Copy with orbits sorted by id."""
        return ClassificationGraph(tuple(sorted(self.orbits, key=lambda o: o.id)),
                                   self.loops, self.edges)

    def digest(self) -> str:
        return hashlib.sha256(serialize(self.canonical())).hexdigest()[:16]

    def to_dict(self) -> dict:
        return {
            "orbits": [{"id": o.id, "kind": o.kind.value} for o in self.orbits],
            "loops": [{"orbit": l.orbit, "label": l.label.value} for l in self.loops],
            "edges": [{"a": e.a, "b": e.b, "label": e.label.value} for e in self.edges],
        }


def validate(c: ClassificationGraph) -> None:
    """Raise the first :class:`ValidationError` found, else return ``None``."""
    kinds: dict[str, OrbitKind] = {}
    for o in c.orbits:
        if o.id in kinds:
            raise DuplicateOrbitId(f"orbit id {o.id!r} declared twice", where=o.id)
        kinds[o.id] = o.kind

    seen_loops: set[tuple[str, EdgeLabel]] = set()
    for l in c.loops:
        if l.orbit not in kinds:
            raise UnknownOrbitRef(f"loop references unknown orbit {l.orbit!r}", where=l.orbit)
        kind = kinds[l.orbit]
        if kind == OrbitKind.SINGLETON:
            raise LoopOnSingleton(f"singleton {l.orbit!r} carries loop {l.label.value}",
                                  where=l.orbit)
        if l.label not in LOOP_LABELS[kind]:
            raise IncompatibleLabel(f"{l.label.value} is not a loop label for a {kind.value} orbit",
                                    where=l.orbit)
        if (l.orbit, l.label) in seen_loops:
            raise DuplicateLabel(f"loop {l.label.value} repeated on {l.orbit!r}", where=l.orbit)
        seen_loops.add((l.orbit, l.label))

    seen_edges: set[tuple[str, str, EdgeLabel]] = set()
    for e in c.edges:
        where = f"{e.a}--{e.b}"
        for end in (e.a, e.b):
            if end not in kinds:
                raise UnknownOrbitRef(f"edge references unknown orbit {end!r}", where=where)
        if e.a == e.b:
            raise IncompatibleLabel("edge joins an orbit to itself; use a loop", where=where)
        if e.label not in edge_labels_for(kinds[e.a], kinds[e.b]):
            raise IncompatibleLabel(
                f"{e.label.value} cannot join {kinds[e.a].value} and {kinds[e.b].value} orbits",
                where=where)
        key = (e.a, e.b, e.label)
        if key in seen_edges:
            raise DuplicateLabel(f"edge label {e.label.value} repeated", where=where)
        seen_edges.add(key)


def is_valid(c: ClassificationGraph) -> bool:
    try:
        validate(c)
    except ValidationError:
        return False
    return True


# --- JSON documents -------------------------------------------------------

def _require(obj, key, typ, ctx):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{ctx}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, typ):
        raise ParseError(f"{ctx}: field {key!r} must be {typ.__name__}")
    return value


def from_dict(doc: dict) -> ClassificationGraph:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(doc) - {"orbits", "loops", "edges"}
    if unknown:
        raise ParseError(f"unknown top-level fields: {sorted(unknown)}")
    orbits = []
    for i, o in enumerate(_require(doc, "orbits", list, "document")):
        ctx = f"orbits[{i}]"
        oid = _require(o, "id", str, ctx)
        kind = _require(o, "kind", str, ctx)
        if kind.lower() in ORDERED_PAIR_KINDS:
            raise OrderedPairUnsupported("ordered-pair orbits are not supported", where=oid)
        try:
            orbits.append(Orbit(oid, OrbitKind(kind)))
        except ValueError:
            raise ParseError(f"{ctx}: unknown orbit kind {kind!r}") from None
    loops = []
    for i, l in enumerate(doc.get("loops", [])):
        ctx = f"loops[{i}]"
        try:
            loops.append(Loop(_require(l, "orbit", str, ctx), EdgeLabel(_require(l, "label", str, ctx))))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"{ctx}: unknown label {l.get('label')!r}") from None
    edges = []
    for i, e in enumerate(doc.get("edges", [])):
        ctx = f"edges[{i}]"
        try:
            edges.append(Edge(_require(e, "a", str, ctx), _require(e, "b", str, ctx),
                              EdgeLabel(_require(e, "label", str, ctx))))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"{ctx}: unknown label {e.get('label')!r}") from None
    c = ClassificationGraph(tuple(orbits), tuple(loops), tuple(edges))
    validate(c)
    return c


def parse(text: bytes | str) -> ClassificationGraph:
    """Parse a JSON classification-graph document and validate it."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    return from_dict(doc)


def serialize(c: ClassificationGraph) -> bytes:
    return (json.dumps(c.to_dict(), indent=2, sort_keys=True) + "\n").encode()


def load(path) -> ClassificationGraph:
    with open(path, "rb") as fh:
        return parse(fh.read())


# --- named families -------------------------------------------------------

def _norm_name(name: str) -> str:
    return name.replace("_", "").replace("-", "").lower()


def _complete():
    return ClassificationGraph.build([("L", "linear")], [("L", "LinComplete")])


def _kneser2():
    return ClassificationGraph.build([("P", "pair")], [("P", "PairDisjoint")])


def _johnson2():
    return ClassificationGraph.build([("P", "pair")], [("P", "PairShare1")])


def _complete_bipartite():
    return ClassificationGraph.build([("A", "linear"), ("B", "linear")], [],
                                     [("A", "B", "LLShare0"), ("A", "B", "LLShare1")])


def _complete_pairs():
    orbits = [("P1", "pair"), ("P2", "pair"), ("S", "singleton")]
    loops = [(p, l) for p in ("P1", "P2") for l in ("PairDisjoint", "PairShare1")]
    edges = [("P1", "P2", l) for l in ("PPShare0", "PPShare1", "PPShare2")]
    edges += [("P1", "S", "AllToSingleton"), ("P2", "S", "AllToSingleton")]
    return ClassificationGraph.build(orbits, loops, edges)


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def _singletons_vs_orbit(k: int):
    _check_k(k)
    orbits = [("L", "linear")] + [(f"S{i}", "singleton") for i in range(k)]
    edges = [("L", f"S{i}", "AllToSingleton") for i in range(k)]
    return ClassificationGraph.build(orbits, [], edges)


def _copies_of_complete(k: int):
    _check_k(k)
    ids = [f"L{i}" for i in range(k)]
    return ClassificationGraph.build([(i, "linear") for i in ids],
                                     [(i, "LinComplete") for i in ids],
                                     [(a, b, "LLShare1") for a, b in itertools.combinations(ids, 2)])


def _copies_of_kneser2(k: int):
    _check_k(k)
    ids = [f"P{i}" for i in range(k)]
    edges = [(a, b, l) for a, b in itertools.combinations(ids, 2) for l in ("PPShare1", "PPShare2")]
    return ClassificationGraph.build([(i, "pair") for i in ids],
                                     [(i, "PairDisjoint") for i in ids], edges)


def _johnson_union_shifted():
    return ClassificationGraph.build(
        [("P1", "pair"), ("P2", "pair"), ("L", "linear")],
        [("P1", "PairShare1"), ("P2", "PairShare1"), ("L", "LinComplete")],
        [("P2", "L", "PLShare1")])


def _disjoint_union(k: int, sub: ClassificationGraph | str):
    _check_k(k)
    if isinstance(sub, str):
        sub = family(sub)
    orbits, loops, edges = [], [], []
    for i in range(k):
        rename = {o.id: f"{o.id}_{i}" for o in sub.orbits}
        orbits += [(rename[o.id], o.kind) for o in sub.orbits]
        loops += [(rename[l.orbit], l.label) for l in sub.loops]
        edges += [(rename[e.a], rename[e.b], e.label) for e in sub.edges]
    return ClassificationGraph.build(orbits, loops, edges)


_FAMILIES = {
    "complete": _complete,
    "kneser2": _kneser2,
    "johnson2": _johnson2,
    "completebipartite": _complete_bipartite,
    "completepairs": _complete_pairs,
    "disjointunion": _disjoint_union,
    "singletonsvsorbit": _singletons_vs_orbit,
    "copiesofcomplete": _copies_of_complete,
    "copiesofkneser2": _copies_of_kneser2,
    "johnsonunionshifted": _johnson_union_shifted,
}

FAMILY_NAMES = tuple(sorted(_FAMILIES))


def family(name: str, *args, **params) -> ClassificationGraph:
    """Classification graph of a named family.

    Names are matched case-insensitively ignoring ``_`` and ``-``, so
    ``"CopiesOfKneser2"`` and ``"copies_of_kneser2"`` are the same family.
    Families taking ``k`` are ``singletons_vs_orbit``, ``copies_of_complete``,
    ``copies_of_kneser2`` and ``disjoint_union`` (which also takes ``sub``).
    """
    try:
        builder = _FAMILIES[_norm_name(name)]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}") from None
    return builder(*args, **params)


# --- predicates used by the trend checks ----------------------------------

def has_quadratic_independent_orbit(c: ClassificationGraph) -> bool:
    """True iff some pair orbit carries no loop (cross edges are allowed)."""
    return any(o.kind == OrbitKind.PAIR and not c.loop_labels(o.id) for o in c.orbits)


def has_johnson_orbit(c: ClassificationGraph) -> bool:
    """True iff some pair orbit's loop set is exactly ``{PairShare1}``."""
    return any(o.kind == OrbitKind.PAIR and c.loop_labels(o.id) == {EdgeLabel.PairShare1}
               for o in c.orbits)


def has_isolated_johnson_orbit(c: ClassificationGraph) -> bool:
    """Stricter reading: a Johnson-like pair orbit that also has no cross edges."""
    touched = {e.a for e in c.edges} | {e.b for e in c.edges}
    return any(o.kind == OrbitKind.PAIR and o.id not in touched
               and c.loop_labels(o.id) == {EdgeLabel.PairShare1} for o in c.orbits)


# --- random generation ----------------------------------------------------

CountSpec = int | tuple[int, int]


@dataclass(frozen=True)
class RandomGenParams:
    """Parameters for :func:`random_classification_graph`.

    Counts are either exact or inclusive ``(lo, hi)`` ranges drawn uniformly.
    Every admissible loop and edge label is included independently with
    probability ``p``.
    """

    pair: CountSpec = (0, 2)
    linear: CountSpec = (0, 1)
    singleton: CountSpec = (0, 1)
    p: float = 0.5
    seed: int = 0

    def __post_init__(self):
        for name in ("pair", "linear", "singleton"):
            lo, hi = _count_range(getattr(self, name))
            if lo < 0 or hi < lo:
                raise ValueError(f"invalid {name} count {getattr(self, name)!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")

    def to_dict(self) -> dict:
        def enc(v):
            return list(v) if isinstance(v, tuple) else v
        return {"pair": enc(self.pair), "linear": enc(self.linear),
                "singleton": enc(self.singleton), "p": self.p, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "RandomGenParams":
        def dec(v):
            return tuple(v) if isinstance(v, list) else v
        return cls(pair=dec(d.get("pair", (0, 2))), linear=dec(d.get("linear", (0, 1))),
                   singleton=dec(d.get("singleton", (0, 1))), p=float(d.get("p", 0.5)),
                   seed=int(d.get("seed", 0)))


def _count_range(spec: CountSpec) -> tuple[int, int]:
    if isinstance(spec, int):
        return spec, spec
    lo, hi = spec
    return int(lo), int(hi)


def admissible_labels(orbits: Sequence[Orbit]) -> Iterator[tuple[str, str | None, EdgeLabel]]:
    """Every loop ``(id, None, label)`` and edge ``(a, b, label)`` admissible on ``orbits``."""
    for o in orbits:
        for label in LOOP_LABELS[o.kind]:
            yield o.id, None, label
    for x, y in itertools.combinations(orbits, 2):
        for label in edge_labels_for(x.kind, y.kind):
            yield x.id, y.id, label


def random_classification_graph(params: RandomGenParams) -> ClassificationGraph:
    rng = _random.Random(params.seed)
    counts = {}
    for kind, spec in ((OrbitKind.PAIR, params.pair), (OrbitKind.LINEAR, params.linear),
                       (OrbitKind.SINGLETON, params.singleton)):
        lo, hi = _count_range(spec)
        counts[kind] = rng.randint(lo, hi)
    prefix = {OrbitKind.PAIR: "P", OrbitKind.LINEAR: "L", OrbitKind.SINGLETON: "S"}
    orbits = [Orbit(f"{prefix[k]}{i}", k) for k in OrbitKind for i in range(counts[k])]
    loops, edges = [], []
    for a, b, label in admissible_labels(orbits):
        if rng.random() < params.p:
            if b is None:
                loops.append(Loop(a, label))
            else:
                edges.append(Edge(a, b, label))
    c = ClassificationGraph(tuple(orbits), tuple(loops), tuple(edges))
    validate(c)
    return c


# The module-level name the rest of the package documents.
random = random_classification_graph
