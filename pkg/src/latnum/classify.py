"""Unimodular normal forms and exhaustive search over symmetric lattice polytopes.

Origin-symmetric lattice polytopes are classified up to GL_n(Z).  The
normal form fixes an ordered basis of vertices chosen by unimodular
invariants, maps it to Hermite normal form and sorts the transformed vertex
matrix; minimizing over all invariant-equivalent bases makes the result
independent of coordinates.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterator

from .exact import bareiss_det, fraction_str, hnf
from .lattice import count
from .polytope import VPolytope, hull, is_centrally_symmetric, polar, volume
from . import bodies

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CanonicalForm:
    dim: int
    matrix: tuple[tuple[int, ...], ...]
    hash: str

    @classmethod
    def from_matrix(cls, dim: int, matrix) -> "CanonicalForm":
        matrix = tuple(tuple(int(x) for x in r) for r in matrix)
        digest = hashlib.sha256(json.dumps([dim, matrix]).encode()).hexdigest()[:16]
        return cls(dim, matrix, digest)


def _check_symmetric_lattice(p: VPolytope):
    if not p.is_lattice():
        raise ValueError("canonical forms are defined for lattice polytopes")
    if not p.is_full_dimensional():
        raise ValueError("canonical forms need a full-dimensional polytope")
    if not is_centrally_symmetric(p):
        raise ValueError("canonical forms are defined for origin-symmetric polytopes")


def _vertex_keys(p: VPolytope) -> list[tuple[int, ...]]:
    """Sorted lattice distances from each vertex to every facet (GL_n(Z)-invariant)."""
    h = p._hrep
    keys = []
    for v in p.vertices:
        keys.append(tuple(sorted(int(b - sum(a * x for a, x in zip(nrm, v))) for nrm, b in zip(h.normals, h.offsets))))
    return keys


def _column_hermite_transform(m: list[list[int]]) -> list[list[int]]:
    """Unimodular U with ``m @ U`` in column Hermite form (m nonsingular)."""
    mt = [list(col) for col in zip(*m)]
    _, w = hnf(mt)
    return [list(col) for col in zip(*w.entries)]


def canonical_form(p: VPolytope) -> CanonicalForm:
    """Normal form of an origin-symmetric lattice polytope under GL_n(Z)."""
    _check_symmetric_lattice(p)
    n = p.ambient_dim
    verts = [tuple(int(x) for x in v) for v in p.vertices]
    keys = _vertex_keys(p)
    # bases of minimal |det|, then lexicographically least key sequence
    best_det = None
    bases = []
    for idx in combinations(range(len(verts)), n):
        d = abs(bareiss_det([verts[i] for i in idx]))
        if d == 0:
            continue
        if best_det is None or d < best_det:
            best_det, bases = d, [idx]
        elif d == best_det:
            bases.append(idx)
    best_keys = None
    cands = []
    for idx in bases:
        for order in permutations(idx):
            ks = tuple(keys[i] for i in order)
            if best_keys is None or ks < best_keys:
                best_keys, cands = ks, [order]
            elif ks == best_keys:
                cands.append(order)
    best = None
    for order in cands:
        u = _column_hermite_transform([list(verts[i]) for i in order])
        image = tuple(sorted(tuple(sum(v[i] * u[i][j] for i in range(n)) for j in range(n)) for v in verts))
        if best is None or image < best:
            best = image
    return CanonicalForm.from_matrix(n, best)


def gs_product(p: VPolytope) -> Fraction:
    """``#(p cap Z^n) * vol(p*)``."""
    return count(p).total * volume(polar(p))


# --- names for well-known classes ---------------------------------------------

def _known_forms() -> dict[str, str]:
    out = {}
    for name in ("hexagon", "cube:2", "diamond:2", "cube:3", "diamond:3"):
        out[canonical_form(bodies.named(name)).hash] = name
    return out


_KNOWN: dict[str, str] | None = None


def class_name(form: CanonicalForm) -> str | None:
    """``"hexagon"``, ``"square"``, ``"diamond"``, ``"cube:3"``... when recognized."""
    global _KNOWN
    if _KNOWN is None:
        _KNOWN = _known_forms()
    name = _KNOWN.get(form.hash)
    return {"cube:2": "square", "diamond:2": "diamond"}.get(name, name)


# --- enumeration ------------------------------------------------------------------

@dataclass(frozen=True)
class ClassRecord:
    form: CanonicalForm
    representative: VPolytope
    lattice_points: int
    interior_points: int


def symmetric_pairs(dim: int, bound: int) -> list[tuple[int, ...]]:
    """One point from each pair {v, -v} of nonzero points in ``[-B, B]^dim``."""
    out = []
    for v in product(range(-bound, bound + 1), repeat=dim):
        nz = next((x for x in v if x), 0)
        if nz > 0:
            out.append(v)
    return out


def _cost_guard(dim: int, bound: int):
    if dim not in (2, 3):
        raise ValueError("exhaustive search is implemented for dimensions 2 and 3")
    if bound < 1 or (dim == 3 and bound > 3) or (dim == 2 and bound > 5):
        raise ValueError(f"coordinate bound {bound} exceeds the cost guard for dimension {dim}")


def _expand(pairs, subset) -> list[tuple[int, ...]]:
    pts = []
    for i in subset:
        v = pairs[i]
        pts.append(v)
        pts.append(tuple(-x for x in v))
    return pts


def _in_convex_position(pairs, subset) -> VPolytope | None:
    p = hull(_expand(pairs, subset))
    return p if len(p.vertices) == 2 * len(subset) else None


@dataclass
class SearchCheckpoint:
    """Resumable state of the level-by-level search.

    ``frontier`` holds the convex-position pair subsets of size ``level``
    and ``cursor`` the number of them already expanded.
    """

    dim: int
    bound: int
    level: int = 1
    cursor: int = 0
    frontier: list[tuple[int, ...]] = field(default_factory=list)
    next_frontier: list[tuple[int, ...]] = field(default_factory=list)
    classes: dict[str, dict] = field(default_factory=dict)
    seen: set[str] = field(default_factory=set)
    skipped_no_interior_origin: int = 0
    processed: int = 0
    done: bool = False
    schema: int = SCHEMA_VERSION

    @classmethod
    def fresh(cls, dim: int, bound: int) -> "SearchCheckpoint":
        _cost_guard(dim, bound)
        pairs = symmetric_pairs(dim, bound)
        return cls(dim, bound, frontier=[(i,) for i in range(len(pairs))])

    def payload(self) -> dict:
        return {
            "schema": self.schema,
            "dim": self.dim,
            "bound": self.bound,
            "level": self.level,
            "cursor": self.cursor,
            "frontier": [list(s) for s in self.frontier],
            "next_frontier": [list(s) for s in self.next_frontier],
            "classes": {h: self.classes[h] for h in sorted(self.classes)},
            "seen": sorted(self.seen),
            "skipped_no_interior_origin": self.skipped_no_interior_origin,
            "processed": self.processed,
            "done": self.done,
        }

    def dumps(self) -> str:
        body = self.payload()
        digest = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
        return json.dumps({"digest": digest, "state": body}, sort_keys=True, indent=1) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SearchCheckpoint":
        doc = json.loads(text)
        body = doc["state"]
        if body.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"checkpoint schema {body.get('schema')} != {SCHEMA_VERSION}")
        digest = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
        if digest != doc.get("digest"):
            raise ValueError("checkpoint digest mismatch (corrupt or edited file)")
        return cls(body["dim"], body["bound"], body["level"], body["cursor"],
                   [tuple(s) for s in body["frontier"]], [tuple(s) for s in body["next_frontier"]],
                   dict(body["classes"]), set(body["seen"]), body["skipped_no_interior_origin"],
                   body["processed"], body["done"])


def save_checkpoint(state: SearchCheckpoint, path) -> None:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(state.dumps())
    os.replace(tmp, path)


def load_checkpoint(path) -> SearchCheckpoint:
    return SearchCheckpoint.loads(Path(path).read_text())


def _record(state: SearchCheckpoint, p: VPolytope, with_value: bool):
    form = canonical_form(p)
    if form.hash in state.seen:
        return
    state.seen.add(form.hash)
    c = count(p)
    entry = {"matrix": [list(r) for r in form.matrix],
             "representative": [[int(x) for x in v] for v in p.vertices],
             "total": c.total, "interior": c.interior}
    if with_value:
        entry["value"] = fraction_str(c.total * volume(polar(p)))
    state.classes[form.hash] = entry


def advance(state: SearchCheckpoint, max_steps: int | None = None, with_value: bool = True) -> SearchCheckpoint:
    """Expand up to ``max_steps`` frontier subsets (all if None); mutates ``state``."""
    pairs = symmetric_pairs(state.dim, state.bound)
    steps = 0
    while not state.done:
        if state.cursor >= len(state.frontier):
            if not state.next_frontier:
                state.done = True
                break
            state.level += 1
            state.frontier, state.next_frontier, state.cursor = state.next_frontier, [], 0
            continue
        if max_steps is not None and steps >= max_steps:
            break
        subset = tuple(state.frontier[state.cursor])
        p = _in_convex_position(pairs, subset)
        if p is not None:
            if p.is_full_dimensional():
                # origin-symmetric and full-dimensional, so the origin is interior
                _record(state, p, with_value)
            else:
                state.skipped_no_interior_origin += 1
            for j in range(subset[-1] + 1, len(pairs)):
                state.next_frontier.append(subset + (j,))
        state.cursor += 1
        state.processed += 1
        steps += 1
    return state


def _class_records(state: SearchCheckpoint) -> list[ClassRecord]:
    out = []
    for h in sorted(state.classes):
        e = state.classes[h]
        form = CanonicalForm(state.dim, tuple(tuple(r) for r in e["matrix"]), h)
        out.append(ClassRecord(form, VPolytope(e["representative"]), e["total"], e["interior"]))
    return out


def enumerate_cs_polytopes(dim: int, bound: int, interior_filter: int | None = None) -> Iterator[ClassRecord]:
    """Unimodular classes of symmetric lattice polytopes with vertices in ``[-B, B]^dim``.

    Completeness is relative to the box: a class is found when some
    representative has all vertices inside it.
    """
    state = advance(SearchCheckpoint.fresh(dim, bound), with_value=False)
    return (rec for rec in _class_records(state)
            if interior_filter is None or rec.interior_points == interior_filter)


@dataclass(frozen=True)
class RankedClass:
    form: CanonicalForm
    value: Fraction
    representative: VPolytope
    name: str | None


@dataclass(frozen=True)
class SearchResult:
    dim: int
    bound: int
    ranking: list[RankedClass]
    skipped_no_interior_origin: int
    complete: bool
    processed: int


def maximize_gs_product(dim: int, bound: int, checkpoint: SearchCheckpoint | None = None,
                        checkpoint_path=None, max_steps: int | None = None,
                        save_every: int = 500) -> SearchResult:
    """Rank every class in the box by ``#(K cap Z^n) vol(K*)``, largest first.

    ``checkpoint`` resumes a previous state; with ``checkpoint_path`` the
    state is saved every ``save_every`` steps and at the end.  ``max_steps``
    stops early (the result is then marked incomplete).
    """
    state = checkpoint or SearchCheckpoint.fresh(dim, bound)
    if (state.dim, state.bound) != (dim, bound):
        raise ValueError("checkpoint belongs to a different search")
    budget = max_steps
    while not state.done and (budget is None or budget > 0):
        chunk = save_every if budget is None else min(save_every, budget)
        before = state.processed
        advance(state, chunk)
        if budget is not None:
            budget -= state.processed - before
        if checkpoint_path is not None:
            save_checkpoint(state, checkpoint_path)
    ranking = []
    for rec in _class_records(state):
        value = Fraction(state.classes[rec.form.hash]["value"])
        ranking.append(RankedClass(rec.form, value, rec.representative, class_name(rec.form)))
    ranking.sort(key=lambda r: (-r.value, r.form.hash))
    return SearchResult(dim, bound, ranking, state.skipped_no_interior_origin, state.done, state.processed)
