"""JSON spec documents for groups and towers.

Group spec::

    {"degree": 3, "generators": [[2, 1, 3], [2, 3, 1]], "subgroup": [[2, 1, 3]], "cap": 1000}

Tower spec::

    {"levels": [<group spec>, ...],           # bottom level first
     "maps": [[0, 1, 0, 1], {"generators": [[2, 1]]}, ...],
     "H": [[...], ...], "K": [[...], ...]}    # generators at the top level

A map is either the full list of image indices (into the lower level's
canonical element order, one entry per element of the upper level) or the
generator-image shorthand, which is expanded and checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InputError, SpecError
from .groups import (
    DEFAULT_CAP,
    MAX_DEGREE,
    FiniteGroup,
    Perm,
    SubgroupHandle,
    generate_closure,
    subgroup_from_generators,
)
from .tower import Tower, TowerSubgroupPair, map_from_generator_images


@dataclass(frozen=True)
class GroupSpec:
    degree: int
    generators: tuple[Perm, ...]
    subgroup: tuple[Perm, ...] = ()
    cap: int | None = None

    def build(self, cap: int | None = None) -> tuple[FiniteGroup, SubgroupHandle]:
        cap = cap or self.cap or DEFAULT_CAP
        G = generate_closure(self.degree, self.generators, cap=cap)
        try:
            H = subgroup_from_generators(G, self.subgroup)
        except InputError as exc:
            raise SpecError(str(exc), "subgroup") from exc
        return G, H


def _load(text) -> object:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError(f"spec is not valid UTF-8: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _perm_list(obj, degree: int, path: str) -> tuple[Perm, ...]:
    if not isinstance(obj, list):
        raise SpecError("expected a list of permutations", path)
    out = []
    for i, g in enumerate(obj):
        where = f"{path}[{i}]"
        if not isinstance(g, list) or not all(_is_int(v) for v in g):
            raise SpecError("permutation must be a list of integers", where)
        if len(g) != degree:
            raise SpecError(f"expected {degree} images, got {len(g)}", where)
        if sorted(g) != list(range(1, degree + 1)):
            raise SpecError("not a bijection", where)
        out.append(Perm(tuple(g)))
    return tuple(out)


def group_spec_from_obj(obj, path: str = "") -> GroupSpec:
    prefix = f"{path}." if path else ""
    if not isinstance(obj, dict):
        raise SpecError("group spec must be a JSON object", path or "$")
    degree = obj.get("degree")
    if not _is_int(degree):
        raise SpecError("degree must be an integer", prefix + "degree")
    if not 1 <= degree <= MAX_DEGREE:
        raise SpecError("degree out of range", prefix + "degree")
    gens = _perm_list(obj.get("generators", []), degree, prefix + "generators")
    sub = _perm_list(obj.get("subgroup", []), degree, prefix + "subgroup")
    cap = obj.get("cap")
    if cap is not None and (not _is_int(cap) or cap < 1):
        raise SpecError("cap must be a positive integer", prefix + "cap")
    return GroupSpec(degree, gens, sub, cap)


def parse_group_spec(text) -> GroupSpec:
    return group_spec_from_obj(_load(text))


@dataclass(frozen=True)
class TowerSpec:
    tower: Tower
    pair: TowerSubgroupPair


def parse_tower_spec(text, cap: int = DEFAULT_CAP) -> TowerSpec:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise SpecError("tower spec must be a JSON object", "$")
    levels_obj = doc.get("levels")
    if not isinstance(levels_obj, list) or not levels_obj:
        raise SpecError("levels must be a nonempty list", "levels")
    levels = []
    for i, lv in enumerate(levels_obj):
        gs = group_spec_from_obj(lv, f"levels[{i}]")
        levels.append(generate_closure(gs.degree, gs.generators, cap=gs.cap or cap))
    maps_obj = doc.get("maps", [])
    if not isinstance(maps_obj, list) or len(maps_obj) != len(levels) - 1:
        raise SpecError(f"maps must be a list of {len(levels) - 1} entries", "maps")
    maps = []
    for i, m in enumerate(maps_obj):
        where = f"maps[{i}]"
        upper, lower = levels[i + 1], levels[i]
        try:
            if isinstance(m, dict):
                imgs = _perm_list(m.get("generators"), lower.degree, where + ".generators")
                maps.append(map_from_generator_images(upper, lower, imgs))
            elif isinstance(m, list) and all(_is_int(v) for v in m):
                maps.append(tuple(m))
            else:
                raise SpecError("map must be an index list or {\"generators\": [...]}", where)
        except SpecError:
            raise
        except InputError as exc:
            raise SpecError(str(exc), where) from exc
    try:
        tower = Tower(tuple(levels), tuple(maps))
    except SpecError:
        raise
    except InputError as exc:
        raise SpecError(str(exc), "maps") from exc
    top = tower.top
    subs = {}
    for key in ("H", "K"):
        gens = _perm_list(doc.get(key, []), top.degree, key)
        try:
            subs[key] = subgroup_from_generators(top, gens)
        except InputError as exc:
            raise SpecError(str(exc), key) from exc
    try:
        pair = TowerSubgroupPair(subs["H"], subs["K"])
    except InputError as exc:
        raise SpecError(str(exc), "K") from exc
    return TowerSpec(tower, pair)
