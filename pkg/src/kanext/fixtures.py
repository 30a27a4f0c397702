"""JSON fixture files: one document per fixture, ``{"name", "kind", "body"}``.

Bodies refer to other fixtures by name (any fixture loaded from the same
directory) or embed the referenced body inline. Monoid references may also be
catalogue names: ``trivial``, ``Z2``, ``Z3``, ``Z4``, ``Z2xZ2``, ``idem2``.
See ``docs/fixtures.md`` for the full format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import jsonschema

from .errors import KanextError, StructureError
from .fincat import FinCategory, FunctorData, NatTransData, discrete_from_monoid, from_poset
from .graded import AbelianGroup, GradedMonoid, GradedRing
from .monoidal import LaxMonoidalFunctor, MonoidalStructure, discrete_monoidal
from .monoids import FiniteMonoid, MonoidHom, catalogue
from .setskel import SETSKEL, SetMap

KINDS = ("category", "functor", "nat-trans", "monoidal", "lax-functor",
         "graded-monoid", "graded-ring", "monoid-hom", "pipeline")


class FixtureError(KanextError):
    """A fixture could not be read, failed its schema, or has a dangling reference."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None,
                 column: int | None = None, field: str | None = None):
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}, column {column}")
        if field:
            where.append(f"at {field}")
        super().__init__(f"{': '.join(where)}: {message}" if where else message)
        self.path, self.line, self.column, self.field = path, line, column, field


_int = {"type": "integer", "minimum": 0}
_ints = {"type": "array", "items": _int}
_matrix = {"type": "array", "items": _ints}
_ref = {"anyOf": [{"type": "string"}, {"type": "object"}]}

_MONOID = {
    "type": "object",
    "required": ["elements", "unit", "mult"],
    "properties": {"elements": {"type": "array", "minItems": 1}, "unit": _int,
                   "mult": _matrix, "name": {"type": "string"}},
    "additionalProperties": False,
}

BODY_SCHEMAS: dict[str, dict] = {
    "category": {
        "oneOf": [
            {
                "type": "object",
                "required": ["objects", "morphisms", "identity", "compose"],
                "properties": {
                    "objects": {"type": "array"},
                    "morphisms": {"type": "array",
                                  "items": {"type": "array", "items": _int,
                                            "minItems": 2, "maxItems": 2}},
                    "labels": {"type": "array"},
                    "identity": _ints,
                    "compose": {"type": "array",
                                "items": {"type": "array", "items": _int,
                                          "minItems": 3, "maxItems": 3}},
                },
                "additionalProperties": False,
            },
            {"type": "object", "required": ["discrete_monoid"],
             "properties": {"discrete_monoid": _ref}, "additionalProperties": False},
            {"type": "object", "required": ["poset"],
             "properties": {"poset": {
                 "type": "object", "required": ["size", "leq"],
                 "properties": {"size": _int,
                                "leq": {"type": "array", "items": {
                                    "type": "array", "items": _int,
                                    "minItems": 2, "maxItems": 2}}},
                 "additionalProperties": False}},
             "additionalProperties": False},
        ]
    },
    "functor": {
        "type": "object",
        "required": ["source", "target", "object_map", "morphism_map"],
        "properties": {"source": _ref, "target": _ref, "object_map": _ints,
                       "morphism_map": {"type": "array"}},
        "additionalProperties": False,
    },
    "nat-trans": {
        "type": "object",
        "required": ["source", "target", "components"],
        "properties": {"source": _ref, "target": _ref, "components": {"type": "array"}},
        "additionalProperties": False,
    },
    "monoidal": {
        "oneOf": [
            {"type": "object", "required": ["monoid"], "properties": {"monoid": _ref},
             "additionalProperties": False},
            {"type": "object",
             "required": ["category", "unit", "tensor_obj", "tensor_mor"],
             "properties": {"category": _ref, "unit": _int, "tensor_obj": _matrix,
                            "tensor_mor": _matrix},
             "additionalProperties": False},
        ]
    },
    "lax-functor": {
        "type": "object",
        "required": ["source", "target", "object_map", "morphism_map", "eta", "mu"],
        "properties": {"source": _ref, "target": _ref, "object_map": _ints,
                       "morphism_map": {"type": "array"}, "eta": _int,
                       "mu": {"type": "array", "items": {"type": "array"}}},
        "additionalProperties": False,
    },
    "monoid-hom": {
        "type": "object",
        "required": ["source", "target", "map"],
        "properties": {"source": _ref, "target": _ref, "map": _ints},
        "additionalProperties": False,
    },
    "graded-monoid": {
        "type": "object",
        "required": ["grading", "components", "unit", "mult"],
        "properties": {"grading": _ref, "components": _ints, "unit": _int,
                       "mult": {"type": "array", "items": {"type": "array",
                                                           "items": _ints}}},
        "additionalProperties": False,
    },
    "graded-ring": {
        "type": "object",
        "required": ["grading", "components", "unit", "mult"],
        "properties": {"grading": _ref,
                       "components": {"type": "array",
                                      "items": {"type": "array",
                                                "items": {"type": "integer", "minimum": 1}}},
                       "unit": _ints,
                       "mult": {"type": "array", "items": {"type": "array",
                                                           "items": _ints}}},
        "additionalProperties": False,
    },
    "pipeline": {
        "oneOf": [
            {"type": "object", "required": ["graded_monoid", "hom"],
             "properties": {"graded_monoid": _ref, "hom": _ref},
             "additionalProperties": False},
            {"type": "object", "required": ["F", "G"],
             "properties": {"F": _ref, "G": _ref}, "additionalProperties": False},
        ]
    },
}

FIXTURE_SCHEMA = {
    "type": "object",
    "required": ["name", "kind", "body"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "kind": {"enum": list(KINDS)},
        "description": {"type": "string"},
        "body": {"type": "object"},
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    kind: str
    body: dict
    path: str = ""
    description: str = ""


def _field_path(prefix: str, parts) -> str:
    out = prefix
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _schema_check(instance: Any, schema: dict, prefix: str, path: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise FixtureError(f"schema violation: {err.message}", path=path,
                           field=_field_path(prefix, err.absolute_path))


def parse_fixture_text(text: str, path: str = "<string>") -> FixtureSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FixtureError(e.msg, path=path, line=e.lineno, column=e.colno) from None
    _schema_check(doc, FIXTURE_SCHEMA, "$", path)
    _schema_check(doc["body"], BODY_SCHEMAS[doc["kind"]], "$.body", path)
    return FixtureSpec(doc["name"], doc["kind"], doc["body"], path, doc.get("description", ""))


def parse_fixture(path: str | Path) -> FixtureSpec:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise FixtureError(f"cannot read fixture: {e.strerror}", path=str(p)) from None
    return parse_fixture_text(text, str(p))


def load_fixtures(path: str | Path) -> dict[str, FixtureSpec]:
    """All fixtures in a directory (``*.json``, sorted) or a single file, by name."""
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.json"))
    elif p.is_file():
        files = [p]
    else:
        raise FixtureError("no such fixture file or directory", path=str(p))
    out: dict[str, FixtureSpec] = {}
    for f in files:
        spec = parse_fixture(f)
        if spec.name in out:
            raise FixtureError(f"duplicate fixture name {spec.name!r}", path=str(f))
        out[spec.name] = spec
    return out


class Resolver:
    """Builds domain objects from fixtures, following references by name."""

    def __init__(self, fixtures: dict[str, FixtureSpec]):
        self.fixtures = fixtures
        self._cache: dict[tuple[str, str], Any] = {}
        self._active: set[str] = set()

    def build(self, name: str) -> Any:
        spec = self.fixtures[name]
        return self._named(name, spec.kind, where=spec.path)

    def _named(self, name: str, kind: str, where: str = "") -> Any:
        key = (kind, name)
        if key in self._cache:
            return self._cache[key]
        if kind == "monoid" and name in catalogue():
            return catalogue()[name]
        spec = self.fixtures.get(name)
        if spec is None:
            raise FixtureError(f"unknown reference {name!r}", path=where or None)
        if spec.kind != kind:
            raise FixtureError(f"reference {name!r} is a {spec.kind}, expected {kind}",
                               path=where or None)
        if name in self._active:
            raise FixtureError(f"circular reference through {name!r}", path=spec.path)
        self._active.add(name)
        try:
            obj = self._from_body(kind, spec.body, spec.path, name)
        finally:
            self._active.discard(name)
        self._cache[key] = obj
        return obj

    def ref(self, value: Any, kind: str, where: str) -> Any:
        if isinstance(value, str):
            if kind in ("category", "monoidal") and value == "set":
                return SETSKEL
            return self._named(value, kind, where)
        if kind != "monoid":
            _schema_check(value, BODY_SCHEMAS[kind], "$.body(inline)", where)
        return self._from_body(kind, value, where, "")

    def _from_body(self, kind: str, body: dict, where: str, name: str) -> Any:
        try:
            return getattr(self, "_build_" + kind.replace("-", "_"))(body, where, name)
        except StructureError as e:
            raise FixtureError(f"malformed {kind}: {e}", path=where or None) from None
        except (IndexError, KeyError, TypeError) as e:
            raise FixtureError(f"malformed {kind}: {type(e).__name__}: {e}",
                               path=where or None) from None

    def _build_monoid(self, body, where, name) -> FiniteMonoid:
        _schema_check(body, _MONOID, "$.monoid", where)
        return FiniteMonoid(tuple(body["elements"]), body["unit"],
                            tuple(tuple(r) for r in body["mult"]),
                            name=body.get("name", name))

    def _build_category(self, body, where, name) -> FinCategory:
        if "discrete_monoid" in body:
            return discrete_from_monoid(self.ref(body["discrete_monoid"], "monoid", where))
        if "poset" in body:
            p = body["poset"]
            return from_poset(p["size"], [tuple(x) for x in p["leq"]], name=name)
        composites = {(f, g): h for f, g, h in body["compose"]}
        return FinCategory.from_composites(
            body["objects"], [tuple(m) for m in body["morphisms"]], body["identity"],
            composites, body.get("labels", ()), name=name)

    def _set_maps(self, sizes, source: FinCategory, tables) -> tuple[SetMap, ...]:
        return tuple(
            SetMap(sizes[source.src[m]], sizes[source.tgt[m]], tuple(t))
            for m, t in enumerate(tables)
        )

    def _build_functor(self, body, where, name) -> FunctorData:
        src = self.ref(body["source"], "category", where)
        tgt = self.ref(body["target"], "category", where)
        obj = tuple(body["object_map"])
        if tgt is SETSKEL:
            if len(obj) != src.n_objects or len(body["morphism_map"]) != src.n_morphisms:
                raise StructureError("functor tables do not match the source category")
            mor = self._set_maps(obj, src, body["morphism_map"])
        else:
            mor = tuple(body["morphism_map"])
        return FunctorData(src, tgt, obj, mor, name=name)

    def _build_nat_trans(self, body, where, name) -> NatTransData:
        s = self.ref(body["source"], "functor", where)
        t = self.ref(body["target"], "functor", where)
        if s.target is SETSKEL:
            comps = tuple(SetMap(s.object_map[a], t.object_map[a], tuple(c))
                          for a, c in enumerate(body["components"]))
        else:
            comps = tuple(body["components"])
        return NatTransData(s, t, comps, name=name)

    def _build_monoidal(self, body, where, name) -> MonoidalStructure:
        if "monoid" in body:
            return discrete_monoidal(self.ref(body["monoid"], "monoid", where))
        cat = self.ref(body["category"], "category", where)
        return MonoidalStructure(cat, body["unit"],
                                 tuple(tuple(r) for r in body["tensor_obj"]),
                                 tuple(tuple(r) for r in body["tensor_mor"]), name=name)

    def _build_lax_functor(self, body, where, name) -> LaxMonoidalFunctor:
        src = self.ref(body["source"], "monoidal", where)
        tgt = self.ref(body["target"], "monoidal", where)
        c = src.base
        obj = tuple(body["object_map"])
        n = c.n_objects
        if len(obj) != n or len(body["mu"]) != n or any(len(r) != n for r in body["mu"]):
            raise StructureError("lax functor tables do not match the source category")
        if tgt is SETSKEL:
            mor = self._set_maps(obj, c, body["morphism_map"])
            F = FunctorData(c, SETSKEL, obj, mor, name=name)
            T = src.obj_table
            mu = tuple(tuple(SetMap(obj[a] * obj[b], obj[T[a][b]], tuple(body["mu"][a][b]))
                             for b in range(n)) for a in range(n))
            eta = SetMap(1, obj[src.unit], (body["eta"],))
        else:
            F = FunctorData(c, tgt.base, obj, tuple(body["morphism_map"]), name=name)
            mu = tuple(tuple(r) for r in body["mu"])
            eta = body["eta"]
        return LaxMonoidalFunctor(src, tgt, F, eta, mu, name=name)

    def _build_monoid_hom(self, body, where, name) -> MonoidHom:
        return MonoidHom(self.ref(body["source"], "monoid", where),
                         self.ref(body["target"], "monoid", where),
                         tuple(body["map"]), name=name)

    def _build_graded_monoid(self, body, where, name) -> GradedMonoid:
        M = self.ref(body["grading"], "monoid", where)
        return GradedMonoid.from_tables(M, body["components"], body["unit"], body["mult"],
                                        name=name)

    def _build_graded_ring(self, body, where, name) -> GradedRing:
        M = self.ref(body["grading"], "monoid", where)
        groups = tuple(AbelianGroup(tuple(o)) for o in body["components"])
        if len(groups) != M.order:
            raise StructureError("one abelian group per grade is required")
        unit = groups[M.unit].index(body["unit"])
        mult = tuple(tuple(tuple(t) for t in row) for row in body["mult"])
        return GradedRing(M, groups, unit, mult, name=name)

    def _build_pipeline(self, body, where, name) -> dict:
        if "graded_monoid" in body:
            return {"graded_monoid": self.ref(body["graded_monoid"], "graded-monoid", where),
                    "hom": self.ref(body["hom"], "monoid-hom", where)}
        return {"F": self.ref(body["F"], "lax-functor", where),
                "G": self.ref(body["G"], "lax-functor", where)}
