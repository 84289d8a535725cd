"""Schema loading, the shared-column graph, and join-path inference.

Tables are connected whenever they share a column name; joins are
equalities on those shared names. For more than two required tables a
Steiner-tree approximation is used: shortest path between the first
pair, then each remaining table attaches to the nearest already
selected one. All tie-breaks are deterministic (declaration order,
then lexicographically smallest path).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

import yaml

from .errors import DisconnectedSchemaError, SchemaConfigError

VALUE_KINDS = ("text", "integer", "real")
TABLE_KINDS = ("entity", "relationship")

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Column:
    name: str
    value_kind: str  # text | integer | real

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise SchemaConfigError(f"invalid column name {self.name!r}")
        if self.value_kind not in VALUE_KINDS:
            raise SchemaConfigError(
                f"unknown value kind {self.value_kind!r} for column {self.name!r}"
            )

    @property
    def is_numeric(self):
        return self.value_kind in ("integer", "real")


@dataclass(frozen=True)
class Table:
    name: str
    kind: str  # entity | relationship
    columns: tuple[Column, ...]

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise SchemaConfigError(f"invalid table name {self.name!r}")
        if self.kind not in TABLE_KINDS:
            raise SchemaConfigError(f"unknown table kind {self.kind!r} for {self.name!r}")
        if not self.columns:
            raise SchemaConfigError(f"table {self.name!r} has no columns")
        seen = set()
        for col in self.columns:
            if col.name.lower() in seen:
                raise SchemaConfigError(
                    f"duplicate column {col.name!r} in table {self.name!r}"
                )
            seen.add(col.name.lower())

    @property
    def column_names(self):
        return [c.name for c in self.columns]

    def column(self, name):
        for c in self.columns:
            if c.name.lower() == name.lower():
                return c
        return None


@dataclass(frozen=True)
class Schema:
    tables: tuple[Table, ...]

    def __post_init__(self):
        seen = set()
        for t in self.tables:
            if t.name.lower() in seen:
                raise SchemaConfigError(f"duplicate table name {t.name!r}")
            seen.add(t.name.lower())

    def table(self, name):
        for t in self.tables:
            if t.name.lower() == name.lower():
                return t
        return None

    def declaration_index(self, name):
        for i, t in enumerate(self.tables):
            if t.name.lower() == name.lower():
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class SchemaGraph:
    """Undirected graph: one node per table, edges labeled with shared column names."""

    nodes: tuple[str, ...]  # declaration order
    edges: dict[frozenset, frozenset] = field(hash=False)

    def shared_columns(self, a, b):
        return self.edges.get(frozenset((a, b)), frozenset())

    def neighbors(self, table):
        """Neighbors in declaration order."""
        out = []
        for other in self.nodes:
            if other != table and frozenset((table, other)) in self.edges:
                out.append(other)
        return out


@dataclass(frozen=True)
class JoinPlan:
    tables: tuple[str, ...]
    # (left table, left column, right table, right column) equalities
    conditions: tuple[tuple[str, str, str, str], ...]


def load_schema(config_text):
    """Parse and validate a schema-config document (YAML, strict keys)."""
    try:
        doc = yaml.safe_load(config_text)
    except yaml.YAMLError as exc:
        raise SchemaConfigError(f"schema config parse error: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaConfigError("schema config must be a mapping with a 'tables' key")
    _reject_unknown_keys(doc, {"tables"}, "top level")
    raw_tables = doc.get("tables")
    if not isinstance(raw_tables, list) or not raw_tables:
        raise SchemaConfigError("'tables' must be a nonempty list")

    tables = []
    for entry in raw_tables:
        if not isinstance(entry, dict):
            raise SchemaConfigError(f"table entry must be a mapping, got {entry!r}")
        _reject_unknown_keys(entry, {"name", "kind", "columns"}, "table entry")
        name = entry.get("name")
        if not isinstance(name, str):
            raise SchemaConfigError(f"table name must be a string, got {name!r}")
        kind = entry.get("kind", "entity")
        raw_cols = entry.get("columns")
        if not isinstance(raw_cols, list) or not raw_cols:
            raise SchemaConfigError(f"table {name!r}: 'columns' must be a nonempty list")
        columns = []
        for col in raw_cols:
            if not isinstance(col, dict):
                raise SchemaConfigError(f"table {name!r}: column must be a mapping")
            _reject_unknown_keys(col, {"name", "type"}, f"column of table {name!r}")
            cname = col.get("name")
            ctype = col.get("type")
            if not isinstance(cname, str) or not isinstance(ctype, str):
                raise SchemaConfigError(
                    f"table {name!r}: column needs string 'name' and 'type'"
                )
            columns.append(Column(cname, ctype))
        tables.append(Table(name, kind, tuple(columns)))
    return Schema(tuple(tables))


def _reject_unknown_keys(mapping, allowed, where):
    unknown = set(mapping) - allowed
    if unknown:
        raise SchemaConfigError(f"unknown field(s) {sorted(unknown)} at {where}")


def build_graph(schema):
    """Edge between every pair of tables sharing >=1 column name."""
    edges = {}
    for i, a in enumerate(schema.tables):
        a_cols = {c.name.lower(): c.name for c in a.columns}
        for b in schema.tables[i + 1 :]:
            shared = sorted(
                a_cols[c.name.lower()] for c in b.columns if c.name.lower() in a_cols
            )
            if shared:
                edges[frozenset((a.name, b.name))] = frozenset(shared)
    return SchemaGraph(tuple(t.name for t in schema.tables), edges)


def tables_owning(schema, column_name):
    """All tables containing the column: entity tables first, then
    relationship tables, declaration order within each group."""
    entity, relationship = [], []
    for t in schema.tables:
        if t.column(column_name) is not None:
            (entity if t.kind == "entity" else relationship).append(t.name)
    return entity + relationship


def _shortest_path(graph, src, dst):
    """Lexicographically smallest shortest path src..dst, or None."""
    if src == dst:
        return [src]
    dist = {dst: 0}
    frontier = deque([dst])
    while frontier:
        cur = frontier.popleft()
        for n in graph.neighbors(cur):
            if n not in dist:
                dist[n] = dist[cur] + 1
                frontier.append(n)
    if src not in dist:
        return None
    # Walk greedily toward dst; smallest-named eligible neighbor gives the
    # lexicographically smallest sequence among all shortest paths.
    path = [src]
    cur = src
    while cur != dst:
        step = min(
            n for n in graph.neighbors(cur) if dist.get(n, -1) == dist[cur] - 1
        )
        path.append(step)
        cur = step
    return path


def _nearest_attachment(graph, start, selected):
    """Shortest path from `start` to any table in `selected`; ties broken by
    lexicographically smallest path sequence. Returns None if unreachable."""
    best = None
    for target in sorted(selected):
        path = _shortest_path(graph, start, target)
        if path is None:
            continue
        key = (len(path), path)
        if best is None or key < best[0]:
            best = (key, path)
    return None if best is None else best[1]


def join_path(graph, required):
    """JoinPlan connecting all required tables.

    Steiner approximation: shortest path between the first two required
    tables (declaration order), then each remaining required table
    attaches by shortest path to the nearest already selected table.
    """
    order = [t for t in graph.nodes if t in set(required)]
    if not order:
        raise ValueError("required table set is empty")
    for t in required:
        if t not in graph.nodes:
            raise ValueError(f"required table {t!r} is not in the schema graph")

    tables = [order[0]]
    conditions = []
    used_edges = set()

    def add_edge(left, right):
        key = frozenset((left, right))
        if key in used_edges:
            return
        used_edges.add(key)
        for col in sorted(graph.shared_columns(left, right)):
            conditions.append((left, col, right, col))

    def add_path(path):
        # path[0] is already selected; append the rest preserving adjacency
        for prev, nxt in zip(path, path[1:]):
            if nxt not in tables:
                tables.append(nxt)
            add_edge(prev, nxt)

    for target in order[1:]:
        if target in tables:
            continue
        path = _nearest_attachment(graph, target, tables)
        if path is None:
            raise DisconnectedSchemaError(tables[0], target)
        add_path(list(reversed(path)))  # orient selected -> new table

    return JoinPlan(tuple(tables), tuple(conditions))
