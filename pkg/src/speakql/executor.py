"""CSV-backed mini executor: nested-loop join, filter, project.

Semantics: Cartesian product of the plan tables filtered by join
conditions and the user predicate, projected to the select list. Any
comparison involving null is false. Loops nest in schema declaration
order, so row order is the lexicographic order of source-row indices.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .builder import BoundComparison
from .errors import DatasetError


@dataclass(frozen=True)
class TableData:
    header: tuple[str, ...]
    rows: tuple  # tuples of text/int/float/None


@dataclass(frozen=True)
class Dataset:
    tables: dict  # table name -> TableData, schema declaration order


@dataclass(frozen=True)
class ResultSet:
    columns: tuple[tuple[str, str], ...]  # (table, column)
    rows: tuple


def _parse_cell(raw, column, table_name, row_no):
    if raw == "":
        return None
    if column.value_kind == "text":
        return raw
    try:
        if column.value_kind == "integer":
            return int(raw)
        return float(raw)
    except ValueError:
        raise DatasetError(
            f"{table_name}.csv row {row_no}, column {column.name!r}: "
            f"cannot parse {raw!r} as {column.value_kind}"
        )


def load_dataset(directory, schema):
    """Load `<table>.csv` for every schema table, validating headers and cells."""
    directory = Path(directory)
    tables = {}
    for table in schema.tables:
        path = directory / f"{table.name}.csv"
        if not path.is_file():
            raise DatasetError(f"missing data file {path}")
        with io.open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise DatasetError(f"{path} is empty (header row required)")
            if header != table.column_names:
                raise DatasetError(
                    f"{path}: header {header} does not match schema columns "
                    f"{table.column_names}"
                )
            rows = []
            for row_no, row in enumerate(reader, start=2):
                if len(row) != len(table.columns):
                    raise DatasetError(
                        f"{path} row {row_no}: expected {len(table.columns)} "
                        f"values, got {len(row)}"
                    )
                rows.append(
                    tuple(
                        _parse_cell(raw, col, table.name, row_no)
                        for raw, col in zip(row, table.columns)
                    )
                )
        tables[table.name] = TableData(tuple(header), tuple(rows))
    return Dataset(tables)


def _compare(left, op, right):
    if left is None or right is None:
        return False
    if op == "=":
        return left == right
    if op == "<>":
        return left != right
    if op == ">":
        return left > right
    if op == "<":
        return left < right
    if op == ">=":
        return left >= right
    if op == "<=":
        return left <= right
    raise ValueError(f"unknown comparator {op!r}")


def _eval_predicate(pred, row_of):
    if isinstance(pred, BoundComparison):
        data = row_of[pred.table]
        value = data[0][data[1].index(pred.column)]
        return _compare(value, pred.op, pred.literal)
    left = _eval_predicate(pred.left, row_of)
    right = _eval_predicate(pred.right, row_of)
    return (left and right) if pred.op == "and" else (left or right)


def execute(rq, ds):
    """Run the resolved plan against the dataset."""
    plan = rq.join_plan
    for name in plan.tables:
        if name not in ds.tables:
            raise DatasetError(f"table {name!r} not present in dataset")
    # nest loops in dataset (schema declaration) order
    loop_tables = [t for t in ds.tables if t in plan.tables]
    headers = {t: ds.tables[t].header for t in loop_tables}

    out_rows = []
    for combo in product(*(ds.tables[t].rows for t in loop_tables)):
        row_of = {t: (row, headers[t]) for t, row in zip(loop_tables, combo)}
        ok = True
        for lt, lc, rt, rc in plan.conditions:
            lval = row_of[lt][0][headers[lt].index(lc)]
            rval = row_of[rt][0][headers[rt].index(rc)]
            if not _compare(lval, "=", rval):
                ok = False
                break
        if ok and rq.predicate_refs is not None:
            ok = _eval_predicate(rq.predicate_refs, row_of)
        if ok:
            out_rows.append(
                tuple(row_of[t][0][headers[t].index(c)] for t, c in rq.select_refs)
            )
    return ResultSet(rq.select_refs, tuple(out_rows))
