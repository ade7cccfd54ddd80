"""Batch front end: run analysis configs, compare reports, generate meshes.

Configuration files are JSON with a top-level ``"schema": 1`` marker.  A run
config holds a ``base`` case, an optional ``cases`` list of overrides, and an
optional ``sweep`` mapping of dotted config paths to value lists; the run
executes every case crossed with every sweep combination and writes one CSV
and one JSON report.  See the README for the full schema.
"""

import argparse
import copy
import csv
import itertools
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

from .errors import PlatesError, ConfigError, NumericError
from .meshing import read_mesh, write_mesh, validate_mesh
from .solver import (
    run_case,
    kirchhoff_center_deflection,
    _geometry_from_config,
    _mesh_from_config,
)

SCHEMA_VERSION = 1

# Default per-row tolerance (percent) when neither the expected file nor
# --tol provides one.
DEFAULT_TOL_PCT = 1.0


# -- config loading -----------------------------------------------------------

def _load_config(path_or_name: str) -> dict:
    """Load a JSON config from a path, falling back to a bundled preset name."""
    path = Path(path_or_name)
    if not path.exists():
        bundle = resources.files("fgplates") / "presets" / f"{path_or_name}.json"
        if bundle.is_file():
            path = bundle
        else:
            raise ConfigError(f"config {path_or_name!r} is neither a file nor "
                              f"a bundled preset name")
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}: invalid JSON ({err})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise ConfigError(f"{path}: unsupported schema {data.get('schema')!r}; "
                          f"this build reads schema {SCHEMA_VERSION}")
    data.setdefault("name", Path(path).stem)
    return data


def _deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _apply_axis(cfg: dict, dotted: str, value) -> None:
    """Set a sweep value at a dotted path, merging dict values into subtrees."""
    keys = dotted.split(".")
    node = cfg
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigError(f"sweep axis {dotted!r} crosses a non-dict value")
    leaf = keys[-1]
    if isinstance(value, dict) and isinstance(node.get(leaf), dict):
        node[leaf] = _deep_merge(node[leaf], value)
    else:
        node[leaf] = copy.deepcopy(value)


def _axis_label(value) -> str:
    if isinstance(value, dict):
        return ";".join(f"{k}={v}" for k, v in value.items())
    return str(value)


def expand_rows(config: dict):
    """Cross cases with sweep axes into a flat, deterministically ordered list.

    Returns (labels, case_configs) where each label maps the sweep-coordinate
    column names to display values.
    """
    base = config.get("base", {})
    cases = config.get("cases", [{}])
    if not isinstance(cases, list) or not cases:
        raise ConfigError("config needs a non-empty case list")
    sweep = config.get("sweep", {})
    axes = list(sweep.items())
    for name, values in axes:
        if not isinstance(values, list) or not values:
            raise ConfigError(f"sweep axis {name!r} must be a non-empty list")
    labels, rows = [], []
    for index, case in enumerate(cases):
        case_name = case.get("name", config.get("name", f"case{index}"))
        overrides = {k: v for k, v in case.items() if k != "name"}
        for combo in itertools.product(*(values for _, values in axes)):
            cfg = _deep_merge(base, overrides)
            label = {"case": case_name}
            for (axis, _), value in zip(axes, combo):
                _apply_axis(cfg, axis, value)
                label[axis] = _axis_label(value)
            labels.append(label)
            rows.append(cfg)
    return labels, rows


# -- report writing -----------------------------------------------------------

def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        # float() strips numpy scalar wrappers so repr stays plain.
        return repr(float(value))
    return str(value)


def _csv_columns(rows):
    columns = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def write_csv(rows, path) -> None:
    columns = _csv_columns(rows)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(row.get(col)) for col in columns])


def _thread_cap() -> int:
    raw = os.environ.get("PLATES_THREADS", "")
    if not raw:
        return os.cpu_count() or 1
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"PLATES_THREADS must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ConfigError(f"PLATES_THREADS must be >= 1, got {cap}")
    return cap


def _run_one(label: dict, cfg: dict) -> tuple[dict, Exception | None]:
    row = dict(label)
    try:
        result = run_case(cfg)
    except PlatesError as err:
        row["status"] = "error"
        row["message"] = str(err)
        return row, err
    row["status"] = "ok"
    row["message"] = ""
    row.update(result)
    return row, None


def run_report(config: dict, serial: bool = False):
    """Execute every expanded row; returns (rows, errors).

    Rows keep the expansion order no matter how execution interleaves.
    """
    labels, cfgs = expand_rows(config)
    workers = 1 if serial else min(_thread_cap(), len(cfgs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one, labels, cfgs))
    else:
        outcomes = [_run_one(label, cfg) for label, cfg in zip(labels, cfgs)]
    rows = [row for row, _ in outcomes]
    errors = [err for _, err in outcomes if err is not None]
    return rows, errors


def locking_report(config: dict):
    """Span-to-thickness sweep comparing smoothed and plain shear treatment.

    Each row runs the base static case at one a/h with smoothing on and off
    and carries the thin-plate series reference for the relative errors.
    """
    base = config.get("base", {})
    ratios = config.get("a_over_h", [5, 10, 100, 1000, 10000])
    if not isinstance(ratios, list) or not ratios:
        raise ConfigError("locking sweep needs a non-empty a_over_h list")
    geometry = _geometry_from_config(base)
    reference = float(100.0 * kirchhoff_center_deflection(geometry.length,
                                                          geometry.width))
    rows, errors = [], []
    for ratio in ratios:
        t0 = time.perf_counter()
        row = {"case": config.get("name", "locking"), "a_over_h": float(ratio)}
        try:
            thickness = geometry.length / float(ratio)
            smoothed_cfg = _deep_merge(base, {"material": {"h": thickness},
                                              "element": {"smoothed": True}})
            plain_cfg = _deep_merge(base, {"material": {"h": thickness},
                                           "element": {"smoothed": False}})
            smoothed = run_case(smoothed_cfg)["w_center_norm"]
            plain = run_case(plain_cfg)["w_center_norm"]
        except PlatesError as err:
            row["status"] = "error"
            row["message"] = str(err)
            errors.append(err)
            rows.append(row)
            continue
        row.update({
            "status": "ok",
            "message": "",
            "smoothed": float(smoothed),
            "plain": float(plain),
            "thin_reference": reference,
            "smoothed_rel_err": float(abs(smoothed - reference) / reference),
            "plain_rel_err": float(abs(plain - reference) / reference),
            "wall_time": time.perf_counter() - t0,
        })
        rows.append(row)
    return rows, errors


def cmd_run(args) -> int:
    config = _load_config(args.config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    if config.get("analysis") == "locking-sweep":
        rows, errors = locking_report(config)
    else:
        rows, errors = run_report(config, serial=args.serial)
    total = time.perf_counter() - t0
    csv_rows = rows
    if args.serial:
        # The serial CSV is promised byte-identical across runs; timings stay
        # available in the JSON report.
        csv_rows = [{**row, "wall_time": 0.0} if "wall_time" in row else dict(row)
                    for row in rows]
    name = config.get("name", "report")
    csv_path = out_dir / f"{name}.csv"
    json_path = out_dir / f"{name}.json"
    write_csv(csv_rows, csv_path)
    report = {"schema": SCHEMA_VERSION, "name": name, "serial": bool(args.serial),
              "total_wall_time": total, "rows": rows}
    json_path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    ok = sum(1 for row in rows if row.get("status") == "ok")
    print(f"{name}: {ok}/{len(rows)} rows ok, {total:.1f}s -> {csv_path}")
    for row in rows:
        if row.get("status") == "error":
            print(f"  error: {row.get('message')}", file=sys.stderr)
    if not errors:
        return 0
    if any(not isinstance(err, NumericError) for err in errors):
        return 2
    return 3


# -- comparison ---------------------------------------------------------------

def _read_csv(path) -> list[dict]:
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            return list(csv.DictReader(handle))
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err}") from None


def _cells_match(report_value: str, expected_value: str) -> bool:
    if report_value == expected_value:
        return True
    try:
        return float(report_value) == float(expected_value)
    except (TypeError, ValueError):
        return False


def _match_row(report_rows, keys: dict, path) -> dict:
    hits = [row for row in report_rows
            if all(_cells_match(row.get(k, ""), v) for k, v in keys.items())]
    if len(hits) != 1:
        label = ", ".join(f"{k}={v}" for k, v in keys.items())
        raise ConfigError(f"{path}: expected exactly one report row matching "
                          f"({label}), found {len(hits)}")
    return hits[0]


def compare_reports(report_rows, expected_rows, path, tol_override=None):
    """Match expected rows against a report; returns (lines, any_failed).

    Keyed mode: expected rows carry ``metric``, ``expected`` and optional
    ``tol_pct`` columns; remaining columns select the report row.  Mirror
    mode (no ``metric`` column): rows pair by position and every common
    numeric column is compared.
    """
    lines = []
    failed = False

    def check(keys, metric, got_text, expected_text, tol_pct):
        nonlocal failed
        try:
            expected_value = float(expected_text)
        except (TypeError, ValueError):
            raise ConfigError(f"{path}: expected value {expected_text!r} "
                              f"for {metric} is not numeric") from None
        try:
            got = float(got_text)
        except (TypeError, ValueError):
            got = None
        if got is None:
            rel = None
            ok = False
        elif expected_value == 0.0:
            rel = abs(got)
            ok = rel <= tol_pct / 100.0
        else:
            rel = abs(got - expected_value) / abs(expected_value)
            ok = rel * 100.0 <= tol_pct + 1e-12
        failed = failed or not ok
        label = " ".join(f"{k}={v}" for k, v in keys.items())
        rel_text = "n/a" if rel is None else f"{rel * 100.0:7.3f}%"
        verdict = "pass" if ok else "FAIL"
        lines.append(f"{verdict}  {label}  {metric}: got "
                     f"{'missing' if got is None else repr(got)} "
                     f"expected {expected_value!r} rel {rel_text} "
                     f"(tol {tol_pct}%)")

    if expected_rows and "metric" in expected_rows[0]:
        for expected in expected_rows:
            keys = {k: v for k, v in expected.items()
                    if k not in ("metric", "expected", "tol_pct") and v != ""}
            row = _match_row(report_rows, keys, path)
            tol = tol_override
            if tol is None:
                tol = float(expected["tol_pct"]) if expected.get("tol_pct") else DEFAULT_TOL_PCT
            check(keys, expected["metric"], row.get(expected["metric"]),
                  expected["expected"], tol)
    else:
        if len(report_rows) != len(expected_rows):
            raise ConfigError(f"{path}: row count {len(expected_rows)} does not "
                              f"match report ({len(report_rows)})")
        tol = DEFAULT_TOL_PCT if tol_override is None else tol_override
        for index, (row, expected) in enumerate(zip(report_rows, expected_rows)):
            for column, expected_text in expected.items():
                try:
                    float(expected_text)
                except (TypeError, ValueError):
                    continue
                if column == "wall_time":
                    continue
                check({"row": index}, column, row.get(column), expected_text, tol)
    return lines, failed


def cmd_compare(args) -> int:
    report_rows = _read_csv(args.report)
    expected_path = Path(args.expected)
    if not expected_path.exists():
        bundle = resources.files("fgplates") / "presets" / expected_path.name
        if bundle.is_file():
            expected_path = bundle
        else:
            raise ConfigError(f"cannot read {args.expected}: no such file")
    expected_rows = _read_csv(expected_path)
    if not expected_rows:
        raise ConfigError(f"{args.expected}: no expected rows")
    lines, failed = compare_reports(report_rows, expected_rows, args.expected,
                                    args.tol)
    for line in lines:
        print(line)
    total = len(lines)
    bad = sum(1 for line in lines if line.startswith("FAIL"))
    print(f"{total - bad}/{total} comparisons passed")
    return 4 if failed else 0


# -- mesh generation ----------------------------------------------------------

def cmd_mesh(args) -> int:
    if args.mesh_in:
        mesh = read_mesh(args.mesh_in)
        validate_mesh(mesh)
        source = args.mesh_in
    else:
        if not args.spec:
            raise ConfigError("mesh command needs a spec file or --mesh-in")
        spec = _load_config(args.spec)
        geometry = _geometry_from_config(spec)
        mesh = _mesh_from_config(spec, geometry)
        source = args.spec
    if args.mesh_out:
        write_mesh(mesh, args.mesh_out)
    sets = " ".join(f"{name}:{len(nodes)}"
                    for name, nodes in sorted(mesh.node_sets.items()))
    target = f" -> {args.mesh_out}" if args.mesh_out else ""
    print(f"{source}: {mesh.node_count} nodes, {mesh.triangle_count} triangles, "
          f"sets {sets}{target}")
    return 0


# -- entry point --------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plates",
        description="Finite-element analyses of functionally graded Mindlin "
                    "plates with smoothed triangular elements.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a run configuration")
    run_p.add_argument("config", help="config path or bundled preset name")
    run_p.add_argument("--out", default=".", help="output directory")
    run_p.add_argument("--serial", action="store_true",
                       help="single-threaded, byte-reproducible CSV")
    run_p.set_defaults(func=cmd_run)

    cmp_p = sub.add_parser("compare", help="check a report against expected values")
    cmp_p.add_argument("report", help="report CSV from a run")
    cmp_p.add_argument("expected", help="expected-values CSV (path or bundled name)")
    cmp_p.add_argument("--tol", type=float, default=None,
                       help="override tolerance in percent for every row")
    cmp_p.set_defaults(func=cmd_compare)

    mesh_p = sub.add_parser("mesh", help="generate or inspect a mesh file")
    mesh_p.add_argument("spec", nargs="?", help="mesh spec JSON")
    mesh_p.add_argument("--mesh-out", help="write the mesh to this path")
    mesh_p.add_argument("--mesh-in", help="read and validate an existing mesh")
    mesh_p.set_defaults(func=cmd_mesh)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NumericError as err:
        print(f"numeric error: {err}", file=sys.stderr)
        return 3
    except PlatesError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
