"""Benchmark sweeps: distance grids, element-count grids, single points.

A sweep is described by a :class:`SweepSpec` (JSON-serializable, strict
schema).  Each sweep point assembles the requested model variants at the
point's geometry, scores every non-OCM variant against the OCM reference
by NMSE, and computes the uniform-power eigenchannel capacity of every
variant.  Rows come back in deterministic x-order regardless of the
worker count, and the CSV/JSON writers format values reproducibly so
identical specs yield byte-identical files.

CSV column order: ``x_value, d_R_lambda, d0_lambda``, then one block per
variant in alphabetical order (``capacity_<variant>`` and, for non-OCM
variants when OCM is present, ``nmse_<variant>``), then optional
``sv<j>_<variant>`` columns when singular values are dumped.  The x value
is d0 in wavelengths for distance sweeps and single points, and the TX
element count N for element sweeps; ``d0_lambda`` makes element-sweep
rows unambiguous when two link distances run in one sweep.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .capacity import SPEED_OF_LIGHT, PhysicalConfig, PPolicy, capacity, eigenchannel_decompose
from .errors import ConfigError
from .geometry import LinkGeometry, build_planar_surface, rayleigh_distance
from .green import MODEL_VARIANTS, assemble_ocm
from .metrics import nmse
from .separable import assemble_fscm, assemble_pscm

__all__ = [
    "EXPERIMENTS",
    "DEFAULT_N_LIST",
    "SweepSpec",
    "SweepResultRow",
    "default_spec",
    "spec_from_json_dict",
    "spec_to_json_dict",
    "load_spec",
    "validate_spec",
    "distance_grid",
    "run_distance_sweep",
    "run_element_sweep",
    "run_single_point",
    "rows_to_csv",
    "rows_to_json",
    "write_rows",
]

EXPERIMENTS = ("distance", "tx-elements", "single-point")

DEFAULT_N_LIST = (9, 13, 17, 21, 25, 29, 33, 37, 41)

_DEFAULT_D0 = {
    "distance": {"start": 0.25, "stop": 4.25, "step": 0.25},
    "tx-elements": (0.75, 2.5),
    "single-point": (4.25,),
}


@dataclass(frozen=True)
class SweepSpec:
    """Full description of one benchmark run.

    ``d0_range_lambda`` is a {start, stop, step} mapping for distance
    sweeps and a tuple of fixed distances (one or two for element sweeps,
    exactly one for single points), all in wavelengths.  ``p_policy`` is
    the textual form accepted by :meth:`PPolicy.parse`.
    """

    experiment: str
    tx_grid: tuple[int, int] = (41, 41)
    rx_grid: tuple[int, int] = (15, 15)
    spacing_lambda: float = 0.01
    d0_range_lambda: object = None
    n_list: tuple[int, ...] = DEFAULT_N_LIST
    variants: tuple[str, ...] = MODEL_VARIANTS
    frequency: float = 2.4e9
    snr_db: float = 10.0
    p_policy: str = "threshold(1e-6)"
    output_path: str | None = None
    output_format: str = "csv"


@dataclass(frozen=True)
class SweepResultRow:
    """One sweep point: x value, geometry context, per-variant results."""

    x_value: float
    d0_lambda: float
    d_r_lambda: float
    nmse: dict[str, float]
    capacity: dict[str, float]
    singular_values: dict[str, tuple[float, ...]] = field(default_factory=dict)


def default_spec(experiment: str) -> SweepSpec:
    """The built-in benchmark configuration for one experiment kind."""
    if experiment not in EXPERIMENTS:
        raise ConfigError([f"unknown experiment {experiment!r}, expected one of {EXPERIMENTS}"])
    return SweepSpec(experiment=experiment, d0_range_lambda=_DEFAULT_D0[experiment])


def _normalize_d0(value, experiment):
    """Coerce the JSON form of d0_range_lambda into canonical shape."""
    if value is None:
        return _DEFAULT_D0.get(experiment)
    if isinstance(value, dict):
        return {k: float(v) for k, v in value.items()}
    if isinstance(value, (int, float)):
        return (float(value),)
    return tuple(float(v) for v in value)


def spec_from_json_dict(data: dict, experiment: str | None = None) -> SweepSpec:
    """Build a spec from a JSON object, rejecting unknown keys.

    ``experiment`` supplies the experiment kind when the object omits it
    (e.g. when the CLI subcommand already determines it).
    """
    if not isinstance(data, dict):
        raise ConfigError(["config root must be a JSON object"])
    known = {f.name for f in fields(SweepSpec)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError([f"unknown config key {k!r}" for k in unknown])
    merged = dict(data)
    if "experiment" not in merged:
        if experiment is None:
            raise ConfigError(["config is missing the 'experiment' key"])
        merged["experiment"] = experiment
    exp = merged["experiment"]
    merged["d0_range_lambda"] = _normalize_d0(merged.get("d0_range_lambda"), exp)
    for key in ("tx_grid", "rx_grid", "n_list", "variants"):
        if key in merged and isinstance(merged[key], list):
            merged[key] = tuple(merged[key])
    spec = SweepSpec(**merged)
    violations = validate_spec(spec)
    if violations:
        raise ConfigError(violations)
    return spec


def spec_to_json_dict(spec: SweepSpec) -> dict:
    """JSON form of a spec; parsing it back yields an identical spec."""
    d0 = spec.d0_range_lambda
    if isinstance(d0, tuple):
        d0 = list(d0)
    return {
        "experiment": spec.experiment,
        "tx_grid": list(spec.tx_grid),
        "rx_grid": list(spec.rx_grid),
        "spacing_lambda": spec.spacing_lambda,
        "d0_range_lambda": d0,
        "n_list": list(spec.n_list),
        "variants": list(spec.variants),
        "frequency": spec.frequency,
        "snr_db": spec.snr_db,
        "p_policy": spec.p_policy,
        "output_path": spec.output_path,
        "output_format": spec.output_format,
    }


def load_spec(path: str, experiment: str | None = None) -> SweepSpec:
    """Read and validate a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config file is not valid JSON: {exc}"]) from exc
    return spec_from_json_dict(data, experiment=experiment)


def _check_grid(name, grid, violations):
    ok = (
        isinstance(grid, tuple)
        and len(grid) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) and v >= 1 for v in grid)
    )
    if not ok:
        violations.append(f"{name} must be a pair of integers >= 1, got {grid!r}")


def validate_spec(spec: SweepSpec) -> list[str]:
    """All schema violations in a spec; empty when the spec is runnable."""
    v: list[str] = []
    if spec.experiment not in EXPERIMENTS:
        v.append(f"experiment must be one of {EXPERIMENTS}, got {spec.experiment!r}")
    _check_grid("tx_grid", spec.tx_grid, v)
    _check_grid("rx_grid", spec.rx_grid, v)
    if not (isinstance(spec.spacing_lambda, (int, float)) and spec.spacing_lambda > 0):
        v.append(f"spacing_lambda must be positive, got {spec.spacing_lambda!r}")
    if not (isinstance(spec.frequency, (int, float)) and spec.frequency > 0):
        v.append(f"frequency must be positive, got {spec.frequency!r}")
    if not isinstance(spec.snr_db, (int, float)) or isinstance(spec.snr_db, bool):
        v.append(f"snr_db must be a real number, got {spec.snr_db!r}")

    d0 = spec.d0_range_lambda
    if spec.experiment == "distance":
        if not (isinstance(d0, dict) and set(d0) == {"start", "stop", "step"}):
            v.append("d0_range_lambda must be a {start, stop, step} object for distance sweeps")
        else:
            if d0["start"] <= 0:
                v.append(f"d0 range start must be positive, got {d0['start']}")
            if d0["step"] <= 0:
                v.append(f"d0 range step must be positive, got {d0['step']}")
            if d0["stop"] < d0["start"]:
                v.append("d0 range stop must be >= start")
    elif spec.experiment in ("tx-elements", "single-point"):
        limit = 2 if spec.experiment == "tx-elements" else 1
        if not (isinstance(d0, tuple) and 1 <= len(d0) <= limit):
            v.append(
                f"d0_range_lambda must hold 1{'-2' if limit == 2 else ''} fixed "
                f"distance(s) for {spec.experiment}, got {d0!r}"
            )
        elif any(x <= 0 for x in d0):
            v.append(f"all fixed d0 values must be positive, got {d0!r}")

    if spec.experiment == "tx-elements":
        ok = (
            isinstance(spec.n_list, tuple)
            and len(spec.n_list) > 0
            and all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in spec.n_list)
        )
        if not ok:
            v.append(f"n_list must be a non-empty list of integers >= 1, got {spec.n_list!r}")

    if not spec.variants:
        v.append("variants must not be empty")
    else:
        unknown = [x for x in spec.variants if x not in MODEL_VARIANTS]
        for x in unknown:
            v.append(f"unknown variant {x!r}, expected one of {MODEL_VARIANTS}")
        if len(set(spec.variants)) != len(spec.variants):
            v.append("variants must not repeat")
        non_ocm = [x for x in spec.variants if x != "OCM" and x in MODEL_VARIANTS]
        if non_ocm and "OCM" not in spec.variants:
            v.append("OCM must be included whenever NMSE output is requested "
                     "(any non-OCM variant implies NMSE against OCM)")

    try:
        PPolicy.parse(spec.p_policy)
    except (ValueError, TypeError, AttributeError) as exc:
        v.append(f"p_policy: {exc}")

    if spec.output_format not in ("csv", "json"):
        v.append(f"output_format must be 'csv' or 'json', got {spec.output_format!r}")
    return v


def distance_grid(spec: SweepSpec) -> tuple[float, ...]:
    """The d0 grid (in wavelengths) a distance sweep will visit."""
    rng = spec.d0_range_lambda
    count = int(round((rng["stop"] - rng["start"]) / rng["step"])) + 1
    points = []
    for i in range(count):
        value = rng["start"] + i * rng["step"]
        if value <= rng["stop"] + 1e-9 * rng["step"]:
            points.append(value)
    return tuple(points)


_ASSEMBLERS = {
    "OCM": lambda tx, rx, link, k0: assemble_ocm(tx, rx, link, k0),
    "PSCM": lambda tx, rx, link, k0: assemble_pscm(tx, rx, link, k0, "1234"),
    "PSCM123": lambda tx, rx, link, k0: assemble_pscm(tx, rx, link, k0, "123"),
    "PSCM12": lambda tx, rx, link, k0: assemble_pscm(tx, rx, link, k0, "12"),
    "FSCM": lambda tx, rx, link, k0: assemble_fscm(tx, rx, link, k0),
}


def _evaluate_point(spec: SweepSpec, tx_grid, d0_lambda: float, x_value, dump_k: int = 0):
    """Assemble, score and decompose every requested variant at one point."""
    lam = SPEED_OF_LIGHT / spec.frequency
    spacing = spec.spacing_lambda * lam
    area = spacing * spacing
    tx = build_planar_surface(tx_grid[0], tx_grid[1], spacing)
    rx = build_planar_surface(spec.rx_grid[0], spec.rx_grid[1], spacing)
    link = LinkGeometry.from_angles(d0_lambda * lam)
    cfg = PhysicalConfig(
        frequency=spec.frequency,
        a_t=area,
        a_r=area,
        noise_var=1.0,
        total_power=10.0 ** (spec.snr_db / 10.0) * area,
    )
    policy = PPolicy.parse(spec.p_policy)
    k0 = cfg.k0

    order = sorted(spec.variants)
    mats = {name: _ASSEMBLERS[name](tx, rx, link, k0) for name in order}
    nmse_map = {}
    if "OCM" in mats:
        ref = mats["OCM"]
        nmse_map = {name: nmse(mats[name], ref) for name in order if name != "OCM"}
    cap_map = {}
    sv_map = {}
    scale = float(np.sqrt(cfg.a_r * cfg.a_t))
    for name in order:
        eigs = eigenchannel_decompose(mats[name], cfg, policy)
        cap_map[name] = capacity(eigs, cfg)
        if dump_k > 0:
            sv_map[name] = tuple(float(g) / scale for g in eigs.gains[:dump_k])
    return SweepResultRow(
        x_value=x_value,
        d0_lambda=float(d0_lambda),
        d_r_lambda=rayleigh_distance(tx, rx, lam) / lam,
        nmse=nmse_map,
        capacity=cap_map,
        singular_values=sv_map,
    )


def _run_points(point_args, workers: int):
    """Evaluate points concurrently, preserving input order in the output."""
    if workers <= 1:
        return [_evaluate_point(*args) for args in point_args]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_evaluate_point, *args) for args in point_args]
        return [f.result() for f in futures]


def run_distance_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepResultRow]:
    """One row per d0 grid point, ascending in d0."""
    _require_valid(spec, "distance")
    grid = distance_grid(spec)
    args = [(spec, spec.tx_grid, d0, d0) for d0 in grid]
    return _run_points(args, workers)


def run_element_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepResultRow]:
    """One row per (N, d0) pair, ordered by N then d0."""
    _require_valid(spec, "tx-elements")
    args = []
    for side in sorted(spec.n_list):
        for d0 in sorted(spec.d0_range_lambda):
            args.append((spec, (side, side), d0, side * side))
    return _run_points(args, workers)


def run_single_point(spec: SweepSpec, dump_singular_values: int = 0) -> SweepResultRow:
    """A single sweep point, optionally dumping the top singular values."""
    _require_valid(spec, "single-point")
    (d0,) = spec.d0_range_lambda
    return _evaluate_point(spec, spec.tx_grid, d0, d0, dump_k=dump_singular_values)


def _require_valid(spec: SweepSpec, experiment: str):
    if spec.experiment != experiment:
        raise ConfigError([f"spec experiment {spec.experiment!r} does not match {experiment!r}"])
    violations = validate_spec(spec)
    if violations:
        raise ConfigError(violations)


def _columns(rows, variants):
    order = sorted(variants)
    with_nmse = "OCM" in order and len(order) > 1
    cols = ["x_value", "d_R_lambda", "d0_lambda"]
    for name in order:
        cols.append(f"capacity_{name}")
        if with_nmse and name != "OCM":
            cols.append(f"nmse_{name}")
    sv_counts = {len(row.singular_values.get(name, ())) for row in rows for name in order}
    sv_counts.discard(0)
    if sv_counts:
        k = max(sv_counts)
        for name in order:
            cols.extend(f"sv{j}_{name}" for j in range(1, k + 1))
    return cols, order


def _row_cells(row: SweepResultRow, cols):
    values = {
        "x_value": row.x_value,
        "d_R_lambda": row.d_r_lambda,
        "d0_lambda": row.d0_lambda,
    }
    for name, val in row.capacity.items():
        values[f"capacity_{name}"] = val
    for name, val in row.nmse.items():
        values[f"nmse_{name}"] = val
    for name, svs in row.singular_values.items():
        for j, s in enumerate(svs, start=1):
            values[f"sv{j}_{name}"] = s
    return [repr(values[c]) if c in values else "" for c in cols]


def rows_to_csv(rows: list[SweepResultRow], variants) -> str:
    """Deterministic CSV text for a list of result rows (header mandatory)."""
    cols, _ = _columns(rows, variants)
    lines = [",".join(cols)]
    lines.extend(",".join(_row_cells(row, cols)) for row in rows)
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[SweepResultRow], variants) -> str:
    """Deterministic JSON text mirroring the CSV content."""
    payload = []
    for row in rows:
        entry = {
            "x_value": row.x_value,
            "d_R_lambda": row.d_r_lambda,
            "d0_lambda": row.d0_lambda,
            "capacity": dict(sorted(row.capacity.items())),
            "nmse": dict(sorted(row.nmse.items())),
        }
        if row.singular_values:
            entry["singular_values"] = {
                k: list(v) for k, v in sorted(row.singular_values.items())
            }
        payload.append(entry)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_rows(rows: list[SweepResultRow], spec: SweepSpec) -> str:
    """Render rows per the spec's format and write them to its output path.

    Returns the rendered text; with no output path the text goes to
    stdout instead of a file.
    """
    text = (rows_to_csv if spec.output_format == "csv" else rows_to_json)(rows, spec.variants)
    if spec.output_path is None:
        sys.stdout.write(text)
    else:
        with open(spec.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
