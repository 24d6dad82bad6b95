"""CSV artifacts of a run: probe series, heatmap grids and result tables.

Every file starts with ``#`` comment lines carrying the scenario hash and
the mesh, then a header row.  Floats are written with 17 significant digits
so that reruns are byte-identical and values survive a round trip.
"""

from pathlib import Path

import numpy as np

from .config import scenario_hash
from .core import Phase
from .errors import OutputError, OutputExistsError


def fmt(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def provenance(trajectory):
    return {
        "scenario_sha256": scenario_hash(trajectory.scenario),
        "dx": fmt(trajectory.scenario.dx),
        "dt": fmt(trajectory.dt),
        "courant": fmt(trajectory.courant),
        "scheme": trajectory.scheme,
    }


class OutputDir:
    """Collects files for one output directory and refuses to clobber."""

    def __init__(self, path, force=False):
        self.path = Path(path)
        self.force = force
        self.written = []

    def target(self, name):
        path = self.path / name
        if path.exists() and not self.force:
            raise OutputExistsError(f"{path} exists; pass --force to overwrite")
        return path

    def write_table(self, name, header, rows, meta=None):
        path = self.target(name)
        lines = [f"# {k}={v}" for k, v in (meta or {}).items()]
        lines.append(",".join(header))
        lines.extend(",".join(fmt(v) for v in row) for row in rows)
        try:
            self.path.mkdir(parents=True, exist_ok=True)
            path.write_text("\n".join(lines) + "\n")
        except OSError as exc:
            raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from None
        self.written.append(path)
        return path


def probe_filename(series):
    return f"probe_x{series.x_snapped:.10g}.csv"


def heatmap_rows(trajectory, field, phase):
    snaps = [s for s in trajectory.snapshots if s.phase is phase]
    return [[s.t, *getattr(s, field)] for s in snaps]


def emit_outputs(trajectory, out, reports=(), *, force=False):
    """Write every artifact of ``trajectory`` into ``out``.

    ``out`` is a directory path or an :class:`OutputDir`.  ``reports`` is a
    sequence of ``(name, header, rows)`` tables.  Returns the written paths.
    """
    target = out if isinstance(out, OutputDir) else OutputDir(out, force)
    meta = provenance(trajectory)
    names = [probe_filename(s) for s in trajectory.probes]
    names += [f"heatmap_{f}_{ph.value}.csv" for f in ("v", "p") for ph in Phase]
    names += [f"{name}.csv" for name, _, _ in reports]
    for name in names:
        target.target(name)

    for series in trajectory.probes:
        rows = zip(series.t, [series.x_snapped] * len(series.t), series.rho, series.v, series.p)
        target.write_table(probe_filename(series), ("t", "x_snapped", "rho", "v", "p"), rows,
                           {**meta, "x_requested": fmt(series.x_requested)})
    grid = trajectory.scenario.grid
    for field in ("v", "p"):
        for phase in Phase:
            x = grid.nodes(phase)
            target.write_table(f"heatmap_{field}_{phase.value}.csv", ["t", *map(fmt, x)],
                               heatmap_rows(trajectory, field, phase), {**meta, "field": field})
    for name, header, rows in reports:
        target.write_table(f"{name}.csv", header, rows, meta)
    return list(target.written)
