"""Plain-text run configuration and run manifests.

Config files are key = value lines with '#' comments.  Recognized keys:

    domain     = a1 b1 a2 b2 a3 b3      physical box bounds
    grid       = N1 N2 N3               physical grid sizes (even)
    mirror     = yes yes yes            per-direction mirror flags
    final_time = 20.0
    steps      = 200
    snapshots  = 11                     states saved, including t=0 and t=T
    vortex     = px py pz  dx dy dz  charge    (repeatable, may be absent)

A manifest is the same syntax written next to a finished run, extended with
one snapshot_file line per saved state; reading it back reproduces the
configuration exactly (bounds and times are written with full precision).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .fourier import DomainBox, GridSize
from .gpe import SimConfig
from .vortex import VortexSpec

__all__ = ["RunSetup", "RunManifest", "parse_config", "load_config", "write_manifest", "read_manifest"]

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class RunSetup:
    config: SimConfig
    vortices: tuple[VortexSpec, ...]


@dataclass(frozen=True)
class RunManifest:
    setup: RunSetup
    snapshot_files: tuple[str, ...]


def _parse_bool(token: str, where: str) -> bool:
    t = token.lower()
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise ValueError(f"{where}: expected a boolean, got {token!r}")


def _parse_items(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        yield lineno, key.strip().lower(), val.split()


def parse_config(text: str) -> RunSetup:
    values: dict[str, list[str]] = {}
    vortices: list[VortexSpec] = []
    snapshot_files: list[str] = []
    for lineno, key, toks in _parse_items(text):
        where = f"line {lineno}"
        if key == "vortex":
            if len(toks) != 7:
                raise ValueError(
                    f"{where}: vortex needs 7 numbers (point, direction, charge), got {len(toks)}"
                )
            nums = [float(t) for t in toks]
            vortices.append(
                VortexSpec(tuple(nums[0:3]), tuple(nums[3:6]), int(nums[6]))
            )
        elif key == "snapshot_file":
            snapshot_files.extend(toks)
        elif key in ("domain", "grid", "mirror", "final_time", "steps", "snapshots"):
            if key in values:
                raise ValueError(f"{where}: duplicate key {key!r}")
            values[key] = toks
        else:
            raise ValueError(f"{where}: unknown key {key!r}")

    missing = {"domain", "grid", "mirror", "final_time", "steps"} - set(values)
    if missing:
        raise ValueError(f"missing required keys: {', '.join(sorted(missing))}")

    dom = [float(t) for t in values["domain"]]
    if len(dom) != 6:
        raise ValueError("domain needs 6 numbers: a1 b1 a2 b2 a3 b3")
    grid = [int(t) for t in values["grid"]]
    if len(grid) != 3:
        raise ValueError("grid needs 3 sizes")
    mirror = [_parse_bool(t, "mirror") for t in values["mirror"]]
    if len(mirror) != 3:
        raise ValueError("mirror needs 3 flags")

    config = SimConfig(
        domain=DomainBox((dom[0], dom[2], dom[4]), (dom[1], dom[3], dom[5])),
        grid=GridSize(tuple(grid)),
        mirror=tuple(mirror),
        final_time=float(values["final_time"][0]),
        steps=int(values["steps"][0]),
        snapshots=int(values["snapshots"][0]) if "snapshots" in values else 2,
    )
    return RunSetup(config, tuple(vortices))


def load_config(path) -> RunSetup:
    return parse_config(Path(path).read_text())


def _format_setup(setup: RunSetup) -> list[str]:
    c = setup.config
    a, b = c.domain.a, c.domain.b
    lines = [
        "domain = " + " ".join(repr(v) for v in (a[0], b[0], a[1], b[1], a[2], b[2])),
        "grid = {} {} {}".format(*c.grid.n),
        "mirror = " + " ".join("yes" if m else "no" for m in c.mirror),
        f"final_time = {c.final_time!r}",
        f"steps = {c.steps}",
        f"snapshots = {c.snapshots}",
    ]
    for v in setup.vortices:
        lines.append(
            "vortex = "
            + " ".join(repr(float(x)) for x in v.position)
            + "  "
            + " ".join(repr(float(x)) for x in v.direction)
            + f"  {v.charge}"
        )
    return lines


def write_manifest(path, manifest: RunManifest) -> None:
    lines = _format_setup(manifest.setup)
    for name in manifest.snapshot_files:
        lines.append(f"snapshot_file = {name}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_manifest(path) -> RunManifest:
    text = Path(path).read_text()
    setup = parse_config(text)
    files = []
    for _, key, toks in _parse_items(text):
        if key == "snapshot_file":
            files.extend(toks)
    return RunManifest(setup, tuple(files))
