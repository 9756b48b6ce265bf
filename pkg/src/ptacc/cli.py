"""Command-line front end.

    ptacc <subcommand> [--preset NAME] [--config FILE] [flags]

Subcommands: spectrum, boundary, energy-series, density-map, evolve, verify.
Exit codes: 0 success, 1 usage, 2 numerical failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .errors import DomainError, PtaccError, UsageError

SUBCOMMANDS = ("spectrum", "boundary", "energy-series", "density-map", "evolve", "verify")
Q_LIMIT = 200.0

# Illustrative parameter choices, one per regime (Omega = 0.88 and Omega = -1).
PRESETS = {
    "pt-symmetric": {"omega": 1.0, "alpha": 0.3, "beta": 0.1, "kappa": 1.0, "variant": 2,
                     "n": 0, "t_max": 10.0},
    "pt-broken": {"omega": 1.0, "alpha": 1.0, "beta": 0.5, "kappa": 1.0, "variant": 2,
                  "n": 0, "t_max": 10.0},
}


@dataclass(frozen=True)
class RunConfig:
    omega: float = 1.0
    alpha: float = 0.3
    beta: float = 0.1
    hbar: float = 1.0
    variant: int = 2
    kappa: float = 1.0
    n: int = 0
    t_max: float = 10.0
    t_samples: int = 200
    x_samples: int = 201
    dt: float = 1e-3
    out_dir: str = "."
    formats: tuple = ("csv",)
    tol_energy: float = 1e-8
    tol_f1: float = 1e-12
    tol_shoot: float = 1e-12
    tol_cn: float = 1e-6
    preset: str | None = None

    @property
    def params(self):
        from .model import SwansonParams

        return SwansonParams(self.omega, self.alpha, self.beta, self.hbar)


_KEYS = {f.name for f in fields(RunConfig)} | {"format"}


def _convert(key: str, raw):
    try:
        if key in ("variant", "n", "t_samples", "x_samples"):
            val = float(raw)
            if not val.is_integer():
                raise ValueError
            return int(val)
        if key in ("out_dir", "preset"):
            return str(raw)
        if key in ("format", "formats"):
            items = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
            fmts = tuple(s.strip() for s in items if s.strip())
            bad = [f for f in fmts if f not in ("csv", "svg")]
            if bad or not fmts:
                raise ValueError
            return fmts
        return float(raw)
    except (TypeError, ValueError):
        raise UsageError(f"{key}: invalid value {raw!r}") from None


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"config {path}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config {path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise UsageError(f"config {path}:{lineno}: unknown key {key}")
        out[key] = val
    return out


def _validate(cfg: RunConfig) -> RunConfig:
    from .model import dyson_coefficients

    for name in ("omega", "alpha", "beta", "hbar", "kappa", "t_max", "dt"):
        if not math.isfinite(getattr(cfg, name)):
            raise UsageError(f"{name}: must be finite")
    if cfg.kappa <= 0:
        raise UsageError(f"kappa: must be positive, got {cfg.kappa}")
    if cfg.hbar <= 0:
        raise UsageError(f"hbar: must be positive, got {cfg.hbar}")
    if cfg.t_max <= 0:
        raise UsageError(f"t_max: must be positive, got {cfg.t_max}")
    if cfg.dt <= 0:
        raise UsageError(f"dt: must be positive, got {cfg.dt}")
    if cfg.t_samples < 2 or cfg.x_samples < 2:
        raise UsageError("t_samples and x_samples must be at least 2")
    if cfg.n < 0:
        raise UsageError("n: must be nonnegative")
    if cfg.variant not in (1, 2, 3):
        raise UsageError(f"variant: expected 1, 2 or 3, got {cfg.variant}")
    try:
        v = dyson_coefficients(cfg.params, cfg.variant)
    except DomainError as exc:
        raise UsageError(f"variant: {exc}") from None
    q = abs(cfg.kappa / (2.0 * cfg.hbar * v.a_coeff))
    if q > Q_LIMIT:
        raise UsageError(f"kappa: q = kappa/(2 hbar A) = {q:.6g} exceeds the limit {Q_LIMIT:g}")
    return cfg


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ptacc", description="Swanson-model quantum Fermi accelerator")
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--config", help="flat key=value file")
    for name in ("omega", "alpha", "beta", "hbar", "kappa", "t-max", "dt",
                 "tol-energy", "tol-f1", "tol-shoot", "tol-cn"):
        p.add_argument(f"--{name}", dest=name.replace("-", "_"))
    for name in ("variant", "n", "t-samples", "x-samples"):
        p.add_argument(f"--{name}", dest=name.replace("-", "_"))
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--format", dest="format", help="csv, svg or csv,svg")
    return p


def parse_config(argv=None) -> tuple[str, RunConfig]:
    """Defaults, then preset, then config file, then explicit flags."""
    ns = build_parser().parse_args(argv)
    values: dict = {}
    env_out = os.environ.get("PTACC_OUT_DIR")
    if env_out:
        values["out_dir"] = env_out
    file_vals = read_config_file(ns.config) if ns.config else {}
    preset = ns.preset or file_vals.pop("preset", None)
    if preset is not None:
        if preset not in PRESETS:
            raise UsageError(f"preset: unknown preset {preset}")
        values.update(PRESETS[preset])
        values["preset"] = preset
    file_vals.pop("preset", None)
    values.update(file_vals)
    for key in _KEYS - {"preset", "formats"}:
        val = getattr(ns, key, None)
        if val is not None:
            values[key] = val
    cfg_kwargs = {}
    for key, raw in values.items():
        conv = _convert(key, raw)
        cfg_kwargs["formats" if key == "format" else key] = conv
    return ns.command, _validate(RunConfig(**cfg_kwargs))


def _write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            # repr gives the shortest string that round-trips a float
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def _out(cfg: RunConfig, name: str) -> Path:
    d = Path(cfg.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d / name


def _times(cfg: RunConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.t_max, cfg.t_samples)


def cmd_spectrum(cfg: RunConfig) -> int:
    from .dynamics import oscillator_strength
    from .eigen import fd_oracle, solve_eigenvalues
    from .model import dyson_coefficients

    v = dyson_coefficients(cfg.params, cfg.variant)
    q = oscillator_strength(cfg.kappa, v.a_coeff, cfg.hbar)
    states = solve_eigenvalues(q, cfg.n, cfg.tol_shoot)
    fd = fd_oracle(q, 4000, cfg.n)
    rows = [(s.n, s.parity.value, s.epsilon, s.c_norm, s.q, float(f), abs(s.epsilon - f) / f)
            for s, f in zip(states, fd)]
    _write_csv(_out(cfg, "spectrum.csv"),
               ["n", "parity", "epsilon", "c_norm", "q", "oracle_epsilon", "rel_dev"], rows)
    return 0


def cmd_boundary(cfg: RunConfig) -> int:
    from .boundary import ep_residual, eval_boundary, standard_trajectory, tau_of_t
    from .model import dyson_coefficients

    v = dyson_coefficients(cfg.params, cfg.variant)
    traj = standard_trajectory(cfg.kappa, v.ab_product, cfg.t_max)
    t = _times(cfg)
    ell, ell_t, ell_tt = eval_boundary(traj, t)
    rows = zip(t, ell, ell_t, ell_tt, tau_of_t(traj, t), ep_residual(traj, t))
    if "csv" in cfg.formats:
        _write_csv(_out(cfg, "boundary.csv"), ["t", "ell", "ell_t", "ell_tt", "tau", "ep_residual"], rows)
    if "svg" in cfg.formats:
        from .plot import line_plot

        _out(cfg, "boundary.svg").write_text(line_plot({"l(t)": (t, ell)}, "Wall position", "t", "l"))
    return 0


def cmd_energy_series(cfg: RunConfig) -> int:
    from .dynamics import Formulation, build_spec, energy_series
    from .model import regime_of

    spec = build_spec(cfg.params, cfg.variant, cfg.kappa, cfg.n, cfg.t_max)
    t = _times(cfg)
    es = energy_series(spec, t)
    regime = regime_of(cfg.params).value
    rows = []
    for f in Formulation:
        for tt, e in zip(t, es.values[f]):
            rows.append((float(tt), float(e.real), float(e.imag), f.value, cfg.variant, regime))
    if "csv" in cfg.formats:
        _write_csv(_out(cfg, "energy_series.csv"),
                   ["t", "E_re", "E_im", "formulation", "variant", "regime"], rows)
    if "svg" in cfg.formats:
        from .plot import line_plot

        series = {f.value: (t, es.values[f].real) for f in Formulation}
        _out(cfg, "energy_series.svg").write_text(line_plot(series, "Average energy", "t", "Re E"))
    return 0


def cmd_density_map(cfg: RunConfig) -> int:
    from .dynamics import build_spec, density_field

    spec = build_spec(cfg.params, cfg.variant, cfg.kappa, cfg.n, cfg.t_max)
    df = density_field(spec, _times(cfg), cfg.x_samples)
    if "csv" in cfg.formats:
        rows = ((float(t), float(x), float(r), float(ell))
                for t, xs, rs, ell in zip(df.times, df.x, df.rho, df.ell)
                for x, r in zip(xs, rs))
        _write_csv(_out(cfg, "density_map.csv"), ["t", "x", "rho", "ell"], rows)
    if "svg" in cfg.formats:
        from .plot import heatmap, line_plot

        _out(cfg, "density_map.svg").write_text(
            heatmap(df.times, df.y, df.rho * df.ell[:, None], "Density in y = x/l (rho * l)", "t", "y"))
        _out(cfg, "density_radius.svg").write_text(line_plot(
            {"l(t)": (df.times, df.ell), "99% mass radius": (df.times, df.radius99)},
            "Spreading", "t", "x"))
    return 0


def cmd_evolve(cfg: RunConfig) -> int:
    from .dynamics import build_spec
    from .pde import evolve_hermitian, initial_state

    spec = build_spec(cfg.params, cfg.variant, cfg.kappa, cfg.n, cfg.t_max)
    t = _times(cfg)
    state = initial_state(spec, 0.0, cfg.x_samples)
    rows = []
    for k, tt in enumerate(t):
        if k > 0:
            state = evolve_hermitian(spec, float(t[k - 1]), float(tt), cfg.x_samples, cfg.dt,
                                     state=state, tol_cn=cfg.tol_cn)
        rows.extend((float(tt), float(x), float(p.real), float(p.imag)) for x, p in zip(state.x, state.psi))
    _write_csv(_out(cfg, "evolve.csv"), ["t", "x", "re", "im"], rows)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    from .verify import run_checks

    checks = run_checks(cfg.params, cfg.variant, cfg.kappa, cfg.n, cfg.t_max, cfg.tol_energy)
    width = max(len(c.name) for c in checks)
    print(f"{'check':<{width}}  {'value':>12}  {'limit':>8}  result")
    for c in checks:
        print(f"{c.name:<{width}}  {c.value:12.3e}  {c.threshold:8.0e}  {'PASS' if c.passed else 'FAIL'}")
    return 0 if all(c.passed for c in checks) else 3


COMMANDS = {
    "spectrum": cmd_spectrum,
    "boundary": cmd_boundary,
    "energy-series": cmd_energy_series,
    "density-map": cmd_density_map,
    "evolve": cmd_evolve,
    "verify": cmd_verify,
}


def run_subcommand(cfg: RunConfig, name: str) -> int:
    if name not in COMMANDS:
        raise UsageError(f"unknown subcommand {name}")
    return COMMANDS[name](cfg)


def _error_line(exc: Exception) -> str:
    module = getattr(exc, "module", "ptacc")
    code = getattr(exc, "code", type(exc).__name__)
    detail = " ".join(str(exc).split()) or type(exc).__name__
    return f"ERROR {module} {code} {detail}"


def main(argv=None) -> int:
    try:
        name, cfg = parse_config(argv)
    except UsageError as exc:
        print(_error_line(exc), file=sys.stderr)
        return 1
    try:
        return run_subcommand(cfg, name)
    except UsageError as exc:
        print(_error_line(exc), file=sys.stderr)
        return 1
    except (PtaccError, ArithmeticError, ValueError) as exc:
        print(_error_line(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
