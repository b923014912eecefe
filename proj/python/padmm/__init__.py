"""Proximal ADMM with over-relaxation for nonconvex two-block problems.

Runs are described by the same JSON configuration the ``padmm`` command-line
tool reads; results come back as plain Python and numpy objects.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import _core
from ._core import (
    AssumptionError,
    ConfigError,
    DomainError,
    Error,
    c1,
    delta1,
    delta2,
    eta0,
    families,
    gamma,
    spectral_summary,
)

TRACE_COLUMNS = ("k", "res_primal", "res_dual_y", "res_dual_x", "L_beta", "delta_k", "eta_k", "merit")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CHECK_FAILED = 2
EXIT_ITERATION_CAP = 3
EXIT_CONFIG = 4


@dataclass
class RunOutput:
    exit_code: int
    message: str
    report: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)
    trace: dict = field(default_factory=dict)
    trace_csv: str = ""

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK


def parse_trace(csv_text: str) -> dict:
    """Column name -> numpy array. ``k`` is integer, the rest float."""
    if not csv_text:
        return {}
    data = np.genfromtxt(io.StringIO(csv_text), delimiter=",", names=True, ndmin=1)
    out = {name: np.asarray(data[name], dtype=float) for name in TRACE_COLUMNS}
    out["k"] = out["k"].astype(int)
    return out


def _output(raw) -> RunOutput:
    code, message, report, trace_csv, cert = raw
    return RunOutput(
        exit_code=code,
        message=message,
        report=json.loads(report) if report else {},
        certificate=json.loads(cert) if cert else {},
        trace=parse_trace(trace_csv),
        trace_csv=trace_csv,
    )


def run(config: dict, base_dir: str | os.PathLike = "") -> RunOutput:
    """Runs one configuration without writing any files."""
    return _output(_core.execute_json(json.dumps(config), os.fspath(base_dir)))


def run_config(path: str | os.PathLike) -> RunOutput:
    """Runs a configuration file and writes the outputs it names."""
    return _output(_core.run_config(os.fspath(path)))


def generate(family: str, n: int, p: int, l: int, seed: int, **params) -> dict:
    """Instance document for a generator family, usable as ``config["instance"]``."""
    return json.loads(_core.generate_json(family, n, p, l, seed, json.dumps(params) if params else ""))


__all__ = [
    "AssumptionError",
    "ConfigError",
    "DomainError",
    "Error",
    "RunOutput",
    "TRACE_COLUMNS",
    "c1",
    "delta1",
    "delta2",
    "eta0",
    "families",
    "gamma",
    "generate",
    "parse_trace",
    "run",
    "run_config",
    "spectral_summary",
]
