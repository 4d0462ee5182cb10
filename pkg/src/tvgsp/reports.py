"""Run reports, benchmark tables, and the energy-compaction experiment."""

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .transforms import dft, gft, idft, igft, ijft, jft, validate_signal
from .filtering import filter_cheby2d, filter_exact, filter_ffc


@dataclass
class RunReport:
    """Machine-readable record of one CLI run.

    Metrics must be finite; timings are wall-clock milliseconds per stage
    (inherently non-reproducible, everything else is deterministic under a
    fixed seed).
    """

    command: str
    params: dict = field(default_factory=dict)
    timings_ms: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)

    def __post_init__(self):
        for key, value in self.metrics.items():
            if isinstance(value, float) and not np.isfinite(value):
                raise ValidationError(f"metric '{key}' is not finite: {value}")

    def to_json(self):
        payload = {"command": self.command, "params": self.params,
                   "timings_ms": self.timings_ms, "metrics": self.metrics,
                   "outputs": self.outputs}
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        return cls(command=payload["command"], params=payload["params"],
                   timings_ms=payload["timings_ms"],
                   metrics=payload["metrics"], outputs=payload["outputs"])


class StageTimer:
    """Collects per-stage wall times for a :class:`RunReport`."""

    def __init__(self):
        self.timings_ms = {}

    @contextmanager
    def stage(self, name):
        start = time.perf_counter()
        yield
        self.timings_ms[name] = (time.perf_counter() - start) * 1e3


@dataclass
class CompactionCurve:
    """Normalized reconstruction errors after percentile thresholding,
    one series per transform."""

    percentiles: list
    errors: dict

    def rows(self):
        for name in sorted(self.errors):
            for p, err in zip(self.percentiles, self.errors[name]):
                yield name, p, err


def compaction_experiment(X, g, eig, percentiles):
    """Energy-compaction comparison of DFT, GFT, and JFT.

    For each transform and percentile ``p`` the coefficients with magnitude
    strictly below the p-th percentile are zeroed and the signal is rebuilt;
    the reported error is ``||X_p - X||_F / ||X||_F``. Strict thresholding
    keeps ties at the percentile, so conjugate-symmetric pairs survive or
    die together and reconstructions of real signals stay real.
    """
    X = validate_signal(X)
    percentiles = [float(p) for p in percentiles]
    if any(not 0 <= p < 100 for p in percentiles):
        raise ValidationError("percentiles must lie in [0, 100)")
    norm = np.linalg.norm(X)
    transforms = {
        "dft": (dft(X), idft),
        "gft": (gft(X, eig), lambda S: igft(S, eig)),
        "jft": (jft(X, eig), lambda S: ijft(S, eig, real=False)),
    }
    errors = {name: [] for name in transforms}
    for name, (coeffs, inverse) in transforms.items():
        mags = np.abs(coeffs)
        for p in percentiles:
            threshold = np.percentile(mags, p)
            kept = np.where(mags < threshold, 0.0, coeffs)
            Xp = inverse(kept)
            err = np.linalg.norm(Xp - X) / max(norm, 1e-300)
            errors[name].append(float(err))
    return CompactionCurve(percentiles=percentiles, errors=errors)


def filter_error_table(X, g, eig, kernels, methods, orders):
    """Accuracy/time table for the joint filter implementations.

    ``kernels`` maps names to :class:`JointKernel`; rows are
    ``(kernel, method, order, rel_error, wall_ms)`` with error measured
    against the exact spectral filter. ``cheby2d`` uses equal graph and
    time orders.
    """
    rows = []
    for kname, kernel in kernels.items():
        t0 = time.perf_counter()
        reference = filter_exact(X, kernel, eig)
        exact_ms = (time.perf_counter() - t0) * 1e3
        ref_norm = max(np.linalg.norm(reference), 1e-300)
        for method in methods:
            if method == "exact":
                rows.append((kname, "exact", 0, 0.0, exact_ms))
                continue
            for order in orders:
                t0 = time.perf_counter()
                if method == "ffc":
                    Y = filter_ffc(X, kernel, g, order)
                elif method == "cheby2d":
                    Y = filter_cheby2d(X, kernel, g, order, order)
                else:
                    raise ValidationError(f"unknown filtering method '{method}'")
                wall_ms = (time.perf_counter() - t0) * 1e3
                err = np.linalg.norm(Y - reference) / ref_norm
                rows.append((kname, method, order, float(err), wall_ms))
    return rows


def write_filter_error_csv(path, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write("kernel,method,order,rel_error,wall_ms\n")
        for kname, method, order, err, wall in rows:
            fh.write(f"{kname},{method},{order},{repr(float(err))},"
                     f"{repr(float(wall))}\n")


def write_compaction_csv(path, curve):
    with open(path, "w", newline="\n") as fh:
        fh.write("transform,percentile,rel_error\n")
        for name, p, err in curve.rows():
            fh.write(f"{name},{repr(float(p))},{repr(float(err))}\n")
