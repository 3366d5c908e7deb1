"""Observer error simulation and residual-based fault attribution.

The observer error e obeys de/dt = (A + G C) e - L f with e(0) = 0, and
the innovation r = C e is what a monitor actually sees.  When the
per-fault output subspaces form a direct sum, each sample of r splits
uniquely into per-fault components, and a component staying at zero
clears its channel: r_i can only be excited by f_i.  The converse does
not hold, so an inactive flag is evidence of absence, not proof.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .numeric import FriendGain, NumericTriple
from .subspaces import image

RELATIVE_ISOLATION_THRESHOLD = 1e-6
_DIVERGENCE_LIMIT = 1e12
_RK4_STABILITY_MARGIN = 2.5


@dataclass(frozen=True)
class FaultSignal:
    """Descriptor of one scalar fault channel signal.

    Kinds: ``zero``; ``step`` (amplitude from onset on); ``sinusoid``
    (amplitude * sin(2*pi*freq*(t - onset)) from onset on).
    """

    kind: str
    onset: float = 0.0
    amplitude: float = 0.0
    freq: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("zero", "step", "sinusoid"):
            raise ValueError(f"unknown fault signal kind {self.kind!r}")
        if self.kind == "sinusoid" and self.freq is None:
            raise ValueError("sinusoid fault signal needs a frequency")
        if self.onset < 0:
            raise ValueError("fault onset must be nonnegative")

    @classmethod
    def zero(cls):
        return cls(kind="zero")

    @classmethod
    def step(cls, onset=0.0, amplitude=1.0):
        return cls(kind="step", onset=onset, amplitude=amplitude)

    @classmethod
    def sinusoid(cls, freq, amplitude=1.0, onset=0.0):
        return cls(kind="sinusoid", onset=onset, amplitude=amplitude, freq=freq)

    @classmethod
    def from_jsonable(cls, data):
        kind = data.get("kind")
        if kind == "zero":
            return cls.zero()
        if kind == "step":
            return cls.step(onset=float(data.get("onset", 0.0)),
                            amplitude=float(data.get("amplitude", 1.0)))
        if kind == "sinusoid":
            if "freq" not in data:
                raise ValueError("sinusoid fault signal needs a 'freq' field")
            return cls.sinusoid(freq=float(data["freq"]),
                                amplitude=float(data.get("amplitude", 1.0)),
                                onset=float(data.get("onset", 0.0)))
        raise ValueError(f"unknown fault signal kind {kind!r}")

    def value(self, t: float) -> float:
        if self.kind == "zero" or t < self.onset:
            return 0.0
        if self.kind == "step":
            return self.amplitude
        return self.amplitude * np.sin(2.0 * np.pi * self.freq * (t - self.onset))


@dataclass(frozen=True)
class FaultScenario:
    """Simulation horizon, step size, and one signal per fault channel."""

    duration: float
    step: float
    fault_signals: tuple

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("integration step must be positive")
        if self.duration < self.step:
            raise ValueError("duration must be at least one step")
        signals = tuple(self.fault_signals)
        for sig in signals:
            if sig.kind != "zero" and sig.onset > self.duration:
                raise ValueError("fault onset lies beyond the scenario duration")
        object.__setattr__(self, "fault_signals", signals)

    def fault_vector(self, t: float) -> np.ndarray:
        return np.array([sig.value(t) for sig in self.fault_signals])

    @classmethod
    def from_jsonable(cls, data):
        try:
            duration = float(data["duration"])
            step = float(data["step"])
            faults = data["faults"]
        except KeyError as exc:
            raise ValueError(f"scenario is missing field {exc}") from exc
        return cls(duration=duration, step=step,
                   fault_signals=tuple(FaultSignal.from_jsonable(f)
                                       for f in faults))


@dataclass(frozen=True)
class ResidualTrace:
    """Sampled innovation r(t) and, once decomposed, its components.

    ``components`` has shape (q, len(times), p); the decomposition
    defect is the worst reconstruction error max_t |r(t) - sum r_i(t)|.
    """

    times: np.ndarray
    r: np.ndarray
    components: Optional[np.ndarray] = None
    decomposition_defect: float = 0.0

    def __post_init__(self):
        for name in ("times", "r", "components"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr, dtype=float)
                arr.flags.writeable = False
                object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class IsolationReport:
    """Per-channel activity flags from the component peak norms."""

    active: tuple
    peak_norms: tuple
    threshold: float

    def to_jsonable(self):
        return {
            "active": list(self.active),
            "peak_norms": list(self.peak_norms),
            "threshold": self.threshold,
        }


def simulate_error_system(sys: NumericTriple, gain,
                          scenario: FaultScenario) -> ResidualTrace:
    """Integrate the observer error dynamics over the scenario.

    Fixed-step classical Runge-Kutta on de/dt = (A + G C) e - L f(t)
    from e(0) = 0, sampling r = C e on the step grid.  Warns when the
    step is too large for the closed-loop spectrum (with a suggested
    step) and when the error trajectory exceeds 1e12; the run continues
    either way, since observer stability is outside this model's scope.
    """
    g = gain.G if isinstance(gain, FriendGain) else np.asarray(gain, dtype=float)
    if g.shape != (sys.n, sys.p):
        raise ValueError(f"gain must be {sys.n}x{sys.p}, got {g.shape}")
    if len(scenario.fault_signals) != sys.q:
        raise ValueError(
            f"scenario has {len(scenario.fault_signals)} fault signals, "
            f"system has {sys.q} channels")

    closed = sys.A + g @ sys.C
    spectral = float(np.max(np.abs(np.linalg.eigvals(closed)))) if sys.n else 0.0
    if spectral > 0 and scenario.step * spectral > _RK4_STABILITY_MARGIN:
        warnings.warn(
            f"integration step {scenario.step:g} is large for the closed-loop "
            f"spectrum (|lambda|max = {spectral:g}); suggested step <= "
            f"{_RK4_STABILITY_MARGIN / spectral:g}", RuntimeWarning)

    h = scenario.step
    n_steps = max(1, int(round(scenario.duration / h)))
    times = np.linspace(0.0, n_steps * h, n_steps + 1)

    def rhs(t, e):
        return closed @ e - sys.L @ scenario.fault_vector(t)

    e = np.zeros(sys.n)
    outputs = np.empty((n_steps + 1, sys.p))
    outputs[0] = sys.C @ e
    diverged = False
    for k in range(n_steps):
        t = times[k]
        k1 = rhs(t, e)
        k2 = rhs(t + h / 2.0, e + (h / 2.0) * k1)
        k3 = rhs(t + h / 2.0, e + (h / 2.0) * k2)
        k4 = rhs(t + h, e + h * k3)
        e = e + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        outputs[k + 1] = sys.C @ e
        if not diverged and np.max(np.abs(e)) > _DIVERGENCE_LIMIT:
            diverged = True
            warnings.warn(
                f"error trajectory exceeded {_DIVERGENCE_LIMIT:g} at "
                f"t = {times[k + 1]:g}; the observer is diverging",
                RuntimeWarning)
    return ResidualTrace(times=times, r=outputs)


def decompose_residual(trace: ResidualTrace, output_subspaces) -> ResidualTrace:
    """Split every innovation sample over the per-fault output subspaces.

    Requires the subspaces to form a direct sum (dimensions add up),
    otherwise the split is not unique and the call is rejected.  Samples
    lying outside the sum, which can only happen numerically, are
    projected onto it and the worst projection error is reported as the
    decomposition defect.
    """
    subspaces = list(output_subspaces)
    if not subspaces:
        raise ValueError("need at least one output subspace")
    p = trace.r.shape[1]
    for s in subspaces:
        if s.ambient_dim != p:
            raise ValueError("output subspaces must live in the innovation space")
    tol = subspaces[0].tol
    dims = [s.dim for s in subspaces]
    stacked = np.hstack([s.basis for s in subspaces])
    if stacked.shape[1] and image(stacked, tol).dim != sum(dims):
        raise ValueError("output subspaces are not independent; "
                         "the residual decomposition is not unique")

    samples = trace.r.T
    n_times = trace.r.shape[0]
    components = np.zeros((len(subspaces), n_times, p))
    if stacked.shape[1]:
        coords = np.linalg.lstsq(stacked, samples, rcond=None)[0]
        reconstruction = stacked @ coords
        defect = float(np.max(np.linalg.norm(samples - reconstruction, axis=0)))
        offset = 0
        for i, (s, k) in enumerate(zip(subspaces, dims)):
            if k:
                components[i] = (s.basis @ coords[offset:offset + k]).T
            offset += k
    else:
        defect = float(np.max(np.linalg.norm(samples, axis=0))) if n_times else 0.0
    return ResidualTrace(times=trace.times, r=trace.r,
                         components=components, decomposition_defect=defect)


def isolate(trace: ResidualTrace, threshold=None) -> IsolationReport:
    """Flag each fault channel whose component peak exceeds the threshold.

    With ``threshold=None`` the cut is relative: 1e-6 times the peak
    innovation norm, which survives unit changes.  A flagged channel was
    excited; an unflagged one produced no evidence, which is weaker than
    proof of absence.
    """
    if trace.components is None:
        raise ValueError("trace has no components; run decompose_residual first")
    peaks = tuple(float(np.max(np.linalg.norm(comp, axis=1)))
                  for comp in trace.components)
    if threshold is None:
        peak_r = float(np.max(np.linalg.norm(trace.r, axis=1)))
        threshold = RELATIVE_ISOLATION_THRESHOLD * peak_r
    elif threshold < 0:
        raise ValueError("threshold must be nonnegative")
    active = tuple(peak > threshold for peak in peaks)
    return IsolationReport(active=active, peak_norms=peaks,
                           threshold=float(threshold))


def write_trace_csv(trace: ResidualTrace, stream) -> None:
    """Write the trace as CSV: t, r_1..r_p, then r^(i)_1..r^(i)_p per fault."""
    p = trace.r.shape[1]
    header = ["t"] + [f"r_{j + 1}" for j in range(p)]
    if trace.components is not None:
        for i in range(trace.components.shape[0]):
            header += [f"r^({i + 1})_{j + 1}" for j in range(p)]
    stream.write(",".join(header) + "\n")
    for k, t in enumerate(trace.times):
        row = [t] + list(trace.r[k])
        if trace.components is not None:
            for comp in trace.components:
                row += list(comp[k])
        stream.write(",".join(format(v, ".17g") for v in row) + "\n")
