"""Built-in evaluation targets.

The synthetic model is a small nonlinear ODE system driven by a forcing
vector z(x) with tunable discontinuities: z_j sums, over inputs i that
mix into output j, a hinge term zeta_i * (x_i - xi_i)^delta_i switched
on at x_i >= xi_i. delta = 0 gives a jump, 1 a slope break, 2 a
curvature break. The default instance has three inputs, three outputs,
and one discontinuity of each degree.

Also here: the Ishigami function (an analytic benchmark whose variance
decomposition is known in closed form) and the trivial Y = X1 model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DivergenceError


@dataclass(frozen=True)
class SyntheticModelParams:
    """Full parameter set for the synthetic ODE model.

    mixing[i] lists the 1-based output indices receiving input i's
    forcing term. degrees, locations, scales are the per-input
    discontinuity degree delta_i, location xi_i, and scale zeta_i.
    """

    m: int
    n: int
    t_final: float
    mixing: tuple[frozenset[int], ...]
    degrees: np.ndarray
    locations: np.ndarray
    scales: np.ndarray
    y0: np.ndarray
    kappa: np.ndarray
    sigma: np.ndarray
    step: float = 0.01

    def __post_init__(self):
        for name in ("degrees", "locations", "scales", "y0", "kappa", "sigma"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (len(self.mixing) == len(self.degrees) == len(self.locations)
                == len(self.scales) == self.m):
            raise ConfigError("mixing, degrees, locations, scales must all have length m")
        if any(j < 1 or j > self.n for group in self.mixing for j in group):
            raise ConfigError("mixing indices must lie in 1..n")


def default_synthetic_params() -> SyntheticModelParams:
    """The reference instance: stored at 4-decimal precision throughout."""
    return SyntheticModelParams(
        m=3,
        n=3,
        t_final=10.0,
        mixing=(frozenset({2, 3}), frozenset({1, 2}), frozenset({1, 2, 3})),
        degrees=[0, 1, 2],
        locations=[0.5933, 0.9485, 0.1030],
        scales=[0.8788, 0.2668, 0.6661],
        y0=[-0.1900, 0.5145, 0.4094],
        kappa=[[0.7054, 0.2921, 0.7361],
               [-0.1151, 0.5206, -0.0707],
               [0.3475, -0.0579, -0.2229]],
        sigma=[[0.0294, 0.1668, 0.5788],
               [0.1046, 0.1705, 0.2749],
               [-0.1258, -0.0712, 0.7372]],
    )


def synthetic_z(x: np.ndarray, params: SyntheticModelParams) -> np.ndarray:
    """Forcing vector z(x) for a single input point; 0^0 counts as 1."""
    return synthetic_z_batch(np.asarray(x, dtype=float)[None, :], params)[0]


def synthetic_z_batch(x: np.ndarray, params: SyntheticModelParams) -> np.ndarray:
    """Forcing vectors for a (B, m) batch of points, returned as (B, n)."""
    x = np.asarray(x, dtype=float)
    z = np.zeros((x.shape[0], params.n))
    for i in range(params.m):
        active = x[:, i] >= params.locations[i]
        if params.degrees[i] == 0:
            hinge = np.ones(x.shape[0])  # pure step: (x - xi)^0 = 1 even at x = xi
        else:
            hinge = (x[:, i] - params.locations[i]) ** params.degrees[i]
        term = np.where(active, params.scales[i] * hinge, 0.0)
        for j in params.mixing[i]:
            z[:, j - 1] += term
    return z


def _rk4_to(y: np.ndarray, z: np.ndarray, params: SyntheticModelParams,
            t0: float, t1: float) -> np.ndarray:
    """Advance (n, B) state from t0 to t1 with fixed-step RK4.

    The right-hand side couples the outputs through the matrices kappa
    and sigma acting on y, with the forcing z entering elementwise:
    dy/dt = (kappa y) * z * (1 - (sigma y) * z).
    """
    kappa, sigma = params.kappa, params.sigma

    def rhs(state):
        return (kappa @ state) * z * (1.0 - (sigma @ state) * z)

    t = t0
    # overflow here is not an anomaly, it is how divergence first shows
    # up; the finiteness check below turns it into a typed error
    with np.errstate(over="ignore", invalid="ignore"):
        while t < t1 - 1e-12:
            h = min(params.step, t1 - t)
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * h * k1)
            k3 = rhs(y + 0.5 * h * k2)
            k4 = rhs(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
            if not np.all(np.isfinite(y)):
                raise DivergenceError(f"state became non-finite at t = {t:.6g}", time_reached=t)
    return y


def synthetic_eval(x: np.ndarray, times, params: SyntheticModelParams | None = None) -> np.ndarray:
    """Integrate the ODE for one input point; returns y at each requested time.

    times must be ascending and start at 0 (where y equals the initial
    condition exactly).
    """
    if params is None:
        params = default_synthetic_params()
    times = np.asarray(times, dtype=float)
    if times.size == 0 or times[0] < 0 or np.any(np.diff(times) < 0):
        raise ConfigError("times must be ascending and nonnegative")
    z = synthetic_z(x, params)[:, None]          # (n, 1)
    y = np.asarray(params.y0, dtype=float)[:, None].copy()
    out = np.empty((len(times), params.n))
    t = 0.0
    for r, t_req in enumerate(times):
        y = _rk4_to(y, z, params, t, float(t_req))
        t = float(t_req)
        out[r] = y[:, 0]
    return out


def synthetic_eval_batch(x: np.ndarray, params: SyntheticModelParams | None = None) -> np.ndarray:
    """Final-time outputs for a (B, m) batch, integrated jointly as (B, n)."""
    if params is None:
        params = default_synthetic_params()
    x = np.asarray(x, dtype=float)
    z = synthetic_z_batch(x, params).T           # (n, B)
    y = np.tile(np.asarray(params.y0, dtype=float)[:, None], (1, x.shape[0]))
    y = _rk4_to(y, z, params, 0.0, params.t_final)
    return y.T


def ishigami(x: np.ndarray) -> np.ndarray:
    """Ishigami function on [0,1]^3, inputs mapped affinely to (-pi, pi)."""
    return ishigami_batch(np.asarray(x, dtype=float)[None, :])[0]


def ishigami_batch(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    u = np.pi * (2.0 * x - 1.0)
    y = np.sin(u[:, 0]) + 7.0 * np.sin(u[:, 1]) ** 2 + 0.1 * u[:, 2] ** 4 * np.sin(u[:, 0])
    return y[:, None]


def first_input_batch(x: np.ndarray) -> np.ndarray:
    """Y = X1: the identity on the first input, for exactness checks."""
    return np.asarray(x, dtype=float)[:, :1].copy()


@dataclass
class BuiltinEvaluator:
    """In-process batch evaluator with declared input/output dimensions."""

    name: str
    m: int
    n: int
    fn: callable = field(repr=False)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        y = self.fn(np.asarray(x, dtype=float))
        return np.asarray(y, dtype=float)

    def close(self):
        pass


def builtin_evaluator(name: str) -> BuiltinEvaluator:
    """Look up a built-in model by name: synthetic, ishigami, or first_input.

    first_input accepts an optional dimension suffix, e.g. first_input:5.
    """
    if name == "synthetic":
        params = default_synthetic_params()
        return BuiltinEvaluator("synthetic", params.m, params.n,
                                lambda x: synthetic_eval_batch(x, params))
    if name == "ishigami":
        return BuiltinEvaluator("ishigami", 3, 1, ishigami_batch)
    if name.startswith("first_input"):
        dim = 3
        if ":" in name:
            dim = int(name.split(":", 1)[1])
        return BuiltinEvaluator(name, dim, 1, first_input_batch)
    raise ConfigError(f"unknown built-in model: {name!r}")
