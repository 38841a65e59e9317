"""Hyperchaotic keystream layer.

Everything the ciphers need from the 6-dimensional dynamical system lives
here: deriving the initial conditions from the plaintext, iterating the
system past its transient, concatenating the odd state columns into the
sorting sequence, and quantizing the even columns into the 128-bit
whitening key.

Two systems are registered:

``hosny6d``
    A six-dimensional Lorenz-family hyperchaotic flow (Lorenz core plus
    three linear feedback states), advanced one fixed RK4 step of size
    ``RK4_STEP`` per iteration.

``reftestmap``
    A coupled logistic ring map confined to [0, 1)^6.  It is a
    self-contained test double: fully specified below, fast, and
    independent of any external parameter tables.  The six system
    parameters are accepted but do not enter the update rule.

All arithmetic is IEEE-754 binary64.  Every function is a pure function of
its arguments, so results are bitwise reproducible across runs and safe to
call from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Iterations discarded before any keystream material is taken.  This is a
# fixed constant of the construction, not key material.
TRANSIENT_LENGTH = 1000

# Fixed RK4 step size used by the continuous hosny6d system.
RK4_STEP = 0.001


class OrbitDivergenceError(RuntimeError):
    """Raised when the trajectory leaves the finite floats."""

    def __init__(self, step: int):
        super().__init__(f"non-finite state at iteration {step}")
        self.step = step


@dataclass(frozen=True)
class SystemParams:
    """The six real-valued system parameters (a, b, c, d, e, r)."""

    a: float
    b: float
    c: float
    d: float
    e: float
    r: float

    def __post_init__(self):
        for name, value in self.as_dict().items():
            if not math.isfinite(value):
                raise ValueError(f"parameter {name} is not finite: {value!r}")

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.e, self.r)

    def as_dict(self):
        return {
            "a": self.a, "b": self.b, "c": self.c,
            "d": self.d, "e": self.e, "r": self.r,
        }


@dataclass(frozen=True)
class InitialConditions:
    """Six real seeds of the orbit.

    x2..x6 always lie in [0, 1) when produced by
    :func:`derive_initial_conditions`; x1 is the raw pixel-sum ratio and
    may exceed 1 for bright images.
    """

    x1: float
    x2: float
    x3: float
    x4: float
    x5: float
    x6: float

    def as_tuple(self):
        return (self.x1, self.x2, self.x3, self.x4, self.x5, self.x6)


def _frac(v: float) -> float:
    return v - math.floor(v)


def derive_initial_conditions(pixels: np.ndarray) -> InitialConditions:
    """Derive the orbit seeds from image content.

    x1 = (sum of all pixels + M*N) / (2^23 + M*N), with the sums done in
    exact integer arithmetic before the single float division.  Each
    further seed is x_i = frac(x_{i-1} * 1e6).
    """
    pixels = np.asarray(pixels)
    if pixels.size == 0:
        raise ValueError("cannot derive initial conditions from an empty image")
    total = int(pixels.sum(dtype=np.int64))
    mn = int(pixels.size)
    xs = [(total + mn) / (2**23 + mn)]
    for _ in range(5):
        xs.append(_frac(xs[-1] * 1e6))
    return InitialConditions(*xs)


class DynamicalSystem:
    """Deterministic map on 6-vectors of reals.

    Subclasses implement :meth:`step`; they may also override
    :meth:`iterate` with a fused loop for speed, provided the fused loop
    produces bitwise-identical states to repeated ``step`` calls.
    """

    name: str = ""

    def step(self, state, params: SystemParams):
        """Advance one iteration.  ``state`` is a 6-tuple of floats."""
        raise NotImplementedError

    def iterate(self, state, params: SystemParams, n_transient: int, n_keep: int) -> np.ndarray:
        rows = []
        for i in range(n_transient + n_keep):
            state = self.step(state, params)
            if i >= n_transient:
                rows.append(state)
        return np.array(rows, dtype=np.float64)


class ReferenceTestMap(DynamicalSystem):
    """Coupled logistic ring map on [0, 1)^6.

    Update rule, for j = 1..6 with neighbour index (j mod 6) + 1:

        y'_j = frac( rho_j * y_j * (1 - y_j) + 0.1 * y_neighbour )

    with rho_j = 3.99 + 0.001*j.  Inputs are wrapped into [0, 1) by
    frac(|.|) on entry, so any real seed is accepted.  The system
    parameters are ignored; the map is fully pinned by the constants
    above.
    """

    name = "reftestmap"

    RHO = tuple(3.99 + 0.001 * j for j in (1, 2, 3, 4, 5, 6))

    def step(self, state, params: SystemParams):
        r1, r2, r3, r4, r5, r6 = self.RHO
        w1, w2, w3, w4, w5, w6 = (abs(v) - math.floor(abs(v)) for v in state)
        floor = math.floor
        n1 = r1 * w1 * (1.0 - w1) + 0.1 * w2
        n2 = r2 * w2 * (1.0 - w2) + 0.1 * w3
        n3 = r3 * w3 * (1.0 - w3) + 0.1 * w4
        n4 = r4 * w4 * (1.0 - w4) + 0.1 * w5
        n5 = r5 * w5 * (1.0 - w5) + 0.1 * w6
        n6 = r6 * w6 * (1.0 - w6) + 0.1 * w1
        return (n1 - floor(n1), n2 - floor(n2), n3 - floor(n3),
                n4 - floor(n4), n5 - floor(n5), n6 - floor(n6))

    def iterate(self, state, params: SystemParams, n_transient: int, n_keep: int) -> np.ndarray:
        # Fused version of step(); kept textually in sync (see tests).
        r1, r2, r3, r4, r5, r6 = self.RHO
        floor = math.floor
        y1, y2, y3, y4, y5, y6 = state
        rows = []
        append = rows.append
        for i in range(n_transient + n_keep):
            w1 = abs(y1); w1 -= floor(w1)
            w2 = abs(y2); w2 -= floor(w2)
            w3 = abs(y3); w3 -= floor(w3)
            w4 = abs(y4); w4 -= floor(w4)
            w5 = abs(y5); w5 -= floor(w5)
            w6 = abs(y6); w6 -= floor(w6)
            n1 = r1 * w1 * (1.0 - w1) + 0.1 * w2
            n2 = r2 * w2 * (1.0 - w2) + 0.1 * w3
            n3 = r3 * w3 * (1.0 - w3) + 0.1 * w4
            n4 = r4 * w4 * (1.0 - w4) + 0.1 * w5
            n5 = r5 * w5 * (1.0 - w5) + 0.1 * w6
            n6 = r6 * w6 * (1.0 - w6) + 0.1 * w1
            y1 = n1 - floor(n1)
            y2 = n2 - floor(n2)
            y3 = n3 - floor(n3)
            y4 = n4 - floor(n4)
            y5 = n5 - floor(n5)
            y6 = n6 - floor(n6)
            if i >= n_transient:
                append((y1, y2, y3, y4, y5, y6))
        return np.array(rows, dtype=np.float64)


class Hosny6D(DynamicalSystem):
    """Six-dimensional hyperchaotic flow, one RK4 step per iteration.

    The flow couples a Lorenz core (parameters a, b, c) with a damped
    nonlinear mode x4 and two integral feedback states x5, x6:

        dx1/dt = a*(x2 - x1) + x4 - x6
        dx2/dt = c*x1 - x2 - x1*x3 + x5
        dx3/dt = x1*x2 - b*x3
        dx4/dt = d*x4 - x1*x3
        dx5/dt = -e*x2
        dx6/dt = r*x1

    One iteration advances the flow by the fixed step ``RK4_STEP`` with
    the classical fourth-order Runge-Kutta rule.  The default parameters
    (10, 8/3, 28, -1, 8, 3) sit in the hyperchaotic regime.
    """

    name = "hosny6d"

    DEFAULT_PARAMS = SystemParams(10.0, 8.0 / 3.0, 28.0, -1.0, 8.0, 3.0)

    @staticmethod
    def _deriv(s, a, b, c, d, e, r):
        x1, x2, x3, x4, x5, x6 = s
        return (
            a * (x2 - x1) + x4 - x6,
            c * x1 - x2 - x1 * x3 + x5,
            x1 * x2 - b * x3,
            d * x4 - x1 * x3,
            -e * x2,
            r * x1,
        )

    def step(self, state, params: SystemParams):
        a, b, c, d, e, r = params.as_tuple()
        h = RK4_STEP
        k1 = self._deriv(state, a, b, c, d, e, r)
        s2 = tuple(state[i] + 0.5 * h * k1[i] for i in range(6))
        k2 = self._deriv(s2, a, b, c, d, e, r)
        s3 = tuple(state[i] + 0.5 * h * k2[i] for i in range(6))
        k3 = self._deriv(s3, a, b, c, d, e, r)
        s4 = tuple(state[i] + h * k3[i] for i in range(6))
        k4 = self._deriv(s4, a, b, c, d, e, r)
        return tuple(
            state[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            for i in range(6)
        )

    def iterate(self, state, params: SystemParams, n_transient: int, n_keep: int) -> np.ndarray:
        a, b, c, d, e, r = params.as_tuple()
        h = RK4_STEP
        deriv = self._deriv
        rows = []
        append = rows.append
        for i in range(n_transient + n_keep):
            k1 = deriv(state, a, b, c, d, e, r)
            s2 = tuple(state[j] + 0.5 * h * k1[j] for j in range(6))
            k2 = deriv(s2, a, b, c, d, e, r)
            s3 = tuple(state[j] + 0.5 * h * k2[j] for j in range(6))
            k3 = deriv(s3, a, b, c, d, e, r)
            s4 = tuple(state[j] + h * k3[j] for j in range(6))
            k4 = deriv(s4, a, b, c, d, e, r)
            state = tuple(
                state[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
                for j in range(6)
            )
            if i >= n_transient:
                append(state)
        return np.array(rows, dtype=np.float64)


_SYSTEMS: dict[str, DynamicalSystem] = {}


def register_system(system: DynamicalSystem) -> None:
    if not system.name:
        raise ValueError("system must carry a non-empty name")
    _SYSTEMS[system.name] = system


def get_system(name: str) -> DynamicalSystem:
    try:
        return _SYSTEMS[name]
    except KeyError:
        known = ", ".join(sorted(_SYSTEMS))
        raise ValueError(f"unknown dynamical system {name!r} (known: {known})") from None


def list_systems():
    return sorted(_SYSTEMS)


register_system(ReferenceTestMap())
register_system(Hosny6D())

_DEFAULT_PARAMS = {
    "hosny6d": Hosny6D.DEFAULT_PARAMS,
    "reftestmap": SystemParams(3.99, 3.99, 3.99, 3.99, 3.99, 3.99),
}


def default_params(system_name: str) -> SystemParams:
    """Documented default parameter set for a registered system."""
    try:
        return _DEFAULT_PARAMS[system_name]
    except KeyError:
        raise ValueError(f"no default parameters for system {system_name!r}") from None


def draw_params(system_name: str, seed: int) -> SystemParams:
    """Seeded random key draw: each default parameter perturbed by up to 1%.

    The 1% band keeps hosny6d inside its hyperchaotic regime while making
    every component carry fresh key material.
    """
    rng = np.random.default_rng(seed)
    base = default_params(system_name).as_tuple()
    scale = 1.0 + rng.uniform(-0.01, 0.01, size=6)
    return SystemParams(*(b * s for b, s in zip(base, scale)))


def generate_orbit(system: DynamicalSystem, ic: InitialConditions,
                   params: SystemParams, length: int) -> np.ndarray:
    """Iterate ``TRANSIENT_LENGTH + length`` times and keep the tail.

    Returns a (length, 6) float64 array, column j holding state variable
    j+1.  Raises :class:`OrbitDivergenceError` naming the first bad
    iteration if the trajectory leaves the finite floats.
    """
    if length < 1:
        raise ValueError("orbit length must be at least 1")
    orbit = system.iterate(ic.as_tuple(), params, TRANSIENT_LENGTH, length)
    finite_rows = np.isfinite(orbit).all(axis=1)
    if not finite_rows.all():
        bad = int(np.argmin(finite_rows))
        raise OrbitDivergenceError(TRANSIENT_LENGTH + bad)
    return orbit


def rows_for_sequence(mn: int) -> int:
    """Orbit rows needed to build a sorting sequence of length ``mn``."""
    return -(-mn // 3)


def build_sort_sequence(orbit: np.ndarray, mn: int) -> np.ndarray:
    """Serially concatenate odd state columns (x1, x3, x5) to length ``mn``.

    Each column contributes ceil(mn/3) values; the concatenation is
    truncated to exactly ``mn`` entries.
    """
    if mn < 1:
        raise ValueError("mn must be at least 1")
    rows = rows_for_sequence(mn)
    if orbit.shape[0] < rows:
        raise ValueError(f"orbit too short: {orbit.shape[0]} rows, need {rows}")
    seq = np.concatenate([orbit[:rows, 0], orbit[:rows, 2], orbit[:rows, 4]])
    return seq[:mn]


def argsort_ascending(values: np.ndarray) -> np.ndarray:
    """Positions of the values in ascending order, ties kept stable."""
    values = np.asarray(values, dtype=np.float64)
    if np.isnan(values).any():
        raise ValueError("cannot sort a sequence containing NaN")
    return np.argsort(values, kind="stable")


WHITENING_KEY_BYTES = 16
_WHITENING_ROWS = 6


def derive_whitening_key(orbit: np.ndarray) -> bytes:
    """Quantize the even state columns into the 128-bit whitening key.

    Takes the first 6 post-transient rows of (x2, x4, x6) in row-major
    order, maps each value v to floor(frac(|v|) * 2^56) mod 256, and keeps
    the first 16 bytes.
    """
    if orbit.shape[0] < _WHITENING_ROWS:
        raise ValueError(f"orbit too short for whitening key: {orbit.shape[0]} rows, need {_WHITENING_ROWS}")
    values = orbit[:_WHITENING_ROWS, [1, 3, 5]].ravel()
    out = bytearray()
    for v in values[:WHITENING_KEY_BYTES]:
        f = _frac(abs(float(v)))
        out.append(int(f * 2.0**56) % 256)
    return bytes(out)
