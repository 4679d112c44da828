"""Drive envelopes: constant Rabi quadratures and Gaussian-DRAG shapes.

All frequencies are angular and all functions vectorize over time.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import erf


@dataclass(frozen=True)
class PulseEnvelope:
    """Quadrature envelopes of a carrier drive
    Omega(t) = Omega_x(t) cos(w_d t) + Omega_y(t) sin(w_d t)."""

    kind: str                 # "rabi" | "drag"
    omega_d: float            # carrier frequency
    t_gate: float | None      # pulse duration; None = always on
    # rabi parameters
    amp_x: float = 0.0
    amp_y: float = 0.0
    # drag parameters
    theta: float = 0.0        # target rotation angle
    sigma: float = 0.0        # Gaussian width
    xi: float = 0.0           # derivative-removal coefficient
    anharmonicity: float = 0.0

    @property
    def rabi_frequency(self):
        return float(np.hypot(self.amp_x, self.amp_y))

    def _window(self, t):
        t = np.asarray(t, dtype=float)
        if self.t_gate is None:
            return t >= 0
        return (t >= 0) & (t <= self.t_gate)

    def omega_x(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "rabi":
            return np.where(self._window(t), self.amp_x, 0.0)
        g = np.exp(-((t - self.t_gate / 2.0) ** 2) / (2.0 * self.sigma**2))
        base = np.exp(-self.t_gate**2 / (8.0 * self.sigma**2))
        return np.where(self._window(t), self.theta * (g - base) / self._drag_norm(), 0.0)

    def omega_x_dot(self, t):
        """Analytic time derivative of omega_x (zero for rabi pulses)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "rabi":
            return np.zeros_like(t)
        g = np.exp(-((t - self.t_gate / 2.0) ** 2) / (2.0 * self.sigma**2))
        dg = -(t - self.t_gate / 2.0) / self.sigma**2 * g
        return np.where(self._window(t), self.theta * dg / self._drag_norm(), 0.0)

    def omega_y(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "rabi":
            return np.where(self._window(t), self.amp_y, 0.0)
        if self.xi == 0.0:
            return np.zeros_like(t)
        return -self.xi * self.omega_x_dot(t) / self.anharmonicity

    def _drag_norm(self):
        tg, s = self.t_gate, self.sigma
        return float(
            np.sqrt(2.0 * np.pi * s**2) * erf(tg / np.sqrt(8.0 * s**2))
            - tg * np.exp(-(tg**2) / (8.0 * s**2))
        )

    def drive(self, t):
        """The full carrier drive Omega(t)."""
        t = np.asarray(t, dtype=float)
        return self.omega_x(t) * np.cos(self.omega_d * t) + self.omega_y(t) * np.sin(
            self.omega_d * t
        )

    def replace(self, **kw):
        from dataclasses import replace

        return replace(self, **kw)


def rabi_envelope(amp_x, amp_y, omega_d, t_gate=None):
    """Constant-quadrature drive with Rabi frequency sqrt(ax^2 + ay^2)."""
    return PulseEnvelope(kind="rabi", omega_d=omega_d, t_gate=t_gate,
                         amp_x=float(amp_x), amp_y=float(amp_y))


def drag_envelope(theta, t_gate, sigma, xi, anharmonicity, omega_d):
    """Truncated, baseline-subtracted Gaussian x-quadrature normalized to
    integrate to `theta`, with y-quadrature -xi * d omega_x/dt / anharmonicity.
    """
    if t_gate <= 0:
        raise ValueError("gate time must be positive")
    if sigma <= 0:
        raise ValueError("Gaussian width must be positive")
    if anharmonicity == 0.0:
        raise ValueError("derivative removal is undefined at zero anharmonicity")
    return PulseEnvelope(
        kind="drag",
        omega_d=float(omega_d),
        t_gate=float(t_gate),
        theta=float(theta),
        sigma=float(sigma),
        xi=float(xi),
        anharmonicity=float(anharmonicity),
    )


def evaluate_drive(pulse, t):
    """Omega(t) at a time or array of times; zero outside the pulse window."""
    return pulse.drive(t)
