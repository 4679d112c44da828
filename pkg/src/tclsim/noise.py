"""Bath correlation functions and noise power spectra.

Provides Ohmic bosonic baths (thermal, exponential cutoff), 1/f dephasing
noise built on the exponential integral E1, and tabulated spectra.  The
convention for the spectrum is S(w) = int dt C(t) e^{iwt}, split into the
even part Sbar and the odd part J with S = Sbar + J.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

EULER_GAMMA = 0.5772156649015328606

# Bernoulli numbers B_2 .. B_12 for the trigamma asymptotic series
_BERNOULLI = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730)


def exponential_integral_e1(x):
    """E1(x) for x > 0: power series for x <= 1, continued fraction above.

    Vectorized; absolute error below 1e-12 over the positive axis.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("E1 requires strictly positive arguments")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    lo = x <= 1.0
    if np.any(lo):
        out[lo] = _e1_series(x[lo])
    if np.any(~lo):
        out[~lo] = _e1_contfrac(x[~lo])
    return float(out[0]) if scalar else out


def _e1_series(x):
    # E1 = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
    total = np.zeros_like(x)
    term = np.ones_like(x)
    for n in range(1, 40):
        term *= -x / n
        contrib = term / n
        total += contrib
        if np.max(np.abs(contrib)) < 1e-18:
            break
    return -EULER_GAMMA - np.log(x) - total


def _e1_contfrac(x, iters=80):
    # modified Lentz for E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c = np.full_like(x, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, iters):
        a = -(i * i)
        b = b + 2.0
        d = b + a * d
        d = np.where(np.abs(d) < tiny, tiny, d)
        c = b + a / c
        c = np.where(np.abs(c) < tiny, tiny, c)
        d = 1.0 / d
        delta = d * c
        h *= delta
        if np.max(np.abs(delta - 1.0)) < 1e-16:
            break
    return np.exp(-x) * h


def trigamma_complex(z):
    """psi'(z) for complex z with Re z > 0, vectorized.

    Recurrence pushes |z| above 10, then the Bernoulli asymptotic series.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    acc = np.zeros_like(z)
    zz = z.copy()
    for _ in range(12):
        mask = np.abs(zz) < 10.0
        if not np.any(mask):
            break
        acc[mask] += 1.0 / zz[mask] ** 2
        zz[mask] += 1.0
    inv = 1.0 / zz
    inv2 = inv * inv
    series = inv + 0.5 * inv2
    p = inv * inv2
    for b2k in _BERNOULLI:
        series += b2k * p
        p *= inv2
    return acc + series


@dataclass(frozen=True)
class OhmicSpectrum:
    """Thermal Ohmic bath: Sbar(w) = lam * w * exp(-|w|/w_c) * coth(beta w / 2),
    J(w) = lam * w * exp(-|w|/w_c)."""

    lam: float
    omega_c: float
    beta: float

    def __post_init__(self):
        if self.lam <= 0 or self.omega_c <= 0 or self.beta <= 0:
            raise ValueError("Ohmic bath requires lam, omega_c, beta > 0")

    def sbar(self, w):
        w = np.asarray(w, dtype=float)
        env = self.lam * np.exp(-np.abs(w) / self.omega_c)
        x = self.beta * w / 2.0
        small = np.abs(x) < 1e-6
        # w coth(beta w / 2) -> 2/beta + beta w^2 / 6 near zero
        wcoth = np.where(
            small,
            2.0 / self.beta + self.beta * w**2 / 6.0,
            w / np.tanh(np.where(small, 1.0, x)),
        )
        return env * wcoth

    def j_odd(self, w):
        w = np.asarray(w, dtype=float)
        return self.lam * w * np.exp(-np.abs(w) / self.omega_c)

    def s_full(self, w):
        return self.sbar(w) + self.j_odd(w)

    def s_second_derivative(self, w, rel_step=1e-3):
        """5-point central finite difference of S(w)."""
        h = rel_step * max(abs(w), self.omega_c * 1e-3)
        f = self.s_full
        return (
            -f(w + 2 * h) + 16 * f(w + h) - 30 * f(w) + 16 * f(w - h) - f(w - 2 * h)
        ) / (12 * h * h)

    def sbar_derivative(self, w, rel_step=1e-3):
        h = rel_step * max(abs(w), self.omega_c * 1e-3)
        f = self.sbar
        return (f(w + h) - f(w - h)) / (2 * h)

    def correlation(self, tau):
        """C(tau) for tau >= 0 in closed form (trigamma series).

        Re C from the thermal sum over Matsubara-shifted Lorentzians,
        Im C from the zero-temperature sine transform of J.
        """
        tau = np.asarray(tau, dtype=float)
        a = 1.0 / self.omega_c
        zt = a + 1.0j * tau
        re = (1.0 / zt**2).real + 2.0 * trigamma_complex(
            (zt + self.beta) / self.beta
        ).real / self.beta**2
        im = -2.0 * a * tau / (a**2 + tau**2) ** 2
        return (self.lam / np.pi) * (re + 1.0j * im)


@dataclass(frozen=True)
class OneOverFCorrelation:
    """1/f dephasing noise with correlation C(tau) = lam * E1(w_ir * tau).

    Used directly in the time domain; the tau -> 0 log divergence is
    integrable and handled by the exact first-cell integral.
    """

    lam: float
    omega_ir: float

    def __post_init__(self):
        if self.lam <= 0 or self.omega_ir <= 0:
            raise ValueError("1/f noise requires lam, omega_ir > 0")

    def correlation(self, tau):
        tau = np.asarray(tau, dtype=float)
        out = np.zeros_like(tau, dtype=complex)
        pos = tau > 0
        out[pos] = self.lam * exponential_integral_e1(self.omega_ir * tau[pos])
        if np.any(~pos):
            # value at the (integrable) endpoint is never used by the open
            # first-cell rule; keep it finite for diagnostics
            out[~pos] = self.lam * exponential_integral_e1(
                self.omega_ir * 1e-300 + 1e-300
            )
        return out

    def integral_zero_to(self, h):
        """Exact integral of C over [0, h] across the log singularity."""
        a = self.omega_ir
        return self.lam * (h * exponential_integral_e1(a * h) + (1.0 - np.exp(-a * h)) / a)


@dataclass(frozen=True)
class TabulatedSpectrum:
    """Spectrum given on a frequency grid as columns (w, S(w)).

    Sbar and J are obtained by (anti)symmetrizing the linear interpolant.
    """

    omegas: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def _interp(self, w):
        return np.interp(w, self.omegas, self.values, left=0.0, right=0.0)

    def sbar(self, w):
        w = np.asarray(w, dtype=float)
        return 0.5 * (self._interp(w) + self._interp(-w))

    def j_odd(self, w):
        w = np.asarray(w, dtype=float)
        return 0.5 * (self._interp(w) - self._interp(-w))

    def s_full(self, w):
        return self._interp(np.asarray(w, dtype=float))

    @property
    def omega_c(self):
        return float(np.max(np.abs(self.omegas)))

    def correlation(self, tau):
        return correlation_from_spectrum(self, tau)


def correlation_from_spectrum(spectrum, tau, cutoff_factor=20.0):
    """C(tau) by frequency quadrature: cosine transform of Sbar plus the
    (negative) sine transform of J, truncated at cutoff_factor * omega_c.

    Reference path; scenario hot loops use closed forms where available.
    """
    taus = np.atleast_1d(np.asarray(tau, dtype=float))
    wmax = cutoff_factor * spectrum.omega_c
    out = np.empty(taus.shape, dtype=complex)
    for i, t in enumerate(taus):
        re, re_err = integrate.quad(
            spectrum.sbar, 0.0, wmax, weight="cos", wvar=t, limit=400
        )
        im, im_err = integrate.quad(
            spectrum.j_odd, 0.0, wmax, weight="sin", wvar=t, limit=400
        )
        if max(re_err, im_err) > 1e-8 * max(1.0, abs(re), abs(im)):
            raise RuntimeError(f"correlation quadrature did not converge at tau={t}")
        out[i] = (re - 1.0j * im) / np.pi
    return out[0] if np.isscalar(tau) or np.ndim(tau) == 0 else out


def ohmic_bath(lam, omega_c, beta):
    """Construct a thermal Ohmic spectrum; J/Sbar = tanh(beta w / 2)."""
    return OhmicSpectrum(lam=lam, omega_c=omega_c, beta=beta)


def one_over_f(lam, omega_ir):
    """Construct the 1/f dephasing correlation lam * E1(w_ir * tau)."""
    return OneOverFCorrelation(lam=lam, omega_ir=omega_ir)


@dataclass(frozen=True)
class NoiseChannel:
    """A Hermitian coupling operator together with its bath correlation.

    `operator` is given in the eigenbasis of the static Hamiltonian; the
    bath enters only through `corr`, an object with a correlation(tau)
    method (OhmicSpectrum, OneOverFCorrelation, TabulatedSpectrum, ...).
    """

    name: str
    operator: np.ndarray = field(repr=False)
    corr: object = None

    def __post_init__(self):
        op = np.asarray(self.operator, dtype=complex)
        if not np.allclose(op, op.conj().T, atol=1e-12):
            raise ValueError("coupling operator must be Hermitian")

    def correlation_on_grid(self, taus):
        """C(tau_j) tabulated on the solver grid (tau_0 = 0 included)."""
        taus = np.asarray(taus, dtype=float)
        vals = np.asarray(self.corr.correlation(taus), dtype=complex)
        return vals

    def first_cell_integral(self, h):
        """int_0^h C(tau) d tau; exact for 1/f, trapezoid otherwise."""
        if hasattr(self.corr, "integral_zero_to"):
            return complex(self.corr.integral_zero_to(h))
        c = self.corr.correlation(np.array([0.0, h]))
        return complex(0.5 * h * (c[0] + c[1]))
