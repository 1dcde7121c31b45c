"""Truncated Fock-basis states and Gaussian operations on them.

States are density matrices on the span of |0>..|cutoff|, stored together
with an upper estimate of the probability mass lost to truncation.
Conventions: D(beta) = exp(beta a^dag - beta* a) and, for real q,
S(q) = exp(q/2 (a^dag^2 - a^2)), so that S^dag a S = a cosh q + a^dag sinh q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGVAL_TOL = 1e-8
TRUNCATION_LIMIT = 1e-6


class TruncationError(Exception):
    """Raised when the chosen cutoff cannot hold the requested state."""


@dataclass(frozen=True)
class ChannelSpec:
    """Pure-loss channel, parametrized by the lost fraction epsilon."""

    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")


@dataclass(frozen=True)
class GaussianMapSpec:
    """Squeeze-then-displace unitary map: D(displacement) S(squeeze)."""

    displacement: complex = 0.0
    squeeze: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.displacement) and np.isfinite(self.squeeze)):
            raise ValueError("map parameters must be finite")

    @property
    def is_identity(self) -> bool:
        return self.displacement == 0 and self.squeeze == 0


@dataclass(frozen=True)
class TruncatedState:
    """Density matrix on Fock levels 0..cutoff with declared tail mass."""

    cutoff: int
    matrix: np.ndarray = field(repr=False)
    tail_bound: float = 0.0

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        if rho.shape != (self.cutoff + 1, self.cutoff + 1):
            raise ValueError(
                f"matrix shape {rho.shape} does not match cutoff {self.cutoff}"
            )
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be >= 0")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > HERMITICITY_TOL:
            raise ValueError(f"matrix not Hermitian (deviation {herm:.3e})")
        tr = float(np.real(np.trace(rho)))
        if not (1.0 - self.tail_bound - TRACE_TOL <= tr <= 1.0 + TRACE_TOL):
            raise ValueError(
                f"trace {tr} incompatible with tail_bound {self.tail_bound}"
            )
        lam_min = float(np.linalg.eigvalsh(rho)[0])
        if lam_min < -EIGVAL_TOL:
            raise ValueError(f"matrix not positive semidefinite ({lam_min:.3e})")
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self) -> int:
        return self.cutoff + 1


def _lowering_op(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(1, dim)
    a[idx - 1, idx] = np.sqrt(idx)
    return a


def _state_from_vector(psi: np.ndarray, cutoff: int, tail_bound: float) -> TruncatedState:
    return TruncatedState(cutoff=cutoff, matrix=np.outer(psi, psi.conj()),
                          tail_bound=tail_bound)


def make_fock(m: int, cutoff: int) -> TruncatedState:
    """Fock state |m><m|."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m > cutoff:
        raise TruncationError(f"cutoff {cutoff} too small for Fock state |{m}>")
    psi = np.zeros(cutoff + 1, dtype=complex)
    psi[m] = 1.0
    return _state_from_vector(psi, cutoff, 0.0)


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """Amplitudes e^{-|a|^2/2} alpha^n / sqrt(n!) for n = 0..cutoff."""
    n = np.arange(cutoff + 1)
    # log-magnitude to avoid overflow in alpha^n / sqrt(n!)
    r = np.abs(alpha)
    if r == 0:
        amps = np.zeros(cutoff + 1, dtype=complex)
        amps[0] = 1.0
        return amps
    logmag = -0.5 * r**2 + n * np.log(r) - 0.5 * gammaln(n + 1)
    phase = np.exp(1j * n * np.angle(alpha))
    return np.exp(logmag) * phase


def make_coherent(alpha: complex, cutoff: int) -> TruncatedState:
    """Coherent state |alpha>, truncated at the given cutoff."""
    amps = coherent_amplitudes(alpha, cutoff)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    if tail >= TRUNCATION_LIMIT:
        raise TruncationError(
            f"cutoff {cutoff} leaves tail {tail:.3e} for |alpha|={abs(alpha):.3g}"
        )
    return _state_from_vector(amps, cutoff, tail)


def make_pac(alpha: float, cutoff: int) -> TruncatedState:
    """Photon-added coherent state, normalized a^dag |alpha>."""
    c = coherent_amplitudes(alpha, cutoff)
    psi = np.zeros(cutoff + 1, dtype=complex)
    psi[1:] = c[:-1] * np.sqrt(np.arange(1, cutoff + 1))
    # exact norm of a^dag|alpha> is sqrt(1 + |alpha|^2)
    psi /= np.sqrt(1.0 + abs(alpha) ** 2)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(psi) ** 2)))
    if tail >= TRUNCATION_LIMIT:
        raise TruncationError(
            f"cutoff {cutoff} leaves tail {tail:.3e} for PAC alpha={alpha:.3g}"
        )
    return _state_from_vector(psi, cutoff, tail)


def squeezed_vacuum_amplitudes(r: float, cutoff: int) -> np.ndarray:
    """Amplitudes of S(r)|0>: support on even levels only."""
    amps = np.zeros(cutoff + 1, dtype=complex)
    t = np.tanh(r)
    if t == 0:
        amps[0] = 1.0
        return amps
    k = np.arange(cutoff // 2 + 1)
    # c_{2k} = (tanh r)^k sqrt((2k)!)/(2^k k!) / sqrt(cosh r)
    logmag = (0.5 * gammaln(2 * k + 1) - k * np.log(2.0) - gammaln(k + 1)
              - 0.5 * np.log(np.cosh(r)) + k * np.log(abs(t)))
    amps[2 * k] = np.sign(t) ** k * np.exp(logmag)
    return amps


def make_squeezed(r: float, cutoff: int) -> TruncatedState:
    """Squeezed vacuum S(r)|0>."""
    amps = squeezed_vacuum_amplitudes(r, cutoff)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    if tail >= TRUNCATION_LIMIT:
        raise TruncationError(
            f"cutoff {cutoff} leaves tail {tail:.3e} for squeezed vacuum r={r:.3g}"
        )
    return _state_from_vector(amps, cutoff, tail)


def make_pss(r: float, cutoff: int) -> TruncatedState:
    """Photon-subtracted squeezed state, normalized a S(r)|0>.

    The r -> 0 limit is the single-photon state; r = 0 returns |1> directly.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return make_fock(1, cutoff)
    c = squeezed_vacuum_amplitudes(r, cutoff + 1)
    n = np.arange(1, cutoff + 2)
    psi = c[1:] * np.sqrt(n)  # (a psi)_n = sqrt(n+1) c_{n+1}
    psi = psi / np.sinh(r)    # exact norm of a S(r)|0> is sinh r
    tail = max(0.0, 1.0 - float(np.sum(np.abs(psi) ** 2)))
    if tail >= TRUNCATION_LIMIT:
        raise TruncationError(
            f"cutoff {cutoff} leaves tail {tail:.3e} for PSS r={r:.3g}"
        )
    return _state_from_vector(psi, cutoff, tail)


def make_displaced_squeezed(beta: complex, q: float, cutoff: int) -> TruncatedState:
    """Pure Gaussian state D(beta) S(q) |0> on the truncated basis."""
    psi = displaced_squeezed_vector(beta, q, cutoff)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(psi) ** 2)))
    if tail >= TRUNCATION_LIMIT:
        raise TruncationError(
            f"cutoff {cutoff} leaves tail {tail:.3e} for beta={beta}, q={q}"
        )
    return _state_from_vector(psi, cutoff, tail)


def _headroom(beta: complex, q: float) -> int:
    return int(np.ceil(max(20.0, 4.0 * abs(beta) ** 2, 4.0 * np.sinh(q) ** 2)))


def displaced_squeezed_vector(beta: complex, q: float, cutoff: int) -> np.ndarray:
    """Amplitudes of D(beta)S(q)|0> for n = 0..cutoff.

    The state is annihilated by mu (a - beta) - nu (a^dag - beta*), which
    gives an exact three-term recurrence seeded by the closed-form vacuum
    overlap; every returned amplitude is exact at the cutoff.
    """
    beta = complex(beta)
    mu, nu = np.cosh(q), np.sinh(q)
    c = np.zeros(cutoff + 1, dtype=complex)
    c[0] = (np.exp(-0.5 * abs(beta) ** 2 + 0.5 * np.tanh(q) * np.conj(beta) ** 2)
            / np.sqrt(mu))
    drive = mu * beta - nu * np.conj(beta)
    for n in range(cutoff):
        prev = np.sqrt(n) * c[n - 1] if n > 0 else 0.0
        c[n + 1] = (drive * c[n] + nu * prev) / (mu * np.sqrt(n + 1))
    return c


def apply_loss(state: TruncatedState, channel: ChannelSpec) -> TruncatedState:
    """Pure-loss (amplitude damping) channel with lost fraction epsilon.

    Operator-sum form: the Kraus operator removing l photons has elements
    K_l[m-l, m] = sqrt(C(m, l) (1-eps)^{m-l} eps^l).
    """
    eps = channel.epsilon
    if eps == 0:
        return state
    d = state.dim
    rho = state.matrix
    eta = 1.0 - eps
    m = np.arange(d)
    out = np.zeros_like(rho)
    for loss in range(d):
        keep = np.arange(d - loss)
        # log of C(m, l) (1-eps)^{m-l} eps^l for m = keep + loss
        logc = (gammaln(keep + loss + 1) - gammaln(keep + 1) - gammaln(loss + 1))
        with np.errstate(divide="ignore"):
            logw = logc + keep * np.log(eta) if eta > 0 else np.where(
                keep == 0, logc, -np.inf)
            logw = logw + (loss * np.log(eps) if eps > 0 else 0.0)
        w = np.sqrt(np.exp(logw))
        block = rho[loss:, loss:]
        out[: d - loss, : d - loss] += (w[:, None] * block) * w[None, :]
    out = 0.5 * (out + out.conj().T)
    return TruncatedState(cutoff=state.cutoff, matrix=out,
                          tail_bound=state.tail_bound)


def apply_map(state: TruncatedState, gmap: GaussianMapSpec,
              max_tail_loss: float = 1e-8) -> TruncatedState:
    """Apply the unitary D(beta) S(q) to a state, with truncation control.

    The unitary is built by exponentiating the truncated generators on an
    enlarged basis; the result is projected back onto the state's cutoff and
    the trace lost in projection is added to tail_bound.
    """
    if gmap.is_identity:
        return state
    beta, q = complex(gmap.displacement), float(gmap.squeeze)
    work = state.dim + _headroom(beta, q)
    a = _lowering_op(work)
    ad = a.conj().T
    u = np.eye(work, dtype=complex)
    if q != 0:
        u = expm(0.5 * q * (ad @ ad - a @ a)) @ u
    if beta != 0:
        u = expm(beta * ad - np.conj(beta) * a) @ u
    big = np.zeros((work, work), dtype=complex)
    big[: state.dim, : state.dim] = state.matrix
    big = u @ big @ u.conj().T
    sub = big[: state.dim, : state.dim]
    lost = float(np.real(np.trace(big) - np.trace(sub)))
    if lost > max_tail_loss:
        raise TruncationError(
            f"map loses trace {lost:.3e} past cutoff {state.cutoff}"
        )
    sub = 0.5 * (sub + sub.conj().T)
    return TruncatedState(cutoff=state.cutoff, matrix=sub,
                          tail_bound=state.tail_bound + max(lost, 0.0))


def mix(states: list[TruncatedState], weights: list[float]) -> TruncatedState:
    """Convex mixture of states sharing one cutoff."""
    if len(states) != len(weights) or not states:
        raise ValueError("states and weights must be nonempty and equal-length")
    if abs(sum(weights) - 1.0) > 1e-12 or min(weights) < 0:
        raise ValueError("weights must be a probability vector")
    cutoff = states[0].cutoff
    if any(s.cutoff != cutoff for s in states):
        raise ValueError("all states must share the same cutoff")
    rho = sum(w * s.matrix for w, s in zip(weights, states))
    tail = sum(w * s.tail_bound for w, s in zip(weights, states))
    return TruncatedState(cutoff=cutoff, matrix=rho, tail_bound=tail)


def photon_probs(state: TruncatedState) -> np.ndarray:
    """Diagonal photon-number probabilities p_m."""
    return np.real(np.diag(state.matrix)).copy()


def moments(state: TruncatedState) -> tuple[float, complex, complex]:
    """Return (mean photon number, <a>, <a^2>) from the truncated matrix.

    All three only touch matrix diagonals: Tr(rho a^k) picks the k-th
    subdiagonal rho[n+k, n] weighted by the ladder factors.
    """
    rho = state.matrix
    d = state.dim
    n = np.arange(d)
    nbar = float(np.dot(n, np.real(np.diagonal(rho))))
    a1 = complex(np.dot(np.sqrt(n[1:]), np.diagonal(rho, offset=-1)))
    k = n[: d - 2]
    a2 = complex(np.dot(np.sqrt((k + 1) * (k + 2)), np.diagonal(rho, offset=-2)))
    return nbar, a1, a2
