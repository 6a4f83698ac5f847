"""Ordering-dependent effective potentials and the constant-mass reduction.

After rescaling the wavefunction by sqrt(M), the variable-mass problem turns
into a constant-mass one whose potential picks up two mass-gradient terms
weighted by the ordering combinations (alpha+gamma+alpha*gamma+3/4) and
(alpha+gamma+1).  For the unique ordering that zeroes both, the reduced
potential collapses to four exponentials with energy-dependent weights
``gamma1``..``gamma4``, which is what makes the model exactly solvable.
"""

from dataclasses import dataclass

import numpy as np

from .errors import OrderingNotSolvable
from .model import MassParams, Model, OrderingParams, _exponentials, mass_derivatives, potential_at

#: Both coefficient combinations must vanish to within this for the reduction.
REDUCTION_TOL = 1e-12


@dataclass(frozen=True)
class GammaSet:
    """Exponential weights of the reduced potential at a trial energy."""

    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float
    e_trial: float


def grad_coefficient(ordering: OrderingParams) -> float:
    """Weight of the (grad M / M)^2 term: alpha + gamma + alpha*gamma + 3/4."""
    return ordering.alpha + ordering.gamma + ordering.alpha * ordering.gamma + 0.75


def laplacian_coefficient(ordering: OrderingParams) -> float:
    """Weight of the (lap M / M) term: alpha + gamma + 1."""
    return ordering.alpha + ordering.gamma + 1.0


def is_reduction_ordering(ordering: OrderingParams, tol: float = REDUCTION_TOL) -> bool:
    """True when both mass-gradient coefficients vanish."""
    return abs(grad_coefficient(ordering)) <= tol and abs(laplacian_coefficient(ordering)) <= tol


def von_roos_U(ordering: OrderingParams, mass: MassParams, x, y, hbar: float):
    """Ordering-dependent kinetic effective potential U(x, y).

    U = -(hbar^2 / 4M) [ (alpha+gamma) lap(M)/M
                         - 2 (alpha+gamma+alpha*gamma) |grad M / M|^2 ].
    """
    m, mx, my, mxx, myy = mass_derivatives(mass, x, y)
    c_lap = ordering.alpha + ordering.gamma
    c_grad = ordering.alpha + ordering.gamma + ordering.alpha * ordering.gamma
    grad2 = (mx / m) ** 2 + (my / m) ** 2
    u = -(hbar * hbar) / (4.0 * m) * (c_lap * (mxx + myy) / m - 2.0 * c_grad * grad2)
    return u if np.ndim(u) else float(u)


def veff_at(model: Model, x, y):
    """Effective potential seen by the rescaled wavefunction.

    V_eff = V + (hbar^2 / 4M) [ 2 (alpha+gamma+alpha*gamma+3/4) |grad M / M|^2
                                - (alpha+gamma+1) lap(M)/M ].
    Equals V identically when both coefficients vanish.
    """
    m, mx, my, mxx, myy = mass_derivatives(model.mass, x, y)
    v = potential_at(model, x, y)
    grad2 = (mx / m) ** 2 + (my / m) ** 2
    bracket = 2.0 * grad_coefficient(model.ordering) * grad2 - laplacian_coefficient(
        model.ordering
    ) * (mxx + myy) / m
    out = v + (model.hbar * model.hbar) / (4.0 * m) * bracket
    return out if np.ndim(out) else float(out)


def gammas_at(model: Model, e_trial: float) -> GammaSet:
    """Reduced-potential weights gamma_i = b_i + m0 (r - E) g_i at trial E."""
    shift = model.mass.m0 * (model.pot.r - e_trial)
    return GammaSet(
        gamma1=model.pot.b1 + shift * model.mass.g1,
        gamma2=model.pot.b2 + shift * model.mass.g2,
        gamma3=model.pot.b3 + shift * model.mass.g3,
        gamma4=model.pot.b4 + shift * model.mass.g4,
        e_trial=e_trial,
    )


def xi_of(model: Model, e: float) -> float:
    """Constant-mass eigenvalue shift xi(E) = -a + m0 (E - r)."""
    return -model.pot.a + model.mass.m0 * (e - model.pot.r)


def epsilon_of(model: Model, e: float) -> float:
    """Reduced eigenvalue 2 xi(E) / hbar^2 of the constant-mass problem."""
    return 2.0 * xi_of(model, e) / (model.hbar * model.hbar)


def ueff_at(model: Model, e_trial: float, x, y):
    """Reduced four-exponential potential at trial energy ``e_trial``.

    Only valid under the ambiguity-free ordering; anything else leaves
    residual mass-gradient terms and is rejected.
    """
    if not is_reduction_ordering(model.ordering):
        raise OrderingNotSolvable(
            "reduced potential requires the ordering with vanishing mass-gradient "
            f"coefficients (alpha=gamma=-1/2, beta=0); got {model.ordering}"
        )
    g = gammas_at(model, e_trial)
    e1, e2, e3, e4 = _exponentials(model.mass, x, y)
    u = g.gamma1 * e1 + g.gamma2 * e2 + g.gamma3 * e3 + g.gamma4 * e4
    return u if np.ndim(u) else float(u)
