"""Four-block ADMM for tensorized projection hashing.

Given one anchor bipartite graph per view, the solver learns per-view
projection matrices and sign code matrices whose view-stacked tensors are
pushed toward low rank (core-matrix nuclear norm plus tensor nuclear
norm) through two auxiliary tensors and their multipliers:

    minimize  alpha * sum_p ||Q_p' phi_p - B_p||_F^2
              + enhanced_tnn(stack(Q)) + enhanced_tnn(stack(B))
    subject to B_p in {-1,+1}^(l x n)

The blocks are updated in turn each iteration: a linear solve for every
projection, a closed-form sign step for every code matrix, the two-stage
shrinkage for both auxiliary tensors, then a gradient step on the
multipliers with a geometrically growing penalty.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InconsistentSampleCounts, NonFinite, ShapeMismatch
from .hamming_kmeans import sign_pm1
from .tensor_ops import enhanced_tensor_nuclear_norm, enhanced_tensor_svt


@dataclass
class SolverConfig:
    alpha: float
    bits: int
    zeta: float = 0.1
    mu0: float = 1e-4
    rho: float = 2.0
    mu_max: float = 1e10
    max_iter: int = 100
    tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.bits < 1:
            raise ValueError(f"bits must be >= 1, got {self.bits}")
        if self.zeta < 0:
            raise ValueError(f"zeta must be >= 0, got {self.zeta}")
        if self.mu0 <= 0:
            raise ValueError(f"mu0 must be > 0, got {self.mu0}")
        if self.rho <= 1:
            raise ValueError(f"rho must be > 1, got {self.rho}")
        if self.mu_max < self.mu0:
            raise ValueError("mu_max must be >= mu0")
        if self.max_iter < 0:
            raise ValueError("max_iter must be >= 0")
        if self.tol <= 0:
            raise ValueError("tol must be > 0")


@dataclass
class SolverState:
    projections: list          # per view, m x bits
    codes: list                # per view, bits x n, entries +-1
    aux_projection: np.ndarray  # m x bits x v
    aux_code: np.ndarray        # bits x n x v
    dual_projection: np.ndarray
    dual_code: np.ndarray
    mu: float
    iteration: int = 0


@dataclass
class IterationRecord:
    iteration: int
    objective: float
    res_projection: float  # ||stack(Q) - A||_F
    res_code: float        # ||stack(B) - E||_F
    mu: float
    seconds: float
    projection_residual: float  # relative normal-equation residual of the Q step


@dataclass
class HashCodes:
    per_view: list
    fused: np.ndarray


def stack_views(mats):
    """Stack per-view matrices into a tensor with the view as mode 3."""
    return np.stack(mats, axis=2)


def unstack_views(tensor):
    return [np.ascontiguousarray(tensor[:, :, p]) for p in range(tensor.shape[2])]


def fuse_codes(per_view):
    """Majority vote across views: sign of the summed code matrices,
    with ties going to +1."""
    if not per_view:
        raise ShapeMismatch("need at least one code matrix")
    shape = per_view[0].shape
    for b in per_view:
        if b.shape != shape:
            raise ShapeMismatch(f"code shapes differ: {b.shape} vs {shape}")
    return sign_pm1(np.sum(per_view, axis=0))


def init_state(graphs, config):
    """Seeded initialization.

    Projections are i.i.d. normal scaled by 1/sqrt(m); codes are the signs
    of the projected graphs; both auxiliary tensors start as copies of the
    corresponding stacks, so the initial primal residuals are exactly 0.
    """
    if not graphs:
        raise InconsistentSampleCounts("need at least one view")
    m, n = graphs[0].shape
    for g in graphs:
        if g.shape[1] != n:
            raise InconsistentSampleCounts(
                f"views disagree on sample count: {g.shape[1]} vs {n}"
            )
        if g.shape[0] != m:
            raise ShapeMismatch(
                f"views disagree on anchor count: {g.shape[0]} vs {m}"
            )
    rng = np.random.default_rng(config.seed)
    projections = [
        rng.standard_normal((m, config.bits)) / np.sqrt(m) for _ in graphs
    ]
    codes = [sign_pm1(q.T @ g) for q, g in zip(projections, graphs)]
    aux_projection = stack_views(projections)
    aux_code = stack_views(codes)
    return SolverState(
        projections=projections,
        codes=codes,
        aux_projection=aux_projection,
        aux_code=aux_code,
        dual_projection=np.zeros_like(aux_projection),
        dual_code=np.zeros_like(aux_code),
        mu=config.mu0,
    )


def update_projections(state, graphs, config, grams=None, with_residual=False):
    """Exact minimizer of each view's projection subproblem.

    Solves (2*alpha*phi phi' + mu I) Q = 2*alpha*phi B' + mu A - Y per
    view; the system is positive definite for any mu > 0. Optionally also
    returns the largest relative residual of these normal equations.
    """
    mu = state.mu
    if grams is None:
        grams = [g @ g.T for g in graphs]
    m = graphs[0].shape[0]
    updated = []
    worst = 0.0
    for p, g in enumerate(graphs):
        lhs = 2.0 * config.alpha * grams[p] + mu * np.eye(m)
        rhs = (
            2.0 * config.alpha * (g @ state.codes[p].T)
            + mu * state.aux_projection[:, :, p]
            - state.dual_projection[:, :, p]
        )
        q = np.linalg.solve(lhs, rhs)
        updated.append(q)
        if with_residual:
            denom = np.linalg.norm(rhs)
            res = np.linalg.norm(lhs @ q - rhs) / (denom if denom else 1.0)
            worst = max(worst, res)
    return (updated, worst) if with_residual else updated


def update_codes(state, graphs, config):
    """Closed-form sign step: B = sign(alpha Q' phi + (mu E - J) / 2),
    the exact maximizer of the code subproblem's trace objective."""
    updated = []
    for p, g in enumerate(graphs):
        arg = (
            config.alpha * (state.projections[p].T @ g)
            + 0.5 * (state.mu * state.aux_code[:, :, p] - state.dual_code[:, :, p])
        )
        updated.append(sign_pm1(arg))
    return updated


def _aux_update(block_stack, dual, mu, zeta, n):
    lead = max(block_stack.shape[0], block_stack.shape[2])
    lam = 1.0 / np.sqrt(lead * n)
    return enhanced_tensor_svt(block_stack + dual / mu, mu, zeta, lam)


def update_aux_projection(state, config):
    """Two-stage shrinkage of stack(Q) + Y/mu with the weight
    1/sqrt(max(m, v) * n)."""
    n = state.codes[0].shape[1]
    return _aux_update(
        stack_views(state.projections), state.dual_projection,
        state.mu, config.zeta, n,
    )


def update_aux_code(state, config):
    """Same shrinkage applied to stack(B) + J/mu, weight
    1/sqrt(max(bits, v) * n)."""
    n = state.codes[0].shape[1]
    return _aux_update(
        stack_views(state.codes), state.dual_code,
        state.mu, config.zeta, n,
    )


def update_multipliers(state, config):
    """Gradient step on both multipliers, then grow the shared penalty:
    mu <- min(rho * mu, mu_max)."""
    dual_projection = state.dual_projection + state.mu * (
        stack_views(state.projections) - state.aux_projection
    )
    dual_code = state.dual_code + state.mu * (
        stack_views(state.codes) - state.aux_code
    )
    mu = min(config.rho * state.mu, config.mu_max)
    return dual_projection, dual_code, mu


def objective_value(state, graphs, config):
    """Data-fit term plus both enhanced tensor nuclear norms."""
    fit = sum(
        np.linalg.norm(state.projections[p].T @ g - state.codes[p]) ** 2
        for p, g in enumerate(graphs)
    )
    return (
        config.alpha * fit
        + enhanced_tensor_nuclear_norm(stack_views(state.projections), config.zeta)
        + enhanced_tensor_nuclear_norm(stack_views(state.codes), config.zeta)
    )


def _check_finite(state, iteration):
    for name, arr in (
        ("projections", state.projections),
        ("aux_projection", [state.aux_projection]),
        ("aux_code", [state.aux_code]),
        ("dual_projection", [state.dual_projection]),
        ("dual_code", [state.dual_code]),
    ):
        for a in arr:
            if not np.all(np.isfinite(a)):
                raise NonFinite(
                    f"non-finite value in {name} at iteration {iteration}",
                    iteration=iteration,
                )


def solve(graphs, config):
    """Run the full alternating loop and fuse the learned codes.

    Stops when the larger of the two primal residuals, each normalized by
    the square root of its element count, drops below config.tol, or
    after config.max_iter iterations. Returns the hash codes and the
    per-iteration history.
    """
    graphs = [np.asarray(g, dtype=float) for g in graphs]
    state = init_state(graphs, config)
    grams = [g @ g.T for g in graphs]
    q_size = np.sqrt(state.aux_projection.size)
    b_size = np.sqrt(state.aux_code.size)
    history = []
    for it in range(1, config.max_iter + 1):
        t0 = time.perf_counter()
        mu_used = state.mu
        state.projections, q_res = update_projections(
            state, graphs, config, grams=grams, with_residual=True
        )
        state.codes = update_codes(state, graphs, config)
        _check_finite(state, it)
        state.aux_projection = update_aux_projection(state, config)
        state.aux_code = update_aux_code(state, config)
        _check_finite(state, it)
        res_q = float(np.linalg.norm(stack_views(state.projections) - state.aux_projection))
        res_b = float(np.linalg.norm(stack_views(state.codes) - state.aux_code))
        obj = float(objective_value(state, graphs, config))
        state.dual_projection, state.dual_code, state.mu = update_multipliers(
            state, config
        )
        state.iteration = it
        history.append(IterationRecord(
            iteration=it,
            objective=obj,
            res_projection=res_q,
            res_code=res_b,
            mu=mu_used,
            seconds=time.perf_counter() - t0,
            projection_residual=q_res,
        ))
        if max(res_q / q_size, res_b / b_size) < config.tol:
            break
    codes = HashCodes(
        per_view=[b.copy() for b in state.codes],
        fused=fuse_codes(state.codes),
    )
    return codes, history
