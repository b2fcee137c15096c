"""Estimation: maximum pseudolikelihood and Monte Carlo MLE.

The pseudolikelihood treats every dyad as an independent logistic
observation whose design row is that dyad's change-score vector; it is exact
for dyad-independent models and the standard starting point otherwise.  The
MC MLE then iterates importance-sampling approximations of the likelihood
around the current estimate, refreshing the sample between iterations and
growing it geometrically until the estimated log-likelihood gain drops
below tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats as sstats

from .census import full_census
from .model import ModelError, ModelSpec
from .sampler import SamplerConfig, simulate

__all__ = [
    "FitConfig",
    "FittedModel",
    "InferenceError",
    "mple",
    "mcmc_mle",
    "estimate_loglik",
    "summarize_fit",
]


class InferenceError(RuntimeError):
    pass


@dataclass
class FitConfig:
    max_iter: int = 20
    tol: float = 1e-4            # stop when estimated loglik gain falls below
    sample_size: int = 500
    sample_growth: float = 1.5
    max_sample_size: int = 4000
    burnin: int = 10_000
    interval: int = 100
    seed: int | None = None
    proposal: str = "tnt"
    step_cap: float = 1.0        # trust region on each parameter update
    loglik_bridges: int = 12     # 0 disables likelihood estimation
    loglik_sample_size: int = 200


@dataclass
class FittedModel:
    model: ModelSpec
    theta: np.ndarray
    std_errors: np.ndarray
    covariance: np.ndarray
    names: list
    method: str                   # "mple" or "mcmc_mle"
    converged: bool
    status: str                   # "converged", "max_iter", "separation", ...
    iterations: int = 0
    improvements: list = field(default_factory=list)
    loglik: float | None = None
    null_loglik: float | None = None
    n_dyads: int = 0

    @property
    def aic(self):
        if self.loglik is None:
            return None
        return -2.0 * self.loglik + 2 * len(self.theta)

    @property
    def bic(self):
        if self.loglik is None:
            return None
        return -2.0 * self.loglik + len(self.theta) * math.log(self.n_dyads)


def _dyad_design(model: ModelSpec, g):
    """Change-score design matrix over all dyads, plus the 0/1 response.

    Rows are t(y+) - t(y-) with the rest of the observed graph held fixed.
    """
    plan = model.plan(g)
    cache = model.make_cache(g, plan)
    rows = []
    resp = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            present = g.has_edge(i, j)
            delta, _ = plan.evaluate(g, i, j, not present, cache=cache)
            if present:
                delta = -delta
            rows.append(delta)
            resp.append(1.0 if present else 0.0)
    return np.array(rows), np.array(resp), plan


def _check_rank(xtwx, names):
    """Raise with the offending statistic names when the information matrix
    is numerically singular."""
    u, s, vt = np.linalg.svd(xtwx)
    if s[0] == 0 or s[-1] / s[0] < 1e-12:
        null = np.abs(vt[-1])
        involved = [names[k] for k in np.flatnonzero(null > 0.1 * null.max())]
        raise InferenceError(
            "information matrix is singular; collinear statistics: "
            + ", ".join(involved)
        )


def mple(model: ModelSpec, g) -> FittedModel:
    """Maximum pseudolikelihood estimate by iteratively reweighted least
    squares on the dyad-level logistic regression."""
    x, y, plan = _dyad_design(model, g)
    names = plan.names
    beta = np.zeros(x.shape[1])
    status = "converged"
    converged = True
    it = 0
    for it in range(1, 51):
        eta = np.clip(x @ beta, -30, 30)
        mu = 1.0 / (1.0 + np.exp(-eta))
        w = mu * (1.0 - mu)
        xtwx = (x * w[:, None]).T @ x
        _check_rank(xtwx, names)
        step = np.linalg.solve(
            xtwx + 1e-10 * np.eye(len(beta)), x.T @ (y - mu)
        )
        beta = beta + step
        if np.max(np.abs(step)) < 1e-8:
            break
        if np.max(np.abs(beta)) > 20:
            status = "separation"
            converged = False
            warnings.warn(
                "pseudolikelihood estimates diverging; data likely separable "
                "for: " + ", ".join(
                    names[k] for k in np.flatnonzero(np.abs(beta) > 20)
                )
            )
            break
    else:
        status = "max_iter"
        converged = False

    eta = np.clip(x @ beta, -30, 30)
    mu = 1.0 / (1.0 + np.exp(-eta))
    w = np.maximum(mu * (1.0 - mu), 1e-12)
    info = (x * w[:, None]).T @ x
    cov = np.linalg.inv(info + 1e-10 * np.eye(len(beta)))
    return FittedModel(
        model=model.with_theta(beta),
        theta=beta,
        std_errors=np.sqrt(np.diag(cov)),
        covariance=cov,
        names=names,
        method="mple",
        converged=converged,
        status=status,
        iterations=it,
        n_dyads=len(y),
    )


def _weighted_newton(theta_k, t_obs, sims, step_cap):
    """Maximize the sampled likelihood approximation around theta_k.

    l(theta) = (theta - theta_k) . t_obs - log mean exp((theta - theta_k) . t_i)
    with t_i simulated at theta_k.  Returns (theta, l(theta)).
    """
    m, p = sims.shape
    eye = np.eye(p)
    theta = theta_k.copy()

    def objective(th):
        a = sims @ (th - theta_k)
        amax = a.max()
        return float((th - theta_k) @ t_obs - (amax + np.log(np.mean(np.exp(a - amax)))))

    cur = 0.0
    for _ in range(100):
        a = sims @ (theta - theta_k)
        a -= a.max()
        w = np.exp(a)
        w /= w.sum()
        mean = w @ sims
        centered = sims - mean
        hess = (centered * w[:, None]).T @ centered
        grad = t_obs - mean
        step = np.linalg.solve(hess + 1e-8 * eye, grad)
        norm = np.linalg.norm(step)
        if norm > step_cap:
            step *= step_cap / norm
        # halve until the approximation improves (weight degeneracy guard)
        improved = False
        for _ in range(30):
            cand = theta + step
            # trust region: the approximation is only usable near the
            # sampling point, so cap the total displacement from theta_k
            disp = cand - theta_k
            dnorm = np.linalg.norm(disp)
            if dnorm > step_cap:
                cand = theta_k + disp * (step_cap / dnorm)
                if np.linalg.norm(cand - theta) < 1e-10:
                    break
            val = objective(cand)
            ess = None
            if val > cur - 1e-12:
                aa = sims @ (cand - theta_k)
                aa -= aa.max()
                ww = np.exp(aa)
                ww /= ww.sum()
                ess = 1.0 / np.sum(ww**2)
            if ess is not None and ess >= max(5.0, m / 10):
                theta, cur = cand, val
                improved = True
                break
            step *= 0.5
        if not improved or np.linalg.norm(step) < 1e-10:
            break
    # Monte Carlo standard error of the gain estimate (delta method on the
    # log of the importance-weight mean)
    a = sims @ (theta - theta_k)
    a -= a.max()
    e = np.exp(a)
    gain_se = float(np.std(e) / (math.sqrt(m) * np.mean(e)))
    return theta, cur, gain_se


def _basin_filter(sims, t_obs, threshold: float = 8.0):
    """Split a simulated sample by metastable phase.

    Returns None when the observed statistics sit far outside the bulk of
    the sample (the chain equilibrated in a phase that looks nothing like
    the data), otherwise a boolean mask selecting the draws belonging to
    the data's phase.  Distances are robust per-coordinate (median/MAD
    with a fraction of the standard deviation as a scale floor) rather
    than Mahalanobis: a chain that tips mid-run inflates the sample
    covariance along the transition path, which would mask both the
    wrong-phase case and the contaminating draws.
    """
    med = np.median(sims, axis=0)
    mad = 1.4826 * np.median(np.abs(sims - med), axis=0)
    scale = np.maximum(np.maximum(mad, 0.1 * sims.std(axis=0, ddof=1)), 1e-8)
    if np.max(np.abs(t_obs - med) / scale) > threshold:
        return None
    keep = np.max(np.abs(sims - med) / scale, axis=1) <= 1.5 * threshold
    if keep.mean() < 0.5:
        return None
    return keep


def mcmc_mle(model: ModelSpec, g, config: FitConfig | None = None) -> FittedModel:
    """Monte Carlo maximum likelihood with sample refreshment.

    Starts from the pseudolikelihood estimate; each iteration simulates at
    the current estimate and maximizes the importance-sampled likelihood
    approximation, stopping when the estimated gain falls below tolerance.
    """
    config = config or FitConfig()
    start = mple(model, g)
    theta = start.theta.copy()
    names = start.names
    t_obs = model.observed_statistics(g)
    seedseq = np.random.SeedSequence(config.seed)

    sample_size = config.sample_size
    improvements = []
    status = "max_iter"
    converged = False
    sims = None
    prev_theta = None
    backtracks = 0
    # restart point for an unusable pseudolikelihood start: match the
    # observed density through a pure edge-count statistic when the model
    # has one, otherwise just shrink the start
    rho = min(max(g.edge_count / (g.n * (g.n - 1) / 2), 1e-6), 1 - 1e-6)
    fallback_theta = 0.25 * theta
    for pos, name in enumerate(names):
        if name in ("edges", "graphlet.0.Count"):
            fallback_theta = np.zeros_like(theta)
            fallback_theta[pos] = math.log(rho / (1 - rho))
            break
    it = 0
    for it in range(1, config.max_iter + 1):
        child = seedseq.spawn(1)[0]
        scfg = SamplerConfig(
            burnin=config.burnin,
            interval=config.interval,
            sample_size=int(sample_size),
            seed=int(child.generate_state(1)[0]),
            proposal=config.proposal,
        )
        res = simulate(model.with_theta(theta), g, scfg)
        sims = res.stats
        if np.all(sims == sims[0], axis=0).all():
            # a frozen chain right after an update is an overshoot, not a
            # hopeless model: restart from the density-matched point or
            # back off toward the last usable estimate
            if fallback_theta is not None:
                theta = fallback_theta
                fallback_theta = None
                continue
            if prev_theta is not None and backtracks < 4:
                theta = 0.5 * (theta + prev_theta)
                backtracks += 1
                continue
            raise InferenceError(
                "simulated sample is degenerate (every statistic constant); "
                "the model is likely concentrating on near-empty or "
                "near-complete graphs, consider different terms"
            )
        keep = _basin_filter(sims, t_obs)
        if keep is None:
            # the chain drifted into a phase that looks nothing like the
            # data (metastable/absorbing regime); restart from the
            # density-matched edges-only point, then fall back to halving
            # toward the last usable estimate
            if fallback_theta is not None:
                theta = fallback_theta
                fallback_theta = None
                continue
            if (prev_theta is not None and backtracks < 6
                    and not np.allclose(theta, prev_theta)):
                theta = 0.5 * (theta + prev_theta)
                backtracks += 1
                # long chains cross into the wrong phase more easily;
                # start over with short ones after a restart
                sample_size = config.sample_size
                continue
        backtracks = 0
        prev_theta = theta
        # draws that tipped into another phase mid-run would dominate the
        # importance weights and the curvature estimate; drop them
        sims = sims[keep]
        # partial stepping: when the observation sits outside the simulated
        # cloud the importance approximation has no support there, so aim at
        # a point on the segment toward it that the sample still covers
        mean = sims.mean(axis=0)
        cov = np.atleast_2d(np.cov(sims.T, ddof=1))
        gap = t_obs - mean
        d2 = float(gap @ np.linalg.solve(cov + 1e-8 * np.eye(len(gap)), gap))
        gamma = 1.0 if d2 <= 4.0 else math.sqrt(4.0 / d2)
        t_target = mean + gamma * gap
        new_theta, gain, gain_se = _weighted_newton(
            theta, t_target, sims, config.step_cap
        )
        improvements.append(gain)
        theta = new_theta
        # stop when the full observation is being targeted and the
        # estimated gain is below tolerance or statistically
        # indistinguishable from simulation noise
        if gamma == 1.0 and (gain < config.tol or gain < 2.0 * gain_se):
            status = "converged"
            converged = True
            break
        sample_size = min(sample_size * config.sample_growth, config.max_sample_size)

    # standard errors from the statistic covariance at the final estimate;
    # retry the simulation when a chain tips into the wrong phase, since a
    # wrong-basin sample grossly misstates the curvature at the data
    final_stats = None
    for _ in range(6):
        child = seedseq.spawn(1)[0]
        scfg = SamplerConfig(
            burnin=config.burnin,
            interval=config.interval,
            # deliberately not the grown size: short chains are much less
            # likely to wander into a metastable phase mid-run
            sample_size=int(config.sample_size),
            seed=int(child.generate_state(1)[0]),
            proposal=config.proposal,
        )
        final_stats = simulate(model.with_theta(theta), g, scfg).stats
        if np.all(final_stats == final_stats[0], axis=0).all():
            raise InferenceError(
                "simulated sample is degenerate (every statistic constant); "
                "the model is likely concentrating on near-empty or "
                "near-complete graphs, consider different terms"
            )
        keep = _basin_filter(final_stats, t_obs)
        if keep is not None:
            final_stats = final_stats[keep]
            break
    info = np.cov(final_stats.T, ddof=1)
    info = np.atleast_2d(info)
    _check_rank(info, names)
    cov = np.linalg.inv(info + 1e-10 * np.eye(len(theta)))

    fit = FittedModel(
        model=model.with_theta(theta),
        theta=theta,
        std_errors=np.sqrt(np.diag(cov)),
        covariance=cov,
        names=names,
        method="mcmc_mle",
        converged=converged,
        status=status,
        iterations=it,
        improvements=improvements,
        n_dyads=g.n * (g.n - 1) // 2,
    )
    if config.loglik_bridges > 0:
        ll, ll0 = estimate_loglik(
            model.with_theta(theta), g, t_obs,
            nbridges=config.loglik_bridges,
            sample_size=config.loglik_sample_size,
            burnin=config.burnin,
            interval=config.interval,
            seed=int(seedseq.spawn(1)[0].generate_state(1)[0]),
        )
        fit.loglik = ll
        fit.null_loglik = ll0
    return fit


def estimate_loglik(model: ModelSpec, g, t_obs=None, nbridges: int = 12,
                    sample_size: int = 200, burnin: int = 5_000,
                    interval: int = 50, seed=None):
    """Bridge-sampled log-likelihood at the model's coefficients.

    The reference point theta = 0 is the uniform distribution over graphs,
    whose log normalizer is known exactly (D log 2 for D dyads).  The log
    normalizer ratio along the path theta_k = (k/K) theta is accumulated
    from simulated statistics at each step.
    """
    if model.theta is None:
        raise ModelError("log-likelihood needs model coefficients")
    if t_obs is None:
        t_obs = model.observed_statistics(g)
    d = g.n * (g.n - 1) // 2
    log_z0 = d * math.log(2.0)
    theta = np.asarray(model.theta, float)
    seedseq = np.random.SeedSequence(seed)

    log_ratio = 0.0
    for k in range(nbridges):
        th_k = (k / nbridges) * theta
        th_next = ((k + 1) / nbridges) * theta
        scfg = SamplerConfig(
            burnin=burnin,
            interval=interval,
            sample_size=sample_size,
            seed=int(seedseq.spawn(1)[0].generate_state(1)[0]),
            proposal="uniform",
        )
        res = simulate(model.with_theta(th_k), g, scfg)
        a = res.stats @ (th_next - th_k)
        amax = a.max()
        log_ratio += amax + math.log(float(np.mean(np.exp(a - amax))))

    loglik = float(theta @ t_obs) - (log_z0 + log_ratio)
    null_loglik = -log_z0
    return loglik, null_loglik


_SIG_CODES = ((0.001, "***"), (0.01, "**"), (0.05, "*"), (0.1, "."))


def _sig(p):
    for cut, code in _SIG_CODES:
        if p < cut:
            return code
    return " "


def summarize_fit(fit: FittedModel) -> str:
    """Regression-style text summary: estimates, errors, z, p, deviances."""
    lines = []
    lines.append(f"Method: {fit.method}  status: {fit.status}  "
                 f"iterations: {fit.iterations}")
    width = max(len(n) for n in fit.names)
    header = (f"{'':{width}}  {'Estimate':>10} {'Std.Err':>10} "
              f"{'z value':>8} {'Pr(>|z|)':>9}")
    lines.append(header)
    for name, est, se in zip(fit.names, fit.theta, fit.std_errors):
        if se > 0 and np.isfinite(se):
            z = est / se
            p = 2.0 * sstats.norm.sf(abs(z))
            lines.append(f"{name:{width}}  {est:>10.4f} {se:>10.4f} "
                         f"{z:>8.3f} {p:>9.4f} {_sig(p)}")
        else:
            lines.append(f"{name:{width}}  {est:>10.4f} {'NA':>10} "
                         f"{'NA':>8} {'NA':>9}")
    lines.append("Signif. codes: 0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1")
    if fit.loglik is not None and fit.null_loglik is not None:
        null_dev = -2.0 * fit.null_loglik
        res_dev = -2.0 * fit.loglik
        lines.append(f"Null deviance:     {null_dev:10.2f} on {fit.n_dyads} dyads")
        lines.append(f"Residual deviance: {res_dev:10.2f} on "
                     f"{fit.n_dyads - len(fit.theta)} degrees of freedom")
        lines.append(f"AIC: {fit.aic:.2f}  BIC: {fit.bic:.2f}")
    return "\n".join(lines)
