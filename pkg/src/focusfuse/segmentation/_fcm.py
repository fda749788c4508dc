from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, DegenerateInputError


@dataclass
class ClusterResult:
    """Fuzzy partition of scalar features.

    Attributes
    ----------
    memberships : ndarray, shape (n_cluster, n_features)
        Column ``n`` holds the memberships of feature ``n``; columns sum to 1.
    assignment : ndarray of int, shape (n_features,)
        1-based index of the cluster with the largest membership.
    centers : ndarray, shape (n_cluster,)
        Cluster centers in ascending order.
    objective : list of float
        Weighted within-cluster scatter after each iteration.
    """

    memberships: np.ndarray
    assignment: np.ndarray
    centers: np.ndarray
    objective: list = field(default_factory=list)
    n_iter: int = 0


def _memberships(x, centers, m):
    d = np.abs(x[None, :] - centers[:, None])
    u = np.empty_like(d)
    hit = d == 0
    singular = hit.any(axis=0)
    if singular.any():
        u[:, singular] = hit[:, singular] / hit[:, singular].sum(axis=0)
    regular = ~singular
    if regular.any():
        dr = d[:, regular]
        # powers of ratios to the nearest center are <= 1; a ratio that
        # overflows to inf (subnormal nearest distance) correctly maps to 0
        with np.errstate(over="ignore"):
            r = (dr / dr.min(axis=0)) ** (-2.0 / (m - 1.0))
        u[:, regular] = r / r.sum(axis=0)
    return u


def _centers(x, u, m):
    w = u ** m
    return (w @ x) / w.sum(axis=1)


def _objective(x, u, centers, m):
    return float(np.sum(u ** m * (x[None, :] - centers[:, None]) ** 2))


def fcm(features, n_cluster, m=2.0, tol=1e-6, max_iter=300, seed=None, init="quantile"):
    """Fuzzy c-means on one-dimensional features.

    Parameters
    ----------
    features : array_like or RegionFeatures
        Scalar feature per item; a ``RegionFeatures`` contributes its ``mns``.
    n_cluster : int
        Number of clusters, between 2 and the number of features.
    m : float
        Fuzzifier, > 1.
    tol : float
        Stop when no membership changes by more than this between iterations.
    max_iter : int
    seed : int, optional
        Seed for ``init="random"``.
    init : {"quantile", "random"}
        "quantile" places the starting centers at evenly spaced quantiles of
        the distinct feature values; "random" draws a random membership matrix.

    Returns
    -------
    ClusterResult
        Clusters are reordered so centers increase with the cluster index.
    """
    x = np.asarray(getattr(features, "mns", features), dtype=np.float64).ravel()
    if not np.all(np.isfinite(x)):
        raise ConfigError("features must be finite")
    if int(n_cluster) != n_cluster or n_cluster < 2:
        raise ConfigError(f"n_cluster must be an integer >= 2, got {n_cluster!r}")
    n_cluster = int(n_cluster)
    if not m > 1:
        raise ConfigError(f"fuzzifier m must be > 1, got {m!r}")
    if not tol > 0 or max_iter < 1:
        raise ConfigError("tol must be positive and max_iter at least 1")
    if np.all(x == x[0]):
        raise DegenerateInputError("all features are identical; there is nothing to cluster")
    if n_cluster > x.size:
        raise ConfigError(f"n_cluster={n_cluster} exceeds the number of features ({x.size})")

    if init == "quantile":
        distinct = np.unique(x)
        q = (np.arange(n_cluster) + 0.5) / n_cluster
        centers = np.quantile(distinct, q)
        u = _memberships(x, centers, m)
    elif init == "random":
        u = np.random.default_rng(seed).random((n_cluster, x.size))
        u /= u.sum(axis=0)
        centers = _centers(x, u, m)
        u = _memberships(x, centers, m)
    else:
        raise ConfigError(f"unknown init {init!r}")

    objective = [_objective(x, u, centers, m)]
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        centers = _centers(x, u, m)
        u_new = _memberships(x, centers, m)
        objective.append(_objective(x, u_new, centers, m))
        delta = np.max(np.abs(u_new - u))
        u = u_new
        if delta < tol:
            break

    order = np.argsort(centers, kind="stable")
    centers = centers[order]
    u = u[order]
    assignment = np.argmax(u, axis=0) + 1
    return ClusterResult(memberships=u, assignment=assignment, centers=centers,
                         objective=objective, n_iter=n_iter)
