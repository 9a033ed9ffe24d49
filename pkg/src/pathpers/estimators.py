"""scikit-learn style wrappers around the persistence and clustering functions."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .diagrams import bottleneck
from .dowker import dowker_diagram
from .metrics import cut_dendrogram, single_linkage
from .network import Network
from .persistence import DEFAULT_MAX_DIM, PersistenceDiagram, ppd


def check_network(X) -> Network:
    if isinstance(X, Network):
        return X
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square weight matrix, got shape {arr.shape}")
    return Network.from_matrix(arr.tolist())


def check_networks(X) -> list[Network]:
    """Validate a collection of networks or square weight matrices."""
    if isinstance(X, Network):
        raise ValueError("expected a collection of networks; wrap a single network in a list")
    if isinstance(X, np.ndarray) and X.ndim == 2:
        raise ValueError("expected a 3D stack of matrices or a list of networks")
    nets = [check_network(x) for x in X]
    if not nets:
        raise ValueError("empty collection of networks")
    return nets


def check_diagram_samples(X) -> list[list[PersistenceDiagram]]:
    out = []
    for sample in X:
        if isinstance(sample, PersistenceDiagram):
            sample = [sample]
        sample = list(sample)
        if not all(isinstance(d, PersistenceDiagram) for d in sample):
            raise TypeError("samples must be persistence diagrams or lists of them")
        out.append(sample)
    return out


class PathPersistence(TransformerMixin, BaseEstimator):
    """Map each network to its path persistence diagrams.

    ``transform`` returns one list per network holding a diagram for each
    entry of ``homology_dimensions``.
    """

    def __init__(self, homology_dimensions=(0, 1), max_dim=DEFAULT_MAX_DIM, prime=None, n_jobs=None):
        self.homology_dimensions = homology_dimensions
        self.max_dim = max_dim
        self.prime = prime
        self.n_jobs = n_jobs

    def _diagram(self, net, p):
        return ppd(net, p, max_dim=self.max_dim, prime=self.prime)

    def fit(self, X, y=None):
        check_networks(X)
        dims = tuple(int(p) for p in self.homology_dimensions)
        for p in dims:
            if p < 0 or p > self.max_dim:
                raise ValueError(f"homology dimension {p} outside [0, {self.max_dim}]")
        self.homology_dimensions_ = dims
        return self

    def _one(self, net):
        return [self._diagram(net, p) for p in self.homology_dimensions_]

    def transform(self, X):
        check_is_fitted(self)
        nets = check_networks(X)
        if self.n_jobs in (None, 1):
            return [self._one(net) for net in nets]
        return Parallel(n_jobs=self.n_jobs)(delayed(self._one)(net) for net in nets)


class DowkerPersistence(PathPersistence):
    """Sink Dowker persistence diagrams, same interface as :class:`PathPersistence`."""

    def __init__(self, homology_dimensions=(1,), max_dim=DEFAULT_MAX_DIM, n_jobs=None):
        self.homology_dimensions = homology_dimensions
        self.max_dim = max_dim
        self.n_jobs = n_jobs

    def _diagram(self, net, p):
        return dowker_diagram(net, p, max_dim=self.max_dim)


def _sample_distance(a, b):
    if len(a) != len(b):
        raise ValueError("samples carry different numbers of diagrams")
    return max((bottleneck(x, y) for x, y in zip(a, b)), default=Fraction(0))


class PairwiseBottleneck(TransformerMixin, BaseEstimator):
    """Bottleneck distances from new samples to the fitted ones.

    With several diagrams per sample the distance is the maximum over them.
    ``transform`` returns an object array of exact Fractions (or ``inf``).
    """

    def fit(self, X, y=None):
        self.diagrams_ = check_diagram_samples(X)
        return self

    def transform(self, X):
        check_is_fitted(self)
        samples = check_diagram_samples(X)
        out = np.empty((len(samples), len(self.diagrams_)), dtype=object)
        for i, a in enumerate(samples):
            for j, b in enumerate(self.diagrams_):
                out[i, j] = _sample_distance(a, b)
        return out


class SingleLinkageClustering(ClusterMixin, BaseEstimator):
    """Single linkage on a precomputed distance matrix.

    ``labels_`` are cluster indices from cutting the dendrogram at
    ``distance_threshold`` (all points together when it is None).
    """

    def __init__(self, distance_threshold=None, leaf_labels=None):
        self.distance_threshold = distance_threshold
        self.leaf_labels = leaf_labels

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=object)
        names = self.leaf_labels
        if names is None:
            names = [str(i) for i in range(X.shape[0])]
        self.dendrogram_ = single_linkage(X.tolist(), list(names))
        if self.distance_threshold is None:
            self.labels_ = np.zeros(X.shape[0], dtype=int)
        else:
            clusters = cut_dendrogram(self.dendrogram_, self.distance_threshold)
            index = {name: k for k, group in enumerate(clusters) for name in group}
            self.labels_ = np.array([index[name] for name in self.dendrogram_.leaves], dtype=int)
        return self
