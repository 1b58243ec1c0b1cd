"""Detection error tradeoff metrics for verification score lists.

A trial is a (label, score) pair where a higher score argues for the
target hypothesis. The decision rule is accept when score >= threshold,
so ties are accepted. Sweeping the threshold over every distinct score
(plus the accept-all and reject-all extremes) produces the DET curve from
which the equal error rate and the minimum detection cost are read.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, MissingClassError

_LABEL_ALIASES = {
    "target": True,
    "nontarget": False,
    "1": True,
    "0": False,
}


@dataclass(frozen=True)
class DetCurve:
    """Operating points ordered by rising threshold.

    p_miss is non-decreasing and p_fa non-increasing along the sweep; the
    accept-all point (0, 1) and reject-all point (1, 0) are always present.
    """

    thresholds: np.ndarray
    p_miss: np.ndarray
    p_fa: np.ndarray


def _labels_scores(labels, scores) -> tuple[np.ndarray, np.ndarray]:
    scores = np.asarray(scores, dtype=np.float64)
    if not np.all(np.isfinite(scores)):
        raise InvalidParameterError("scores must be finite")
    raw = np.asarray(labels)
    if raw.dtype.kind in "US":
        try:
            is_target = np.array([_LABEL_ALIASES[str(v).lower()] for v in raw])
        except KeyError as exc:
            raise InvalidParameterError(f"unknown label {exc.args[0]!r}") from None
    else:
        is_target = raw.astype(bool)
    if is_target.shape != scores.shape:
        raise InvalidParameterError("labels and scores must have equal length")
    if not is_target.any():
        raise MissingClassError("no target trials")
    if is_target.all():
        raise MissingClassError("no nontarget trials")
    return is_target, scores


def det_curve(labels, scores) -> DetCurve:
    """Miss and false-alarm rates at every distinct score threshold.

    p_miss(t) is the fraction of targets scoring below t; p_fa(t) the
    fraction of nontargets scoring at or above t. The sweep is bracketed
    by thresholds -inf (accept everything) and +inf (reject everything).
    """
    is_target, scores = _labels_scores(labels, scores)
    target_scores = np.sort(scores[is_target])
    nontarget_scores = np.sort(scores[~is_target])

    thresholds = np.concatenate(([-np.inf], np.unique(scores), [np.inf]))
    p_miss = np.searchsorted(target_scores, thresholds, side="left") / target_scores.size
    n_accepted = nontarget_scores.size - np.searchsorted(
        nontarget_scores, thresholds, side="left"
    )
    p_fa = n_accepted / nontarget_scores.size
    return DetCurve(thresholds=thresholds, p_miss=p_miss, p_fa=p_fa)


def eer(labels, scores) -> float:
    """Equal error rate: the rate where miss and false alarm curves cross.

    When no swept threshold hits the crossing exactly, the value is read
    off the straight line between the two bracketing operating points.
    """
    curve = det_curve(labels, scores)
    diff = curve.p_miss - curve.p_fa
    idx = int(np.argmax(diff >= 0.0))
    if diff[idx] == 0.0:
        return float(curve.p_miss[idx])
    dm = curve.p_miss[idx] - curve.p_miss[idx - 1]
    df = curve.p_fa[idx] - curve.p_fa[idx - 1]
    u = (curve.p_fa[idx - 1] - curve.p_miss[idx - 1]) / (dm - df)
    return float(curve.p_miss[idx - 1] + u * dm)


def min_dcf(
    labels,
    scores,
    p_tar: float = 0.01,
    c_miss: float = 1.0,
    c_fa: float = 1.0,
    normalize: bool = True,
) -> float:
    """Minimum detection cost over all swept thresholds.

    The cost at a threshold is c_miss*p_tar*p_miss + c_fa*(1-p_tar)*p_fa.
    With normalize (the default) the minimum is divided by the cost of the
    better blind decision, min(c_miss*p_tar, c_fa*(1-p_tar)), which caps
    the result at 1.
    """
    if not 0.0 < p_tar < 1.0:
        raise InvalidParameterError("p_tar must lie in (0, 1)")
    if c_miss <= 0.0 or c_fa <= 0.0:
        raise InvalidParameterError("detection costs must be positive")
    curve = det_curve(labels, scores)
    costs = c_miss * p_tar * curve.p_miss + c_fa * (1.0 - p_tar) * curve.p_fa
    best = float(costs.min())
    if normalize:
        best /= min(c_miss * p_tar, c_fa * (1.0 - p_tar))
    return best
