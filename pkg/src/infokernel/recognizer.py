"""Recognition by averaged fingerprints.

A class template is the per-bit strict majority over the training set's
kernels, so a template is itself an ordinary kernel and classification is
plain maximal bit agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .kernel import Kernel, similarity
from .similarity import SimilarityResult


@dataclass
class LabeledTemplate:
    """A class label with its averaged kernel and the vote counts behind it.

    vote_ones[i] counts training kernels with bit i set; sample_count is
    the training set size. Votes are retained so a template can be rebuilt
    or extended later; they are not serialized.
    """

    label: str
    kernel: Kernel
    vote_ones: Optional[np.ndarray] = None
    sample_count: Optional[int] = None


def average_kernels(kernels, label: str) -> LabeledTemplate:
    """Per-bit strict majority vote; an exact tie yields 0."""
    kernels = list(kernels)
    if not kernels:
        raise ValueError("cannot average an empty kernel list")
    params = kernels[0].params
    for k in kernels:
        if k.params != params:
            raise ValueError("incomparable kernels")
        if k.is_template:
            raise ValueError("cannot average template kernels")
    ones = np.zeros(params.bit_count, dtype=np.int64)
    for k in kernels:
        ones += k.bits
    bits = (2 * ones > len(kernels)).astype(np.uint8)
    template = Kernel(params, bits, is_template=True)
    return LabeledTemplate(label, template, ones, len(kernels))


def classify(probe: Kernel, templates) -> tuple:
    """(label, score) of the best-matching template.

    Exact score ties go to the template listed first, so the result is
    deterministic for any fixed template order.
    """
    templates = list(templates)
    if not templates:
        raise ValueError("cannot classify against an empty template list")
    best_label = None
    best: Optional[SimilarityResult] = None
    for t in templates:
        score = similarity(probe, t.kernel)
        if best is None or score.matches > best.matches:
            best_label, best = t.label, score
    return best_label, best
