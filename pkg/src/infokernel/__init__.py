"""Bit-agreement fingerprints: exact kernels for small bit strings,
sampled antithetic-plane kernels for images, transform robustness
benching, and recognition by averaged templates."""

from .images import Image, invert_image, random_image, synthetic_scene
from .kernel import (DEFAULT_BIT_COUNT, DEFAULT_SEED, Kernel, KernelParams,
                     bit_deviations, build_kernel, build_kernels,
                     deviation, deviation_profile, generate_plane,
                     kernel_bit, similarity)
from .oracle import (BitString, ExactKernel, GeneralString,
                     classify_transformation, exact_kernel, exact_similarity,
                     generalized_exact_kernel)
from .recognizer import LabeledTemplate, average_kernels, classify
from .similarity import SimilarityResult, percent_string
from .transforms import TransformSpec, apply_transform, bench_transforms, default_suite

__version__ = "0.1.0"
