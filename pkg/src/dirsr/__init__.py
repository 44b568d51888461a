"""Learning-based single-image super-resolution with directionlets."""

__version__ = "0.1.0"

from .image import Image, Patch, PatchGrid, read_pgm, write_pgm
from .lattice import canonical_pairs
from .directionlet import SubbandSet, best_direction, forward_awt21, inverse_awt21
from .superres import SRConfig, cubic_spline_upsample, mse, super_resolve
from .trainset import TrainingSet, build_training_set, query_mad

__all__ = [
    "Image",
    "Patch",
    "PatchGrid",
    "read_pgm",
    "write_pgm",
    "canonical_pairs",
    "SubbandSet",
    "best_direction",
    "forward_awt21",
    "inverse_awt21",
    "SRConfig",
    "cubic_spline_upsample",
    "mse",
    "super_resolve",
    "TrainingSet",
    "build_training_set",
    "query_mad",
]
