"""holohide: interferometric optical image hiding at desk scale.

An object image is embedded in the diffraction field of an innocuous host
image by two-beam interference; the recorded intensity is the transmitted
ciphertext. The package simulates the forward optical system (Fresnel
propagation, beam-ratio control, sensor), the classical multi-step
phase-shifting decryption it replaces, quality metrics, and reproducible
dataset generation for training learned single-shot reconstructors.
"""

from .errors import FormatError, HolohideError, ParameterError, UndefinedMetricError
from .field import ComplexField, as_image, field_from_image, intensity
from .propagation import (
    ANGULAR_SPECTRUM,
    DEFAULT_DISTANCE,
    FRESNEL_TRANSFER_FUNCTION,
    PropagationSpec,
    band_limit_cutoff,
    invert,
    propagate,
)
from .hiding import (
    DEFAULT_PITCH,
    DEFAULT_WAVELENGTH,
    HidingParams,
    Interferogram,
    SensorModel,
    embed_on_slm,
    host_field,
    object_field,
    synthesize,
    synthesize_psi_stack,
)
from .psi import (
    FOUR_STEP_SHIFTS,
    THREE_STEP_SHIFTS,
    DecryptionKey,
    PsiResult,
    decrypt,
    psi_recover_field,
)
from .metrics import MetricReport, correlation_coefficient, mse, report
from .glyphs import HostGlyph, available_glyphs, render_host
from .idx import (
    IMAGES_MAGIC,
    LABELS_MAGIC,
    load_idx_images,
    parse_idx_images,
    parse_idx_labels,
    write_idx_images,
)
from .sources import synthetic_digits, synthetic_garments, synthetic_source
from .dataset import (
    DatasetManifest,
    GenerationConfig,
    SampleRecord,
    generate,
    iter_split,
    load_ground_truth,
    load_interferogram,
    load_manifest,
    plan_split,
)
from .experiments import SweepRow, plot_sweep, read_sweep_csv, run_sweep, write_sweep_csv

__version__ = "0.1.0"

__all__ = [
    "HolohideError",
    "ParameterError",
    "FormatError",
    "UndefinedMetricError",
    "ComplexField",
    "as_image",
    "field_from_image",
    "intensity",
    "PropagationSpec",
    "propagate",
    "invert",
    "band_limit_cutoff",
    "FRESNEL_TRANSFER_FUNCTION",
    "ANGULAR_SPECTRUM",
    "DEFAULT_DISTANCE",
    "DEFAULT_WAVELENGTH",
    "DEFAULT_PITCH",
    "SensorModel",
    "HidingParams",
    "Interferogram",
    "embed_on_slm",
    "object_field",
    "host_field",
    "synthesize",
    "synthesize_psi_stack",
    "DecryptionKey",
    "PsiResult",
    "psi_recover_field",
    "decrypt",
    "FOUR_STEP_SHIFTS",
    "THREE_STEP_SHIFTS",
    "MetricReport",
    "correlation_coefficient",
    "mse",
    "report",
    "HostGlyph",
    "render_host",
    "available_glyphs",
    "IMAGES_MAGIC",
    "LABELS_MAGIC",
    "parse_idx_images",
    "parse_idx_labels",
    "write_idx_images",
    "load_idx_images",
    "synthetic_digits",
    "synthetic_garments",
    "synthetic_source",
    "GenerationConfig",
    "DatasetManifest",
    "SampleRecord",
    "generate",
    "plan_split",
    "load_manifest",
    "load_ground_truth",
    "load_interferogram",
    "iter_split",
    "SweepRow",
    "run_sweep",
    "write_sweep_csv",
    "read_sweep_csv",
    "plot_sweep",
]
