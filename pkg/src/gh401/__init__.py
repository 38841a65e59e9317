"""Chaos-based grayscale image encryption toolkit.

Implements the baseline IEAHF permutation-diffusion cipher together with
the hardened GH401 variant (round-offset permutation, incremented
Q-matrix diffusion, S-box stage, compact key envelope) and the security
metrics used to compare them.
"""

from gh401.chaos import (
    TRANSIENT_LENGTH,
    DynamicalSystem,
    Hosny6D,
    InitialConditions,
    OrbitDivergenceError,
    ReferenceTestMap,
    SystemParams,
    argsort_ascending,
    build_sort_sequence,
    default_params,
    derive_initial_conditions,
    derive_whitening_key,
    draw_params,
    generate_orbit,
    get_system,
    list_systems,
    register_system,
)
from gh401.permute import invert_permute, permute_gh401, permute_ieahf
from gh401.diffuse import (
    DIFFUSION_MATRIX,
    DIFFUSION_MATRIX_INV,
    diffuse_gh401,
    diffuse_ieahf,
    fib_q_power,
    inverse_diffuse,
)
from gh401.sbox import SBox8, bundled_sbox, load_sbox, substitute, transparency_order
from gh401.cipher import (
    SCHEME_GH401,
    SCHEME_IEAHF,
    ChecksumMismatchError,
    EnvelopeMismatchError,
    KeyEnvelope,
    SideChannelFile,
    bandwidth_ratio,
    decrypt_gh401,
    decrypt_ieahf,
    encrypt_gh401,
    encrypt_ieahf,
    ieahf_key_space_bits,
    key_space_bits,
)
from gh401.analysis import (
    CHI2_CRITICAL_255_001,
    AnalysisReport,
    DifferentialResult,
    ZeroVarianceError,
    chi_square,
    correlation,
    differential_test,
    entropy,
    full_report,
    histogram,
    npcr_uaci,
    report_to_text,
)
from gh401.image_io import read_pgm, write_pgm

__version__ = "0.1.0"

__all__ = [
    "TRANSIENT_LENGTH",
    "DynamicalSystem",
    "Hosny6D",
    "InitialConditions",
    "OrbitDivergenceError",
    "ReferenceTestMap",
    "SystemParams",
    "argsort_ascending",
    "build_sort_sequence",
    "default_params",
    "derive_initial_conditions",
    "derive_whitening_key",
    "draw_params",
    "generate_orbit",
    "get_system",
    "list_systems",
    "register_system",
    "invert_permute",
    "permute_gh401",
    "permute_ieahf",
    "DIFFUSION_MATRIX",
    "DIFFUSION_MATRIX_INV",
    "diffuse_gh401",
    "diffuse_ieahf",
    "fib_q_power",
    "inverse_diffuse",
    "SBox8",
    "bundled_sbox",
    "load_sbox",
    "substitute",
    "transparency_order",
    "SCHEME_GH401",
    "SCHEME_IEAHF",
    "ChecksumMismatchError",
    "EnvelopeMismatchError",
    "KeyEnvelope",
    "SideChannelFile",
    "bandwidth_ratio",
    "decrypt_gh401",
    "decrypt_ieahf",
    "encrypt_gh401",
    "encrypt_ieahf",
    "ieahf_key_space_bits",
    "key_space_bits",
    "CHI2_CRITICAL_255_001",
    "AnalysisReport",
    "DifferentialResult",
    "ZeroVarianceError",
    "chi_square",
    "correlation",
    "differential_test",
    "entropy",
    "full_report",
    "histogram",
    "npcr_uaci",
    "report_to_text",
    "read_pgm",
    "write_pgm",
]
