"""Perceptually faithful color-to-grayscale conversion and benchmarking."""

from .bench import (
    DataError,
    MethodId,
    QualityReport,
    ReportEntry,
    SummaryStats,
    average_score,
    emit_plot_data,
    evaluate,
    export_report,
    load_dataset,
    success_rate,
    summarize,
)
from .c2gssim import (
    LocalStats,
    MetricConfig,
    SimilarityMaps,
    c2g_ssim,
    gaussian_window,
    local_stats,
    similarity_maps,
)
from .colorspace import (
    GrayImage,
    LabImage,
    RgbImage,
    cie_y_gray,
    lab_to_srgb,
    ntsc_gray,
    srgb_to_lab,
)
from .decolor import (
    DEFAULT_C_GRID,
    DecolorConfig,
    DecolorResult,
    decolor_adaptive,
    decolor_fixed,
    quantize_gray,
)
from .figures import render_summary_figures
from .imgio import load_gray, load_rgb, save_gray
from .lowrank import RankPolicy, SvdFactors, numerical_rank, reconstruct, svd_decompose

__version__ = "0.1.0"
