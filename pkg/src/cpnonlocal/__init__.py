"""Monte Carlo simulator for mechanical detection of entanglement-induced
circular-polarization collapse, with the correlation and spectral
statistics used to read it out."""

__version__ = "0.1.0"

from .analysis import (
    CorrelationResult,
    SpectraResult,
    correlation_cp,
    correlation_lagged,
    correlation_pearson,
    noise_spectra,
    normalized_differences,
)
from .experiment import (
    CorrelationMode,
    ExperimentConfig,
    GeometrySpec,
    ReadoutNoiseSpec,
    TrialRecord,
    TrialSeries,
    check_nonlocality_condition,
    parameter_report,
    run_experiment,
    run_trial,
)
from .optics import (
    AmplifierSpec,
    MechanicalDetectorState,
    PhotonLedger,
    WavePlateSpec,
    amplify,
    apply_photon_batch,
    closed_form_delta_omega,
    frequency_shift_ledger,
    moment_of_inertia,
)
from .source import SourceSpec, WindowCounts, photon_energy, sample_window, trial_stream
from .states import (
    BellPair,
    CpOutcome,
    PolarizationState,
    cp_to_lp,
    decompose_bell_in_cp,
    lp_to_cp,
    project_alice_cp,
)
