"""Multi-band magnitude and phase spectral subtraction."""

from ._mbss import (
    ConfigError,
    DataError,
    Error,
    compare,
    cordic_gain,
    cordic_rotation,
    cordic_vectoring,
    enhance,
    fft,
    ifft,
    mix_at_snr,
    output_snr,
    over_subtraction_factor,
    partition,
    pipeline_delay,
    speech_surrogate,
    tweaking_factor,
    white_noise,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Error",
    "compare",
    "cordic_gain",
    "cordic_rotation",
    "cordic_vectoring",
    "enhance",
    "fft",
    "ifft",
    "mix_at_snr",
    "output_snr",
    "over_subtraction_factor",
    "partition",
    "pipeline_delay",
    "speech_surrogate",
    "tweaking_factor",
    "white_noise",
]
