"""Delay-and-sum beamforming simulation for uniform linear and circular
microphone arrays."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    BeamsimError, FormatError, GeometryMismatchError, InvalidGeometryError,
    ParameterError, RangeError,
)
from .geometry import (  # noqa: E402
    ArrayGeometry, ArrayKind, Medium, circular_physical_delays,
    circular_steering_delays, linear_physical_delays, linear_steering_delays,
    physical_delays, spacing_to_radius, steering_delays,
)
from .beampattern import (  # noqa: E402
    BeamPatternGrid, Lobe, PolarSlice, compute_grid, find_lobes, polar_slice,
    transfer_function,
)
from .simulator import (  # noqa: E402
    InterpolatorSpec, MonoSignal, MultichannelCapture, beamform, end_to_end,
    fractional_delay, propagate, tone_gain,
)
from .analysis import (  # noqa: E402
    AttenuationSpectrum, attenuation_spectrum, band_average_attenuation,
)
from .signals import synthetic_speech, tone, white_noise  # noqa: E402
