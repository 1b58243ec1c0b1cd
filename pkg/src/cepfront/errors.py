"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A parameter or configuration value is outside its documented range."""


class UnsupportedEncodingError(ValueError):
    """The WAV container uses an encoding this library does not read."""


class SampleRateMismatchError(ValueError):
    """The file's sample rate differs from the required 16 kHz."""


class InputTooShortError(ValueError):
    """The waveform is shorter than a single analysis frame."""


class DegenerateFilterError(ValueError):
    """A mel filter spans zero FFT bins; raise fft_size or lower num_filters."""


class DimensionMismatchError(ValueError):
    """Matrix operands disagree on a shared dimension."""


class MissingClassError(ValueError):
    """A trial list lacks target or nontarget entries."""


class FileFormatError(ValueError):
    """A feature, score, or config file does not match its documented format."""
