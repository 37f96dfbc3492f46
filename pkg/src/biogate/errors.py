"""Exception types shared across the package."""


class BiogateError(Exception):
    """Base class for all biogate errors."""


class SignalTooShort(BiogateError):
    """Signal shorter than the requested segmentation window."""


class SegmentTooShort(BiogateError):
    """Segment too short for the requested embedding dimension."""


class WindowLongerThanSegment(BiogateError):
    """Welch window exceeds the segment length."""


class FeatureNotFinite(BiogateError):
    """A computed feature came out NaN or infinite."""


class OutputTooShort(BiogateError):
    """Time scaling would produce an output shorter than one sample."""


class CropLongerThanSignal(BiogateError):
    """Requested crop duration exceeds the source duration."""


class CarrierTooShort(BiogateError):
    """Superimposition carrier shorter than the target segment."""


class SingleClassTraining(BiogateError):
    """Training data contains fewer than two classes."""


class NonFiniteFeature(BiogateError):
    """Training feature matrix contains NaN or infinite entries."""


class FingerprintMismatch(BiogateError):
    """Feature-name fingerprint of the model does not match the extractor."""


class VersionMismatch(BiogateError):
    """Model file was written by an incompatible format version."""


class CorruptModel(BiogateError):
    """Model file is truncated or structurally invalid."""


class InsufficientSamples(BiogateError):
    """Not enough samples per class for the requested subsampling."""


class ParseError(BiogateError):
    """A signal file could not be parsed."""


class UnsupportedEncoding(BiogateError):
    """WAV encoding not supported (only integer PCM is)."""


class InsufficientSourceData(BiogateError):
    """An ingested source is too short to yield the requested segments."""
