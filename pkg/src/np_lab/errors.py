"""Exception types shared across the package.

Every error that a caller is expected to catch and act on gets its own
class; plain ValueError is reserved for malformed arguments that indicate
a caller bug.
"""


class NpLabError(Exception):
    """Base class for all package errors."""


class ConeViolation(NpLabError):
    """A lattice point lies outside the nonnegative cone of the polytope."""


class OutsideDomain(NpLabError):
    """An argument lies outside the domain of the map (e.g. eta on a point
    that is not a fundamental-domain residue)."""


class MixedModulus(NpLabError):
    """Two exact-arithmetic operands disagree on p, precision, or truncation."""


class PrecisionExhausted(NpLabError):
    """A p-adic division consumed more precision than the operand carries."""


class NonIntegral(NpLabError):
    """A quantity that must be p-integral (or an integer) is not; this always
    signals an implementation bug, never bad user input."""


class NonIntegralFit(NonIntegral):
    """The exact polynomial fit produced a non-integer coefficient."""


class TruncationUnsound(NpLabError):
    """The requested series truncation cannot be justified by the basis
    cutoff; results would silently drop contributing terms."""


class ScaleExceeded(NpLabError):
    """A brute-force computation exceeds the configured desk-scale gate."""


class IndexTooLarge(NpLabError):
    """A power-series index requires division by a multiple of p."""


class VerificationFailed(NpLabError):
    """A leading universal coefficient vanished mod p under the prime
    hypothesis.  This contradicts the theory being verified and must be
    surfaced loudly, never swallowed."""


class FactorizationMismatch(NpLabError):
    """The residue-class block factorization disagrees with the direct
    determinant."""


class NotAUnit(NpLabError):
    """A block determinant scalar expected to be a p-adic unit is ~ 0 mod p."""


class OracleMismatch(NpLabError):
    """The exponential-sum oracle and the operator-matrix path disagree on a
    coefficient; a build-stopping defect."""


class WrongPolytope(NpLabError):
    """A polynomial's support does not realize the requested polytope (some
    vertex coefficient vanishes)."""


class InconsistentTransfer(NpLabError):
    """The alternating slope-multiset transfer produced a negative
    multiplicity, which indicates the input window was too short."""
