"""Exception types shared across the package.

Most errors signal bad user input (malformed documents, degenerate fans,
missing data) and derive from ValueError so callers can catch broadly.
"""


class ToricMirrorError(ValueError):
    """Base class for all package-specific errors."""


# --- integer lattice algebra ---

class NotFullRank(ToricMirrorError):
    """Matrix rows are linearly dependent where full row rank is required."""


class ZeroVector(ToricMirrorError):
    """A nonzero vector was required."""


class DependentGenerators(ToricMirrorError):
    """Cone generators were expected to be linearly independent."""


class DimensionMismatch(ToricMirrorError):
    """Operands live in lattices of different rank."""


# --- fan validation ---

class InvalidFan(ToricMirrorError):
    """Base class for fan validation failures."""


class NonPrimitiveRay(InvalidFan):
    """A ray generator is zero, non-primitive, or duplicated."""


class NonUnimodularCone(InvalidFan):
    """A maximal cone is not simplicial-unimodular (smoothness fails)."""


class IncompleteFan(InvalidFan):
    """The cones do not cover the ambient space (facet pairing fails)."""


class BadFaceIntersection(InvalidFan):
    """Two cones meet in a set that is not a common face."""


class FocusNotFound(InvalidFan):
    """No cone of the fan contains the sum of a primitive collection."""


class NotFano(ToricMirrorError):
    """Operation requires a Fano fan."""


# --- Kahler / polytope data ---

class EmptyInterior(ToricMirrorError):
    """The moment polytope has no interior point."""


class NotInBasisSpan(ToricMirrorError):
    """Class has no integer coordinates in the chosen homology basis."""


class LambdaNotQExpressible(ToricMirrorError):
    """A support constant is not -1 times a nonnegative integer combination
    of the basis areas, so exp(lambda) is not a q-monomial."""


# --- Gromov-Witten data ---

class UnknownInvariant(ToricMirrorError):
    """A Gromov-Witten value was requested that no source can supply."""


class BadChernDegree(ToricMirrorError):
    """A class with nonzero first-Chern pairing where zero is required."""


class FingerprintMismatch(ToricMirrorError):
    """A data table is bound to a different fan."""


class InconsistentTable(ToricMirrorError):
    """A loaded table contradicts the built-in invariant rule."""


# --- documents / CLI ---

class SchemaError(ToricMirrorError):
    """An input document does not match its JSON schema."""


class NotBundleShaped(ToricMirrorError):
    """Fan is not a recognized projectivized-canonical-bundle fan."""


# --- evaluation / solving ---

class ZeroCoordinate(ToricMirrorError):
    """Laurent polynomials cannot be evaluated on the coordinate axes."""


class NoConvergence(RuntimeError):
    """The multistart Newton solver found no critical point."""
