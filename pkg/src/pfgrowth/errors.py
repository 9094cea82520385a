"""Exception hierarchy.

Every error raised by the library derives from :class:`GrowthError`, so the
CLI can report any of them by class name.
"""


class GrowthError(Exception):
    """Base class for all library errors."""


class InputError(GrowthError):
    """Malformed input file or argument."""


# -- based algebras -----------------------------------------------------------

class AlgebraError(GrowthError):
    pass


class NegativeConstant(AlgebraError):
    def __init__(self, index, value):
        self.index = tuple(index)
        self.value = value
        i, j, k = self.index
        super().__init__(f"structure constant m[{i},{j}]^{k} = {value} is negative")


class UnitLawViolation(AlgebraError):
    pass


class AssociativityViolation(AlgebraError):
    def __init__(self, quadruple, left, right):
        self.quadruple = tuple(quadruple)
        self.left = left
        self.right = right
        i, j, k, l = self.quadruple
        super().__init__(
            f"(c{i} c{j}) c{k} and c{i} (c{j} c{k}) differ at c{l}: {left} != {right}"
        )


class RankMismatch(AlgebraError, ValueError):
    pass


class NegativeCoefficient(AlgebraError, ValueError):
    pass


class InvalidCharacterTable(AlgebraError):
    pass


class NonIntegralConstant(InvalidCharacterTable):
    pass


class OrthogonalityViolation(InvalidCharacterTable):
    pass


class MatrixOnlyEntry(AlgebraError):
    """Raised when an algebra-level operation is requested for a matrix-only input."""


# -- graphs and spectra -------------------------------------------------------

class NotIrreducible(GrowthError):
    pass


class SpectralError(GrowthError):
    pass


class ConvergenceFailure(SpectralError):
    pass


class PFPropertyViolation(SpectralError):
    pass


class ZeroSpectralRadius(SpectralError):
    pass


class PhaseNotRootOfUnity(SpectralError):
    pass


class LengthMismatch(SpectralError, ValueError):
    pass


# -- asymptotics --------------------------------------------------------------

class AsymptoticsError(GrowthError):
    pass


class NonRealEvaluation(AsymptoticsError):
    pass


class ZeroAsymptote(AsymptoticsError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"asymptotic formula vanishes at n = {n}")


class InsufficientData(AsymptoticsError):
    pass


class NotFaithful(AsymptoticsError):
    pass


class NonScalarClass(AsymptoticsError):
    pass


# -- catalog ------------------------------------------------------------------

class CatalogError(GrowthError):
    pass


class ParameterTooLarge(CatalogError, ValueError):
    pass


class NotPrime(CatalogError, ValueError):
    pass


class UnknownEntry(CatalogError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown catalog entry"
