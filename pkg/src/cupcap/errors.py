"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class CupCapError(Exception):
    exit_code = 3


class MalformedInput(CupCapError):
    pass


class DuplicateX(CupCapError):
    pass


class Collinear(CupCapError):
    def __init__(self, triple, message=None):
        self.triple = tuple(triple)
        super().__init__(message or f"collinear triple {self.triple}")


class ShearFailed(CupCapError):
    pass


class ExhaustedAttempts(CupCapError):
    pass


class NotFree(CupCapError):
    """A verifier was handed a pair function that has a forbidden cup or cap."""

    def __init__(self, report, k, l):
        self.report = report
        self.k, self.l = k, l
        super().__init__(
            f"not ({k},{l})-free: {report.witness.kind.value} {list(report.witness.indices)}"
        )


class ConvexNGon(CupCapError):
    """The point set has n points in convex position."""

    def __init__(self, n, witness):
        self.n = n
        self.witness = tuple(witness)
        super().__init__(f"{len(self.witness)} points in convex position: {list(self.witness)}")


class NotPeeled(CupCapError):
    pass


class SearchSpaceTooLarge(CupCapError):
    pass


class Falsified(CupCapError):
    """A statement that should always hold failed on a concrete instance."""

    exit_code = 1

    def __init__(self, claim, witness, message=None):
        self.claim = claim
        self.witness = witness
        super().__init__(message or f"{claim} falsified at {witness}")


class VerificationFailed(CupCapError):
    exit_code = 1


class CollinearWarning(UserWarning):
    pass
