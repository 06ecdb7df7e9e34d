"""Exception hierarchy shared by every module of the package."""


class QREError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class ZeroDivisorError(QREError, ZeroDivisionError):
    def __init__(self, msg="zero divisor"):
        super().__init__(msg)


class EvaluationPole(QREError, ValueError):
    def __init__(self, msg="evaluation pole"):
        super().__init__(msg)


class ShapeError(QREError, ValueError):
    """Leg or dimension mismatch."""


class SingularMatrixError(QREError, ArithmeticError):
    def __init__(self, column, size):
        self.column = column
        super().__init__(f"singular matrix: no pivot in column {column} of {size}")


class NotIdempotentError(QREError, ValueError):
    pass


class NotHeckeError(QREError, ValueError):
    def __init__(self, msg="not a Hecke operator"):
        super().__init__(msg)


class NotIntertwinerError(QREError, ValueError):
    pass


class MissingPairError(QREError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing R-matrix pair"


class AnsatzError(QREError, ValueError):
    pass
