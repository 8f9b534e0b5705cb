"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class MonoidCollapseError(Exception):
    code = "error"

    def details(self):
        return {}


class FuelExhausted(MonoidCollapseError):
    code = "fuel_exhausted"

    def __init__(self, what, fuel):
        super().__init__(f"{what}: fuel budget of {fuel} exhausted")
        self.what = what
        self.fuel = fuel

    def details(self):
        return {"what": self.what, "fuel": self.fuel}


class OrderViolation(MonoidCollapseError):
    code = "order_violation"

    def __init__(self, rule, text=None):
        super().__init__(f"rule {text or rule} is not shortlex-decreasing")
        self.rule = rule
        self.text = text

    def details(self):
        return {"rule": self.text}


class ParseError(MonoidCollapseError):
    code = "parse_error"

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column

    def details(self):
        return {"line": self.line, "column": self.column, "message": self.message}


class UndeclaredSymbol(ParseError):
    code = "undeclared_symbol"

    def __init__(self, symbol, line, column):
        super().__init__(f"undeclared symbol {symbol!r}", line, column)
        self.symbol = symbol

    def details(self):
        return {**super().details(), "symbol": self.symbol}


class NotFinite(MonoidCollapseError):
    code = "not_finite"


class NotComplete(MonoidCollapseError):
    code = "not_complete"


class GuardViolation(MonoidCollapseError):
    code = "guard_violation"

    def __init__(self, cell, index, variant):
        super().__init__(
            f"collapse index {index} of {cell} absorbs a coefficient in the {variant} lift"
        )
        self.cell = cell
        self.index = index
        self.variant = variant

    def details(self):
        return {"cell": repr(self.cell), "index": self.index, "variant": str(self.variant)}


class BoundaryMismatch(MonoidCollapseError):
    code = "boundary_mismatch"

    def __init__(self, dim):
        super().__init__(f"boundary composite through degree {dim} is nonzero")
        self.dim = dim

    def details(self):
        return {"dim": self.dim}


class DSquaredNonzero(MonoidCollapseError):
    code = "d_squared_nonzero"

    def __init__(self, dim, cell):
        super().__init__(f"d∘d of basis cell {cell} in degree {dim} is nonzero")
        self.dim = dim
        self.cell = cell

    def details(self):
        return {"dim": self.dim, "cell": repr(self.cell)}
