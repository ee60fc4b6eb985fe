"""Exception hierarchy shared by every module.

Each class carries an ``exit_code`` so the command line can map failures
onto its documented status codes without a lookup table.
"""


class ArgvalError(Exception):
    exit_code = 1


class InputError(ArgvalError):
    """Malformed or inconsistent input (files, formulas, selectors)."""

    exit_code = 2


class FormulaSyntaxError(InputError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class FileFormatError(InputError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)


class UnknownNodeError(InputError):
    def __init__(self, nodes):
        self.nodes = tuple(sorted(nodes))
        super().__init__(f"unknown argument(s): {', '.join(self.nodes)}")


class UnknownValueError(InputError):
    pass


class MissingAtomError(InputError):
    def __init__(self, atoms):
        self.atoms = tuple(sorted(atoms))
        super().__init__(f"interpretation does not assign: {', '.join(self.atoms)}")


class ResourceLimitError(ArgvalError):
    """A configured search or enumeration bound was exceeded."""

    exit_code = 3


class SemanticError(ArgvalError):
    """Well-formed input with no answer under the requested semantics."""

    exit_code = 1


class NoStableLabellingError(SemanticError):
    pass


class IllegalMoveError(ArgvalError):
    exit_code = 1

    def __init__(self, rule, position, message):
        self.rule = rule
        self.position = position
        super().__init__(f"illegal move at position {position} [{rule}]: {message}")


class CycleError(SemanticError):
    pass


class ArityError(InputError):
    pass


class SubstitutionCaptureError(ArgvalError):
    pass
