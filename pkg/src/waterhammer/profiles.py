"""Initial-data profiles given as small arithmetic expressions in ``x``.

Expressions are parsed with :mod:`ast` and only arithmetic, the names in
``_FUNCTIONS``/``_CONSTANTS`` and the variable ``x`` are allowed.
"""

import ast
import math

import numpy as np

from .errors import ParameterError

_FUNCTIONS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "tanh": np.tanh,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "log": np.log,
    "where": np.where,
    "minimum": np.minimum,
    "maximum": np.maximum,
}
_CONSTANTS = {"pi": math.pi, "e": math.e}
_ALLOWED_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load,
    ast.Constant, ast.Compare,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.Mod, ast.USub, ast.UAdd,
    ast.Lt, ast.LtE, ast.Gt, ast.GtE,
)


def _check(tree, source):
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ParameterError(f"unsupported syntax {type(node).__name__} in {source!r}")
        if isinstance(node, ast.Name) and node.id != "x" and node.id not in _FUNCTIONS and node.id not in _CONSTANTS:
            raise ParameterError(f"unknown name {node.id!r} in {source!r}")
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name) and node.func.id in _FUNCTIONS):
            raise ParameterError(f"only {sorted(_FUNCTIONS)} may be called in {source!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, (int, float)):
            raise ParameterError(f"non-numeric literal in {source!r}")


class Profile:
    """A function of position with a canonical text form.

    ``Profile(1000.0)`` is a constant; ``Profile("1000 + exp(-(x-20)**2)")``
    is an expression.  Calling with an array returns an array of the same
    shape.
    """

    def __init__(self, source):
        if isinstance(source, Profile):
            source = source.source
        if isinstance(source, bool):
            raise ParameterError("profile must be a number or an expression string")
        if isinstance(source, (int, float)):
            self.source = float(source)
            self._code = None
        elif isinstance(source, str):
            text = source.strip()
            try:
                tree = ast.parse(text, mode="eval")
            except SyntaxError as exc:
                raise ParameterError(f"cannot parse profile {text!r}: {exc.msg}") from None
            _check(tree, text)
            self.source = text
            self._code = compile(tree, "<profile>", "eval")
        else:
            raise ParameterError("profile must be a number or an expression string")

    @property
    def is_constant(self):
        return self._code is None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self._code is None:
            return np.full(x.shape, self.source)
        namespace = dict(_FUNCTIONS)
        namespace.update(_CONSTANTS)
        namespace["x"] = x
        out = eval(self._code, {"__builtins__": {}}, namespace)
        return np.broadcast_to(np.asarray(out, dtype=float), x.shape).copy()

    def __eq__(self, other):
        return isinstance(other, Profile) and self.source == other.source

    def __hash__(self):
        return hash(self.source)

    def __repr__(self):
        return f"Profile({self.source!r})"
