"""Python front-end for the dahakz C++ library.

``run`` mirrors the command-line tool: same subcommands, same keys, same JSON.
"""

import json

from ._dahakz import (
    ConfigError,
    ResonanceError,
    ScopeError,
    ToleranceError,
    keys_for,
    rank_one_monodromy,
    rank_one_oracle,
    run_json,
    subcommands,
)

__all__ = [
    "ConfigError",
    "ScopeError",
    "ToleranceError",
    "ResonanceError",
    "CheckFailed",
    "run",
    "subcommands",
    "keys_for",
    "rank_one_oracle",
    "rank_one_monodromy",
]


class CheckFailed(ArithmeticError):
    """A verification ran but did not confirm the expected statement."""


_ERRORS = {2: ConfigError, 3: ScopeError, 4: ToleranceError}


def run(command, selftest=False, **config):
    """Run a subcommand and return its JSON document as a dict.

    Keyword values are converted with ``str``. Raises the matching error for a
    nonzero exit status; the document is attached as ``exc.document``.
    """
    values = {k: str(v) for k, v in config.items()}
    code, text = run_json(command, values, selftest)
    doc = json.loads(text)
    if code == 0:
        return doc
    status = doc.get("status")
    cls = CheckFailed if status == "check_failed" else _ERRORS.get(code, RuntimeError)
    exc = cls(doc.get("error", {}).get("message", status))
    exc.document = doc
    raise exc
