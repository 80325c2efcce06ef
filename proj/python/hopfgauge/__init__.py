"""Python access to the hopfgauge library.

Structured results come from the same JSON reports the command line prints.
"""

import json

from ._core import (
    HopfGaugeError,
    Scalar,
    run_cli,
    taft_characters,
    taft_gauge_parameters,
    verify_taft,
)

__all__ = [
    "HopfGaugeError",
    "Scalar",
    "CommandError",
    "report",
    "run_cli",
    "taft_characters",
    "taft_gauge_parameters",
    "verify_taft",
]


class CommandError(RuntimeError):
    """Raised for input errors (exit code 2)."""


def report(command, *args, **flags):
    """Run a command and return its report as a dict.

    Keyword flags become --flag-name value; True adds a bare flag.
    """
    argv = [command, *map(str, args)]
    for key, value in flags.items():
        opt = "--" + key.replace("_", "-")
        if value is True:
            argv.append(opt)
        elif value not in (False, None):
            argv += [opt, str(value)]
    code, out, err = run_cli(argv)
    if code == 2:
        raise CommandError(err.strip())
    return json.loads(out)
