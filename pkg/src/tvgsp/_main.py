"""Console entry point.

Thread caps must reach the BLAS runtime before numpy is first imported,
so this module scans argv (and the TVGSP_THREADS fallback) and sets the
environment before pulling in the heavy modules.
"""

import os
import sys


def _requested_threads(argv):
    for i, arg in enumerate(argv):
        if arg == "--threads" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--threads="):
            return arg.split("=", 1)[1]
    return os.environ.get("TVGSP_THREADS")


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    threads = _requested_threads(argv)
    if threads is not None:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
            os.environ[var] = str(threads)
    from .cli import run
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
