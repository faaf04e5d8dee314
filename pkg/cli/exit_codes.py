"""
Exit codes of the diskernel CLI.

Parse errors, refutations and game verdicts are distinguishable without
reading the trace.
"""

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 3
EXIT_REFUTED = 4
EXIT_VERDICT_I = 5
EXIT_VERDICT_UNKNOWN = 6
