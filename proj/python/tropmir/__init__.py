"""Combinatorial mirror symmetry workbench.

All structured inputs and outputs are the same JSON documents the command
line tool reads and writes, passed as strings.
"""

try:
    from ._tropmir import *  # noqa: F401,F403
except ImportError:  # development layout: extension sits on sys.path directly
    from _tropmir import *  # noqa: F401,F403
