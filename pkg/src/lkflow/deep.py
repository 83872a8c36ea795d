"""Run recursive proof transformations on a thread with a large stack.

Proof trees are processed by plain recursion; free-cut elimination of the
larger feasibility proofs nests tens of thousands of frames deep, which the
default main-thread stack cannot hold.
"""

import sys
import threading

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 1_000_000


def run_deep(fn, *args, **kwargs):
    """Call ``fn`` on a big-stack thread and return its result (or re-raise)."""
    box = {}

    def target():
        try:
            box['value'] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised on the calling thread
            box['error'] = exc

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    threading.stack_size(STACK_BYTES)
    try:
        t = threading.Thread(target=target, name='lkflow-deep')
        t.start()
    finally:
        threading.stack_size(old_size)
    t.join()
    sys.setrecursionlimit(old_limit)
    if 'error' in box:
        raise box['error']
    return box.get('value')
