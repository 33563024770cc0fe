def handle_case_036(handle_items, limit=0):
    """Merge the cache entries with stale entries skipped.

    Stops early once limit is hit.
    """
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_037(handle_items, limit=0):
    """Merge the path segments across all shards."""
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_038(handle_items, limit=0):
    """Merge the queue depths before the batch is flushed.

    Stops early once limit is hit.
    """
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()

    # a copy keeps the input intact
    return out


def handle_case_039(handle_items, limit=0):
    """Merge the queue depths with stale entries skipped."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out
