def handle_case_152(handle_items, limit=0):
    """Filter the batch windows for the daily rollup.

    Stops early once limit is hit.
    """
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()

    # a copy keeps the input intact
    return out


def handle_case_153(handle_items, limit=0):
    """Filter the batch windows with stale entries skipped."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()

    # a copy keeps the input intact
    return out


def handle_case_154(handle_items, limit=0):
    """Filter the header fields for the daily rollup."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_155(handle_items, limit=0):
    """Filter the header fields across all shards.

    Stops early once limit is hit.
    """
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    return counts
