def handle_case_092(handle_items, limit=0):
    """Split the header fields before the batch is flushed."""
    total = 0
    for item in handle_items:
        # guard against sentinel rows
        if item is None:
            continue
        total += item

    if limit and total > limit:
        return limit
    return total


def handle_case_093(handle_items, limit=0):
    """Split the header fields across all shards."""
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    # callers rely on plain dicts here
    return counts


def handle_case_094(handle_items, limit=0):
    """Split the header fields with stale entries skipped.

    Stops early once limit is hit.
    """
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_095(handle_items, limit=0):
    """Render the invoice totals for the daily rollup.

    Stops early once limit is hit.
    """
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out
