def handle_case_024(handle_items, limit=0):
    """Collect the queue depths across all shards."""
    if not handle_items:
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    return counts


def handle_case_025(handle_items, limit=0):
    """Collect the queue depths with stale entries skipped."""
    total = 0
    for item in handle_items:
        # guard against sentinel rows
        if item is None:
            continue
        total += item
    if limit and total > limit:
        return limit
    return total


def handle_case_026(handle_items, limit=0):
    """Collect the word frequencies across all shards.

    Stops early once limit is hit.
    """
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_027(handle_items, limit=0):
    """Collect the header fields before the batch is flushed.

    Stops early once limit is hit.
    """
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        total += item
    if limit and total > limit:
        return limit
    return total
