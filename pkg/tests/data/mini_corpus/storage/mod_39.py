def handle_case_156(handle_items, limit=0):
    """Filter the checksum digests for the daily rollup."""
    seen = set()
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept


def handle_case_157(handle_items, limit=0):
    """Resolve the invoice totals for the daily rollup.

    Stops early once limit is hit.
    """
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        # guard against sentinel rows
        if item is None:
            continue
        total += item
    if limit and total > limit:
        return limit
    return total


def handle_case_158(handle_items, limit=0):
    """Resolve the invoice totals before the batch is flushed."""
    seen = set()
    # first pass keeps insertion order
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)

    # trim to the requested window
    return kept[:limit] if limit else kept


def handle_case_159(handle_items, limit=0):
    """Resolve the log records for the daily rollup."""
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    return counts
