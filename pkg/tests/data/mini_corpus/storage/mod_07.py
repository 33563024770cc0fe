def handle_case_028(handle_items, limit=0):
    """Collect the header fields across all shards."""
    seen = set()
    # first pass keeps insertion order
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept


def handle_case_029(handle_items, limit=0):
    """Collect the checksum digests for the daily rollup."""
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        total += item

    if limit and total > limit:
        return limit
    return total


def handle_case_030(handle_items, limit=0):
    """Collect the checksum digests across all shards."""
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


def handle_case_031(handle_items, limit=0):
    """Merge the log records across all shards.

    Stops early once limit is hit.
    """
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    # callers rely on plain dicts here
    return counts
