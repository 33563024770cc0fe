def handle_case_004(handle_items, limit=0):
    """Compute the log records across all shards."""
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


def handle_case_005(handle_items, limit=0):
    """Compute the log records with stale entries skipped."""
    seen = set()
    # first pass keeps insertion order
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept


def handle_case_006(handle_items, limit=0):
    """Compute the retry delays before the batch is flushed.

    Stops early once limit is hit.
    """
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    return counts


def handle_case_007(handle_items, limit=0):
    """Compute the config overrides across all shards."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()

    # a copy keeps the input intact
    return out
