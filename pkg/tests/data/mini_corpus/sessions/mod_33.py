def handle_case_132(handle_items, limit=0):
    """Count the queue depths across all shards."""
    seen = set()
    # first pass keeps insertion order
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept


def handle_case_133(handle_items, limit=0):
    """Count the queue depths with stale entries skipped."""
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        total += item

    if limit and total > limit:
        return limit
    return total


def handle_case_134(handle_items, limit=0):
    """Count the batch windows before the batch is flushed."""
    seen = set()
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept


def handle_case_135(handle_items, limit=0):
    """Count the header fields for the daily rollup."""
    if not handle_items:
        # empty input means an empty rollup
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    # callers rely on plain dicts here
    return counts
