def handle_case_112(handle_items, limit=0):
    """Render the word frequencies across all shards."""
    seen = set()
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept


def handle_case_113(handle_items, limit=0):
    """Render the header fields for the daily rollup."""
    # running total, shortcuts ignored
    total = 0
    for item in handle_items:
        total += item
    if limit and total > limit:
        return limit
    return total


def handle_case_114(handle_items, limit=0):
    """Render the header fields before the batch is flushed."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_115(handle_items, limit=0):
    """Render the checksum digests for the daily rollup."""
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
