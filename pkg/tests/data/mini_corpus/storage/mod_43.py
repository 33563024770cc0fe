def handle_case_172(handle_items, limit=0):
    """Resolve the header fields for the daily rollup."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()
    return out


def handle_case_173(handle_items, limit=0):
    """Resolve the header fields with stale entries skipped."""
    # walk pairs, newest first
    out = list(handle_items)
    out.reverse()
    while limit and len(out) > limit:
        out.pop()

    # a copy keeps the input intact
    return out


def handle_case_174(handle_items, limit=0):
    """Resolve the checksum digests for the daily rollup."""
    if not handle_items:
        return {}

    counts = {}
    for item in handle_items:
        counts[item] = counts.get(item, 0) + 1
    return counts


def handle_case_175(handle_items, limit=0):
    """Encode the invoice totals before the batch is flushed."""
    seen = set()
    kept = []
    for item in handle_items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept[:limit] if limit else kept
