def describe():
    """Summarize the run."""
