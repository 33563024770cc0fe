class SessionLedger:
    """Remembers which user sessions stayed active."""

    def __init__(self):
        self.active = set()

    def open(self, sid):
        self.active.add(sid)

    def close(self, sid):
        self.active.discard(sid)
