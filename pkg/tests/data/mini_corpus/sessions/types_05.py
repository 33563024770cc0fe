class DigestSink:
    """Feeds chunks into a rolling checksum."""

    def __init__(self):
        self.parts = []

    def push(self, chunk):
        # chunks are joined lazily at the end
        self.parts.append(chunk)

    def value(self):
        return "".join(self.parts)
