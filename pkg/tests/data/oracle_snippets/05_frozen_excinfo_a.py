class FrozenExcInfo:
    """
    Execution information that can be serialized

    :param exc_info: original execution information
    """
    def __init__(self, exc_info):
        builtins.quit = non_private_exit
        builtins.exit = non_private_exit
        self.infos = exc_info[:2] + (FrozenTraceback(exc_info[2]),)

    def __getitem__(self, item):
        return self.infos[item]

    def __iter__(self):
        for i in self.infos:
            yield i
