def banner():
    r"Usage: app [-h]" " (run with --help)"
    return 0
