def route(cmd, n):
    match cmd:
        case "inc" if n > 0:
            return n + 1
        case _:
            return 0
