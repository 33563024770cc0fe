def audit(log):
    send(log)
    # consider batching here
