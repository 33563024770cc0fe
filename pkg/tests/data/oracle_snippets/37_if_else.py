if ready():
    launch()
else:
    wait()
