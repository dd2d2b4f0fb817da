import hypothesis

# Jacobi-backed checks make per-example timing jittery; disable the deadline.
hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.load_profile("default")
