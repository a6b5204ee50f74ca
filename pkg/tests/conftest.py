# Keeps the tests directory importable for the shared oracle helpers.
