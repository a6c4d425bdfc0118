# Keeps this directory importable so test modules can share the corpus
# builders in families.py.
