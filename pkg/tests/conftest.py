"""Anchors the tests directory on sys.path so shared helpers are importable."""
