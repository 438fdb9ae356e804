"""versecraft: retrieval-based rap lyrics analysis and generation."""

__version__ = "0.1.0"
