"""Black-box evaluation harness for KB question answering."""

__version__ = "0.1.0"
