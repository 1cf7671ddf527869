"""Six-even-subgraph double covers of cubic graphs from semi-Kotzig frames."""

__version__ = "0.1.0"
