"""rdim-lab: certified bounds on Rouquier dimension from exact algebra."""

__version__ = "0.1.0"
