"""Birational plane maps built from two involutions, and their degree growth."""

__version__ = "0.1.0"
