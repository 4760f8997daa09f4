"""Test package for the upskilling agent application."""

# Test configuration and utilities can be added here as needed
