"""This module contains configuration and other data objects."""
