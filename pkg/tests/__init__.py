"""Tests for qgase."""
