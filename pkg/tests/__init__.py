"""Tests for weakfactor."""
