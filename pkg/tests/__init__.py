"""Tests for the leapfrog package."""
