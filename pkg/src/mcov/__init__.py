"""Matching covered graph toolkit."""
