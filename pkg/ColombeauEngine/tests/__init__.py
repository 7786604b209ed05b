"""
Tests for ColombeauEngine
"""
