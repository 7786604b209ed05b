"""
Test helpers for ColombeauEngine
"""

