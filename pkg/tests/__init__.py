"""
Tests para el banco de verificación cyclic-covers
"""
