"""
DisorderWalk Tests
==================
Test suite for the DisorderWalk simulator.
"""
