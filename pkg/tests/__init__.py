"""TCA Test Suite"""
