"""monores HTTP API"""
