"""Test suite for the time-and-band limiting toolkit"""
